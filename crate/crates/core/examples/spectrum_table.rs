//! Contraction constants as functions of `d` and `N`, and the threshold `d*`.
//!
//! Run with `cargo run --example spectrum_table`.

use dampwave::output::{spectrum_csv, spectrum_rows};
use dampwave::transition::{cal_c, d_star};

fn main() -> dampwave::Result<()> {
    let ds = d_star()?;
    println!("d* = {ds:.12}  (calC(d*) - 1 = {:.1e})", cal_c(ds) - 1.0);
    println!("{:>6} {:>10} {:>10}", "d", "calC(d)", "|ln calC|");
    for i in 0..=8 {
        let d = 0.1 * i as f64;
        let c = cal_c(d);
        println!("{d:>6.2} {c:>10.6} {:>10.6}", c.ln().abs());
    }
    println!();
    let rows = spectrum_rows(&[0.25, 0.5], &[64, 128, 256, 512, 1024])?;
    print!("{}", spectrum_csv(&rows));
    Ok(())
}
