//! CSV emission. Floats are written with 17 significant digits so that equal
//! doubles produce equal text.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::decay::DecayReport;
use crate::error::{Error, Result};
use crate::fields::{Diagnostics, FieldSnapshot};
use crate::transition::{contraction_constants, eta_sum, expansion_report, zeta_sum, DENSE_LIMIT};

fn e(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One row per cell: `t,x_left,x_right,rho,J,f_minus,f_plus,u_left_node`.
pub fn snapshot_csv(s: &FieldSnapshot) -> String {
    let n = s.cells();
    let mut out = String::from("t,x_left,x_right,rho,J,f_minus,f_plus,u_left_node\n");
    for j in 0..n {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            e(s.t),
            e(j as f64 / n as f64),
            e((j + 1) as f64 / n as f64),
            e(s.rho_cells[j]),
            e(s.j_cells[j]),
            e(s.f_minus_cells[j]),
            e(s.f_plus_cells[j]),
            e(s.u[j]),
        );
    }
    out
}

pub fn diagnostics_csv(rows: &[Diagnostics]) -> String {
    let mut out = String::from(
        "n,t,phase,mass,sup_fp,inf_fp,sup_fm,inf_fm,tv_J,sigma_dot_e,sigma_dot_vminus,linf_J,linf_rho\n",
    );
    for d in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            d.n,
            e(d.t),
            d.phase.as_str(),
            e(d.mass),
            e(d.sup_fp),
            e(d.inf_fp),
            e(d.sup_fm),
            e(d.inf_fm),
            e(d.tv_j),
            e(d.sigma_dot_e),
            e(d.sigma_dot_vminus),
            e(d.linf_j),
            e(d.linf_rho),
        );
    }
    out
}

/// One spectrum row; the expansion residual is only computed for `N <= DENSE_LIMIT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub n: usize,
    pub d: f64,
    pub c_n: f64,
    pub c_limit: f64,
    pub cal_c_n: f64,
    pub cal_c: f64,
    pub zeta_sum: f64,
    pub eta_sum: f64,
    pub bound_rhs: f64,
    pub expansion_residual: Option<f64>,
}

pub fn spectrum_rows(ds: &[f64], ns: &[usize]) -> Result<Vec<SpectrumRow>> {
    let mut rows = Vec::with_capacity(ds.len() * ns.len());
    for &d in ds {
        for &n in ns {
            if n < 2 || n % 2 != 0 {
                return Err(Error::Configuration(format!("N = {n} must be even and >= 2")));
            }
            let c = contraction_constants(n, d);
            let (zs, es) = (zeta_sum(n, d), eta_sum(n, d));
            let residual = if n <= DENSE_LIMIT {
                Some(expansion_report(n, d)?.lhs_minus_rhs_max_abs)
            } else {
                None
            };
            rows.push(SpectrumRow {
                n,
                d,
                c_n: c.c_n,
                c_limit: c.c_limit,
                cal_c_n: c.cal_c_n,
                cal_c: c.cal_c,
                zeta_sum: zs,
                eta_sum: es,
                bound_rhs: d.exp() - d - 1.0 + crate::transition::k_of_d(d) / n as f64,
                expansion_residual: residual,
            });
        }
    }
    Ok(rows)
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from(
        "N,d,C_N,C_limit,calC_N,calC,zeta_sum,eta_sum,bound_rhs,expansion_residual\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            e(r.d),
            e(r.c_n),
            e(r.c_limit),
            e(r.cal_c_n),
            e(r.cal_c),
            e(r.zeta_sum),
            e(r.eta_sum),
            e(r.bound_rhs),
            r.expansion_residual.map_or_else(|| "NA".to_string(), e),
        );
    }
    out
}

pub fn decay_csv(report: &DecayReport) -> String {
    let mut out = String::from("t,linf_J,envelope_J,linf_rho,envelope_rho,pass\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            e(r.t),
            e(r.linf_j),
            e(r.envelope_j),
            e(r.linf_rho),
            e(r.envelope_rho),
            r.pass,
        );
    }
    out
}

/// Contraction trace next to the decay table: `h,t,M_h,m_h,width,bound_raw,bound_corrected`.
pub fn contraction_csv(report: &DecayReport) -> String {
    let mut out = String::from("h,t,M_h,m_h,width,bound_raw,bound_corrected\n");
    for c in &report.trace.entries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.h,
            e(c.t),
            e(c.big_m_h),
            e(c.m_h),
            e(c.width),
            e(c.bound_raw),
            e(c.bound_corrected),
        );
    }
    out
}
