//! Flat `key = value` run configuration with `[problem]` and `[run]` sections.
//!
//! ```text
//! [problem]
//! k       = constant 0.5            | piecewise breakpoints=0.3,0.6 values=0,1,0.5 | tabulated 0,0.5,1
//! g       = linear                  | cubic 0.1
//! alpha   = constant                | constant 0.5 | on_off T1=1 T2=2 | tabulated times=0,3 values=1,0
//! rho0    = zero                    | constant 0.2 | step 0.5 1 -1 | sine 0.3 2
//! J0      = zero                    (same forms as rho0)
//! initial = bv pieces=16 m=-1 M=1   (replaces rho0/J0; drawn with [run] seed)
//! beta    = 0
//!
//! [run]
//! N = 256   t_end = 10   emit_every = N   seed = 0   output_dir = out
//! ```
//!
//! `step x0 a b` is `a` on `[0, x0)` and `b` after; `sine a f` is `a sin(2π f x)`.
//! `k` is required; everything else has the defaults shown first.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::datagen::generate_bv_data;
use crate::error::{ConfigIssue, Error, Result};
use crate::problem::{homogenize_boundary, AlphaSchedule, InitialData, KProfile, ProblemSpec};
use crate::riemann::DampingFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampingSpec {
    Linear,
    Cubic(f64),
}

impl DampingSpec {
    pub fn build(&self) -> DampingFunction {
        match self {
            DampingSpec::Linear => DampingFunction::linear(),
            DampingSpec::Cubic(c) => DampingFunction::cubic(*c),
        }
    }
}

/// A scalar initial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Zero,
    Constant(f64),
    Step { x0: f64, left: f64, right: f64 },
    Sine { amplitude: f64, frequency: f64 },
}

impl FieldSpec {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            FieldSpec::Zero => 0.0,
            FieldSpec::Constant(c) => c,
            FieldSpec::Step { x0, left, right } => {
                if x < x0 {
                    left
                } else {
                    right
                }
            }
            FieldSpec::Sine {
                amplitude,
                frequency,
            } => amplitude * (2.0 * PI * frequency * x).sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvSpec {
    pub pieces: usize,
    pub m: f64,
    pub big_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub k: KProfile,
    pub g: DampingSpec,
    pub alpha: AlphaSchedule,
    pub rho0: FieldSpec,
    pub j0: FieldSpec,
    pub bv: Option<BvSpec>,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub n: usize,
    pub t_end: f64,
    pub emit_every: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
}

pub const DEFAULT_N: usize = 256;
pub const DEFAULT_T_END: f64 = 10.0;

impl RunConfig {
    /// The problem to simulate, with a nonzero boundary flux already removed.
    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let p = &self.problem;
        let initial = match p.bv {
            Some(bv) => generate_bv_data(self.seed, bv.pieces, bv.m, bv.big_m).to_initial(),
            None if p.rho0 == FieldSpec::Zero && p.j0 == FieldSpec::Zero => InitialData::zero(),
            None => {
                let (rho, j) = (p.rho0, p.j0);
                InitialData::rho_j(move |x| rho.eval(x), move |x| j.eval(x))
            }
        };
        let spec = ProblemSpec::new(p.k.clone(), p.g.build(), p.alpha.clone(), initial)
            .with_beta(p.beta);
        homogenize_boundary(&spec)
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

fn fmt_field(f: &FieldSpec) -> String {
    match f {
        FieldSpec::Zero => "zero".into(),
        FieldSpec::Constant(c) => format!("constant {c:?}"),
        FieldSpec::Step { x0, left, right } => format!("step {x0:?} {left:?} {right:?}"),
        FieldSpec::Sine {
            amplitude,
            frequency,
        } => format!("sine {amplitude:?} {frequency:?}"),
    }
}

/// Writes a configuration that [`parse_config`] reads back unchanged.
pub fn serialize_config(c: &RunConfig) -> String {
    let p = &c.problem;
    let mut s = String::from("[problem]\n");
    let k = match &p.k {
        KProfile::Constant(d) => format!("constant {d:?}"),
        KProfile::PiecewiseConstant {
            breakpoints,
            values,
        } => format!(
            "piecewise breakpoints={} values={}",
            fmt_list(breakpoints),
            fmt_list(values)
        ),
        KProfile::Tabulated(v) => format!("tabulated {}", fmt_list(v)),
    };
    let _ = writeln!(s, "k = {k}");
    let g = match p.g {
        DampingSpec::Linear => "linear".to_string(),
        DampingSpec::Cubic(c) => format!("cubic {c:?}"),
    };
    let _ = writeln!(s, "g = {g}");
    let alpha = match &p.alpha {
        AlphaSchedule::Constant(a) => format!("constant {a:?}"),
        AlphaSchedule::OnOff { t1, t2 } => format!("on_off T1={t1:?} T2={t2:?}"),
        AlphaSchedule::Tabulated { times, values } => format!(
            "tabulated times={} values={}",
            fmt_list(times),
            fmt_list(values)
        ),
    };
    let _ = writeln!(s, "alpha = {alpha}");
    match p.bv {
        Some(bv) => {
            let _ = writeln!(
                s,
                "initial = bv pieces={} m={:?} M={:?}",
                bv.pieces, bv.m, bv.big_m
            );
        }
        None => {
            let _ = writeln!(s, "rho0 = {}", fmt_field(&p.rho0));
            let _ = writeln!(s, "J0 = {}", fmt_field(&p.j0));
        }
    }
    let _ = writeln!(s, "beta = {:?}", p.beta);
    let _ = writeln!(s, "\n[run]");
    let _ = writeln!(s, "N = {}", c.n);
    let _ = writeln!(s, "t_end = {:?}", c.t_end);
    let _ = writeln!(s, "emit_every = {}", c.emit_every);
    let _ = writeln!(s, "seed = {}", c.seed);
    let _ = writeln!(s, "output_dir = {}", c.output_dir.display());
    s
}

/// A value split into positional words and `key=value` options.
struct Words<'a> {
    head: &'a str,
    positional: Vec<&'a str>,
    options: Vec<(&'a str, &'a str)>,
}

fn split_words(value: &str) -> Words<'_> {
    let mut it = value.split_whitespace();
    let head = it.next().unwrap_or("");
    let mut positional = Vec::new();
    let mut options = Vec::new();
    for w in it {
        match w.split_once('=') {
            Some((k, v)) => options.push((k, v)),
            None => positional.push(w),
        }
    }
    Words {
        head,
        positional,
        options,
    }
}

type Parsed<T> = std::result::Result<T, String>;

fn num(s: &str) -> Parsed<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("expected a number, got `{s}`"))
}

fn list(s: &str) -> Parsed<Vec<f64>> {
    s.split(',').map(|p| num(p.trim())).collect()
}

impl<'a> Words<'a> {
    fn option(&self, key: &str) -> Parsed<&'a str> {
        self.options
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("`{}` needs `{key}=`", self.head))
    }

    fn expect_args(&self, positional: usize, options: &[&str]) -> Parsed<()> {
        if self.positional.len() > positional {
            return Err(format!(
                "`{}` takes at most {positional} positional argument(s)",
                self.head
            ));
        }
        match self.options.iter().find(|(k, _)| !options.contains(k)) {
            Some((k, _)) => Err(format!("unknown option `{k}` for `{}`", self.head)),
            None => Ok(()),
        }
    }

    fn positional_num(&self, i: usize) -> Parsed<f64> {
        self.positional
            .get(i)
            .ok_or_else(|| format!("`{}` needs {} numeric argument(s)", self.head, i + 1))
            .and_then(|s| num(s))
    }
}

fn parse_k(v: &str) -> Parsed<KProfile> {
    let w = split_words(v);
    let k = match w.head {
        "constant" => {
            w.expect_args(1, &[])?;
            KProfile::Constant(w.positional_num(0)?)
        }
        "piecewise" => {
            w.expect_args(0, &["breakpoints", "values"])?;
            let breakpoints = match w.option("breakpoints") {
                Ok(s) if !s.is_empty() => list(s)?,
                _ => Vec::new(),
            };
            KProfile::PiecewiseConstant {
                breakpoints,
                values: list(w.option("values")?)?,
            }
        }
        "tabulated" => {
            w.expect_args(1, &[])?;
            KProfile::Tabulated(list(w.positional.first().copied().unwrap_or(""))?)
        }
        other => return Err(format!("unknown k profile `{other}`")),
    };
    let values: Vec<f64> = match &k {
        KProfile::Constant(d) => vec![*d],
        KProfile::PiecewiseConstant { values, .. } => values.clone(),
        KProfile::Tabulated(v) => v.clone(),
    };
    if values.iter().any(|v| *v < 0.0) {
        return Err("k must be nonnegative".into());
    }
    k.validate().map_err(|e| e.to_string())?;
    Ok(k)
}

fn parse_g(v: &str) -> Parsed<DampingSpec> {
    let w = split_words(v);
    match w.head {
        "linear" => {
            w.expect_args(0, &[])?;
            Ok(DampingSpec::Linear)
        }
        "cubic" => {
            w.expect_args(1, &[])?;
            let c = w.positional_num(0)?;
            if c < 0.0 {
                return Err("cubic coefficient must be nonnegative".into());
            }
            Ok(DampingSpec::Cubic(c))
        }
        other => Err(format!("unknown damping function `{other}`")),
    }
}

fn parse_alpha(v: &str) -> Parsed<AlphaSchedule> {
    let w = split_words(v);
    let a = match w.head {
        "constant" => {
            w.expect_args(1, &[])?;
            let a = if w.positional.is_empty() {
                1.0
            } else {
                w.positional_num(0)?
            };
            AlphaSchedule::Constant(a)
        }
        "on_off" => {
            w.expect_args(0, &["T1", "T2"])?;
            AlphaSchedule::OnOff {
                t1: num(w.option("T1")?)?,
                t2: num(w.option("T2")?)?,
            }
        }
        "tabulated" => {
            w.expect_args(0, &["times", "values"])?;
            AlphaSchedule::Tabulated {
                times: list(w.option("times")?)?,
                values: list(w.option("values")?)?,
            }
        }
        other => return Err(format!("unknown alpha schedule `{other}`")),
    };
    a.validate().map_err(|e| match e {
        Error::Configuration(m) => m,
        other => other.to_string(),
    })?;
    Ok(a)
}

fn parse_field(v: &str) -> Parsed<FieldSpec> {
    let w = split_words(v);
    match w.head {
        "zero" => {
            w.expect_args(0, &[])?;
            Ok(FieldSpec::Zero)
        }
        "constant" => {
            w.expect_args(1, &[])?;
            Ok(FieldSpec::Constant(w.positional_num(0)?))
        }
        "step" => {
            w.expect_args(3, &[])?;
            Ok(FieldSpec::Step {
                x0: w.positional_num(0)?,
                left: w.positional_num(1)?,
                right: w.positional_num(2)?,
            })
        }
        "sine" => {
            w.expect_args(2, &[])?;
            Ok(FieldSpec::Sine {
                amplitude: w.positional_num(0)?,
                frequency: w.positional_num(1)?,
            })
        }
        other => Err(format!("unknown initial profile `{other}`")),
    }
}

fn parse_bv(v: &str) -> Parsed<BvSpec> {
    let w = split_words(v);
    if w.head != "bv" {
        return Err(format!("unknown initial data `{}`", w.head));
    }
    w.expect_args(0, &["pieces", "m", "M"])?;
    let pieces = w
        .option("pieces")?
        .parse::<usize>()
        .map_err(|_| "pieces must be a positive integer".to_string())?;
    let bv = BvSpec {
        pieces,
        m: num(w.option("m")?)?,
        big_m: num(w.option("M")?)?,
    };
    if pieces == 0 {
        return Err("pieces must be a positive integer".into());
    }
    if bv.m.partial_cmp(&bv.big_m) != Some(std::cmp::Ordering::Less) {
        return Err("bv data needs m < M".into());
    }
    Ok(bv)
}

fn parse_uint(v: &str, what: &str) -> Parsed<u64> {
    v.parse::<u64>()
        .map_err(|_| format!("{what} must be a nonnegative integer, got `{v}`"))
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Problem,
    Run,
}

/// Parses a configuration, reporting every problem found with its line.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut issues = Vec::new();
    let mut section = Section::None;
    let mut seen: HashSet<&'static str> = HashSet::new();
    let mut k = None;
    let mut g = DampingSpec::Linear;
    let mut alpha = AlphaSchedule::Constant(1.0);
    let mut rho0 = FieldSpec::Zero;
    let mut j0 = FieldSpec::Zero;
    let mut bv = None;
    let mut bv_line = 0;
    let mut field_line = 0;
    let mut beta = 0.0;
    let mut n: Option<(usize, usize)> = None;
    let mut t_end = DEFAULT_T_END;
    let mut emit_every = None;
    let mut seed = 0;
    let mut output_dir = PathBuf::from("out");

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            section = match content {
                "[problem]" => Section::Problem,
                "[run]" => Section::Run,
                other => {
                    issues.push(ConfigIssue {
                        line,
                        message: format!("unknown section {other}"),
                    });
                    Section::None
                }
            };
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            issues.push(ConfigIssue {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        let canonical: Option<&'static str> = match (section, key) {
            (Section::Problem, "k") => Some("k"),
            (Section::Problem, "g") => Some("g"),
            (Section::Problem, "alpha") => Some("alpha"),
            (Section::Problem, "rho0") => Some("rho0"),
            (Section::Problem, "J0") => Some("J0"),
            (Section::Problem, "initial") => Some("initial"),
            (Section::Problem, "beta") => Some("beta"),
            (Section::Run, "N") => Some("N"),
            (Section::Run, "t_end") => Some("t_end"),
            (Section::Run, "emit_every") => Some("emit_every"),
            (Section::Run, "seed") => Some("seed"),
            (Section::Run, "output_dir") => Some("output_dir"),
            _ => None,
        };
        let Some(key) = canonical else {
            let message = if section == Section::None {
                format!("key `{key}` appears outside a section")
            } else {
                format!("unknown key `{key}`")
            };
            issues.push(ConfigIssue { line, message });
            continue;
        };
        if !seen.insert(key) {
            issues.push(ConfigIssue {
                line,
                message: format!("duplicate key `{key}`"),
            });
            continue;
        }
        let outcome: Parsed<()> = match key {
            "k" => parse_k(value).map(|v| k = Some(v)),
            "g" => parse_g(value).map(|v| g = v),
            "alpha" => parse_alpha(value).map(|v| alpha = v),
            "rho0" => parse_field(value).map(|v| {
                rho0 = v;
                field_line = line;
            }),
            "J0" => parse_field(value).map(|v| {
                j0 = v;
                field_line = line;
            }),
            "initial" => parse_bv(value).map(|v| {
                bv = Some(v);
                bv_line = line;
            }),
            "beta" => num(value).map(|v| beta = v),
            "N" => parse_uint(value, "N").and_then(|v| {
                let v = v as usize;
                n = Some((v, line));
                if v < 2 {
                    Err("N must be at least 2".into())
                } else if !v.is_multiple_of(2) {
                    Err("N must be even".into())
                } else {
                    Ok(())
                }
            }),
            "t_end" => num(value).and_then(|v| {
                t_end = v;
                if v >= 0.0 {
                    Ok(())
                } else {
                    Err("t_end must be nonnegative".into())
                }
            }),
            "emit_every" => parse_uint(value, "emit_every").and_then(|v| {
                emit_every = Some(v as usize);
                if v == 0 {
                    Err("emit_every must be positive".into())
                } else {
                    Ok(())
                }
            }),
            "seed" => parse_uint(value, "seed").map(|v| seed = v),
            "output_dir" => {
                if value.is_empty() {
                    Err("output_dir must not be empty".into())
                } else {
                    output_dir = PathBuf::from(value);
                    Ok(())
                }
            }
            _ => unreachable!("canonical keys are matched above"),
        };
        if let Err(message) = outcome {
            issues.push(ConfigIssue { line, message });
        }
    }

    if bv.is_some() && field_line != 0 {
        issues.push(ConfigIssue {
            line: field_line.max(bv_line),
            message: "`initial` cannot be combined with `rho0`/`J0`".into(),
        });
    }
    if !seen.contains("k") {
        issues.push(ConfigIssue {
            line: 0,
            message: "missing required key `k` in [problem]".into(),
        });
    }
    if !issues.is_empty() {
        return Err(Error::Config(issues));
    }
    let n = n.map_or(DEFAULT_N, |(v, _)| v);
    Ok(RunConfig {
        problem: ProblemConfig {
            k: k.expect("presence checked above"),
            g,
            alpha,
            rho0,
            j0,
            bv,
            beta,
        },
        n,
        t_end,
        emit_every: emit_every.unwrap_or(n),
        seed,
        output_dir,
    })
}
