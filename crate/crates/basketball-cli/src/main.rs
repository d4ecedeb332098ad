//! `basketball`: trace, classify and count the basketballs of complex polynomials.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse error, 3 numeric failure,
//! 4 capacity exceeded.

mod polyspec;

use std::path::PathBuf;
use std::process::ExitCode;

use basketball::enumeration::{
    basketball_census, forest_census, forest_orbit_census, gf_even_noncrossing, gf_forest, gf_tree, orbit_census,
    qn_enumerator, OrbitGroup,
};
use basketball::forest::{forest_valid, Matching};
use basketball::poly::ExactPoly;
use basketball::scalar::RationalComplex;
use basketball::stratifier::{classify3, critical_grid, singularity_verdict, CellDescriptor3};
use basketball::tracer::{basketball_of, basketball_of_exact, render_svg, Curve, TraceConfig, TraceResult};
use basketball::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyspec::{parse_poly, parse_reals, ParseError};

#[derive(Parser)]
#[command(name = "basketball", version, about = "Basketballs of complex polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace `Re f = 0` and `Im f = 0` and report the basketball.
    Analyze {
        /// Degree-descending coefficients, e.g. "1,0,-3-3i,0".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Decide axis crossings exactly and append singularity verdicts.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Count valid forests or admissible basketballs on `4n` (resp. `2n`) leaves.
    Census {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, conflicts_with = "basketballs", required_unless_present = "basketballs")]
        forests: bool,
        #[arg(long)]
        basketballs: bool,
        /// Count orbits: dihedral for forests, even rotations for basketballs.
        #[arg(long)]
        orbits: bool,
        #[arg(long, value_enum)]
        by: Option<Grading>,
    },
    /// Rows of the generating functions.
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        order: usize,
    },
    /// Cell of `z³ − 3(a+bi)z + 2(c+di)` from rational `a,b,c,d`.
    Classify3 {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Cells of the translates `f − α`.
    Grid {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 1e-9)]
        cluster_tol: f64,
    },
    /// Cell enumerator of `zⁿ − n(a+bi)z + (n−1)(c+di)`.
    Qn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct Tolerances {
    #[arg(long)]
    radius_safety: Option<f64>,
    #[arg(long)]
    step_max: Option<f64>,
    #[arg(long)]
    corrector_tol: Option<f64>,
    #[arg(long)]
    snap_factor: Option<f64>,
    #[arg(long)]
    on_curve_tol: Option<f64>,
    #[arg(long)]
    max_steps: Option<usize>,
}

impl Tolerances {
    fn config(&self) -> TraceConfig {
        let mut c = TraceConfig::default();
        if let Some(v) = self.radius_safety {
            c.radius_safety = v;
        }
        if let Some(v) = self.step_max {
            c.step_max = v;
        }
        if let Some(v) = self.corrector_tol {
            c.corrector_tol = v;
        }
        if let Some(v) = self.snap_factor {
            c.vertex_snap_radius_factor = v;
        }
        if let Some(v) = self.on_curve_tol {
            c.on_curve_tol = v;
        }
        if let Some(v) = self.max_steps {
            c.max_steps = v;
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Grading {
    /// Internal vertex count (forests only).
    T,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Trees,
    Partitions,
    Forests,
}

enum Failure {
    Parse(String),
    Lib(Error),
    Io(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Lib(Error::Capacity { .. }) => 4,
            Failure::Lib(Error::Domain(_)) => 2,
            Failure::Lib(_) => 3,
        }
    }
}

type Out = Result<Vec<String>, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Parse(m) | Failure::Io(m) => eprintln!("error: {m}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Analyze { poly, svg, json, exact, tol } => analyze(&poly, svg, json, exact, &tol.config()),
        Command::Census { n, forests, basketballs: _, orbits, by } => census(&n, forests, orbits, by),
        Command::Series { which, order } => series(which, order),
        Command::Classify3 { coeffs } => {
            let v = parse_reals(&coeffs, 4)?;
            let d = classify3(&[v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
            Ok(vec![descriptor_json(&d).to_string()])
        }
        Command::Grid { poly, cluster_tol } => {
            let f = parse_poly(&poly)?;
            let g = critical_grid(&f.to_complex(), cluster_tol)?;
            Ok(vec![format!("ℓ={} m={}; {}", g.l, g.m, g.enumerator)])
        }
        Command::Qn { n } => {
            let e = qn_enumerator(n)?;
            Ok(vec![format!("{e} total {}", e.total())])
        }
    }
}

/// Rounded to 12 decimals, without negative zero.
fn clean(x: f64) -> f64 {
    (x * 1e12).round() / 1e12 + 0.0
}

fn matching_json(m: &Matching) -> Value {
    Value::Array(m.branches().iter().map(|b| json!([b.a, b.b])).collect())
}

fn descriptor_json(d: &CellDescriptor3) -> Value {
    json!({
        "case": d.case.label(),
        "degree": d.degree,
        "orbitElement": { "rotation": d.orbit_element.rotation, "flip": d.orbit_element.flip },
    })
}

/// `f(z − a₂/3)` written as `z³ − 3(a+bi)z + 2(c+di)`.
fn cubic_params(f: &ExactPoly) -> [num_rational::BigRational; 4] {
    let r = |k: i64| RationalComplex::from_ints(k, 0);
    let (a2, a1, a0) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let p = a1.clone() - a2.clone() * a2.clone() / r(3);
    let q = a0 - a1 * a2.clone() / r(3) + r(2) * a2.pow(3) / r(27);
    let ab = -p / r(3);
    let cd = q / r(2);
    [ab.re, ab.im, cd.re, cd.im]
}

fn analyze(text: &str, svg: Option<PathBuf>, as_json: bool, exact: bool, cfg: &TraceConfig) -> Out {
    let f = parse_poly(text)?;
    let tr: TraceResult = if exact { basketball_of_exact(&f, cfg)? } else { basketball_of(&f.to_complex(), cfg)? };
    if let Some(path) = &svg {
        render_svg(&tr, path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let mut vertices = tr.vertices.clone();
    vertices.sort_by(|x, y| {
        (x.position.re, x.position.im).partial_cmp(&(y.position.re, y.position.im)).expect("finite positions")
    });
    let cell = (f.deg() == 3).then(|| classify3(&cubic_params(&f)));
    let verdicts = if exact {
        [Curve::R, Curve::I].into_iter().map(|c| singularity_verdict(&f, c)).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let name = |c: Curve| if c == Curve::R { "R" } else { "I" };

    if as_json {
        let mut doc = json!({
            "n": tr.n(),
            "R": matching_json(&tr.r_matching),
            "I": matching_json(&tr.i_matching),
            "vertices": vertices.iter().map(|v| json!({
                "pos": [clean(v.position.re), clean(v.position.im)],
                "mR": v.m_r,
                "mI": v.m_i,
                "is_root": v.is_root,
            })).collect::<Vec<_>>(),
            "degree": tr.degree(),
        });
        if let Some(d) = &cell {
            doc["cell"] = descriptor_json(d);
        }
        if exact {
            doc["verdicts"] = verdicts
                .iter()
                .map(|v| {
                    json!({
                        "component": name(v.component),
                        "resultant_zero": v.resultant_zero(),
                        "real_witness": v.has_real_witness,
                    })
                })
                .collect();
        }
        return Ok(vec![doc.to_string()]);
    }

    let mut out = vec![format!("R: {}", tr.r_matching), format!("I: {}", tr.i_matching)];
    for v in &vertices {
        out.push(format!(
            "vertex {:.6}{:+.6}i mR={} mI={}{}",
            clean(v.position.re),
            clean(v.position.im),
            v.m_r,
            v.m_i,
            if v.is_root { " root" } else { "" }
        ));
    }
    out.push(format!("degree: {}", tr.degree()));
    if let Some(d) = &cell {
        out.push(format!("case: {}", d.case.label()));
    }
    for v in &verdicts {
        out.push(format!(
            "verdict {}: resultant_zero={} real_witness={}",
            name(v.component),
            v.resultant_zero(),
            v.has_real_witness
        ));
    }
    Ok(out)
}

fn histogram(values: impl IntoIterator<Item = usize>) -> String {
    let mut counts: Vec<u64> = Vec::new();
    for v in values {
        if counts.len() <= v {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
    }
    let body: Vec<String> = counts.iter().map(ToString::to_string).collect();
    format!("[{}]", body.join(","))
}

fn census(ns: &[usize], forests: bool, orbits: bool, by: Option<Grading>) -> Out {
    let mut out = Vec::new();
    for &n in ns {
        let row = match (forests, orbits, by.unwrap_or(if forests { Grading::T } else { Grading::Degree })) {
            (true, false, Grading::T) => {
                let body: Vec<String> = forest_census(n)?.by_vertex_count.iter().map(ToString::to_string).collect();
                format!("[{}]", body.join(","))
            }
            (true, false, Grading::Degree) => forest_census(n)?.by_degree.to_string(),
            (true, true, Grading::T) => {
                let oc = forest_orbit_census(n)?;
                let counts = oc.orbits.iter().map(|o| {
                    forest_valid(&o.representative).map(|f| f.vertices().len()).expect("census forests are valid")
                });
                histogram(counts)
            }
            (true, true, Grading::Degree) => forest_orbit_census(n)?.enumerator.to_string(),
            (false, false, Grading::Degree) => basketball_census(n)?.enumerator.to_string(),
            (false, true, Grading::Degree) => orbit_census(n, OrbitGroup::ColorPreserving)?.enumerator.to_string(),
            (false, _, Grading::T) => return Err(Failure::Parse("basketballs are graded by degree only".into())),
        };
        out.push(format!("n={n}: {row}"));
    }
    Ok(out)
}

fn series(which: Which, order: usize) -> Out {
    let rows = match which {
        Which::Trees => {
            let s = gf_tree(order)?;
            (1..=order).filter(|&k| !s.coeff(k).is_empty()).map(|k| s.row(k)).collect()
        }
        Which::Forests => {
            let s = gf_forest(order)?;
            (1..=order).filter(|&k| !s.coeff(k).is_empty()).map(|k| s.row(k)).collect()
        }
        Which::Partitions => {
            let s = gf_even_noncrossing(order)?;
            (2..=order).step_by(2).map(|k| format!("x^{k}: {}", s.format_coeff(k))).collect()
        }
    };
    Ok(rows)
}
