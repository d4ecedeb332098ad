//! Acceptance criteria 1 to 11, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` cannot hold as stated; they are still
//! evaluated and reported, and the run fails if one of them starts passing.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use basketball::enumeration::{
    basketball_census, forest_census, forest_orbit_census, gf_even_noncrossing, gf_forest, gf_tree,
    nonsingular_count, nonsingular_formula, nonsingular_orbits, orbit_census, qn_embedding_census, qn_enumerator,
    qn_quoted_total, BivariateSeries, OrbitGroup,
};
use basketball::forest::Matching;
use basketball::poly::{critical_data, disc_in_t, Axis, ComplexPoly, ExactPoly, RootConfig};
use basketball::scalar::{rat, RationalComplex};
use basketball::stratifier::{
    classify3, classify3_consistency, critical_grid, cubic_from_params, cylindrical_identity_check,
    cylindrical_samples, delta3, delta3_prime, grid_formula, is_tree_component, qn_critical_values_check,
    shabat_check, singularity_verdict, stratified_params, Case3, Params3,
};
use basketball::tracer::{basketball_of, basketball_of_exact, real_rooted_check, union_self_check_exact, Curve, TraceConfig};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 3n² − 5n + 3 is not the number of cells of the Qₙ decomposition.
const KNOWN_FAILURES: &[u32] = &[10];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ints(row: &[BigInt]) -> Vec<i64> {
    row.iter().map(|x| x.to_i64().unwrap()).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(n: i64, d: i64) -> BigRational {
    rat(n, d)
}

fn ex(cs: &[(i64, i64)]) -> ExactPoly {
    ExactPoly::from_descending(cs.iter().map(|&(a, b)| RationalComplex::from_ints(a, b)).collect())
}

fn m(circle: u32, p: &[(u32, u32)]) -> Matching {
    Matching::new(circle, p).unwrap()
}

fn criterion_1() -> Outcome {
    let f = gf_forest(12).map_err(|e| e.to_string())?;
    for n in 1..=6 {
        let census = forest_census(n).map_err(|e| e.to_string())?;
        let series: Vec<u64> = ints(f.coeff(2 * n)).into_iter().map(|x| x as u64).collect();
        ensure(census.by_vertex_count == series, format!("n = {n}: census {:?}, series {series:?}", census.by_vertex_count))?;
    }
    ensure(ints(f.coeff(8)) == [14, 37, 36, 12], "x^8 row")?;
    ensure(ints(f.coeff(12)) == [132, 794, 1872, 2158, 1222, 273], "x^12 row")?;
    Ok("n = 1..6 agree; x^8 and x^12 rows exact".into())
}

fn criterion_2() -> Outcome {
    let f3 = forest_census(3).map_err(|e| e.to_string())?.by_degree.to_u64();
    ensure(f3 == [0, 1, 3, 6, 5], format!("F3 = {f3:?}"))?;
    let b2 = basketball_census(2).map_err(|e| e.to_string())?;
    ensure(b2.enumerator.to_u64() == [1, 4, 4], format!("B2 = {}", b2.enumerator))?;
    let b3 = basketball_census(3).map_err(|e| e.to_string())?;
    ensure(b3.enumerator.to_u64() == [1, 16, 42, 48, 22] && b3.total == 129, format!("B3 = {}", b3.enumerator))?;
    Ok("F3 = [0,1,3,6,5], B2 = [1,4,4], B3 = [1,16,42,48,22] (129)".into())
}

fn criterion_3() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let brute = nonsingular_count(n).map_err(|e| e.to_string())?;
        let formula = nonsingular_formula(n).to_u64().unwrap();
        ensure(brute == formula, format!("n = {n}: {brute} vs {formula}"))?;
        counts.push(brute);
    }
    ensure(counts == [1, 4, 22, 140, 969], format!("{counts:?}"))?;
    let mut sizes = nonsingular_orbits(3, OrbitGroup::Full).map_err(|e| e.to_string())?.sizes();
    sizes.dedup();
    ensure(sizes == [4, 6, 12], format!("orbit sizes {sizes:?}"))?;
    Ok(format!("counts {counts:?}; n = 3 orbit sizes {{4, 6, 12}}"))
}

fn criterion_4() -> Outcome {
    let b = orbit_census(3, OrbitGroup::ColorPreserving).map_err(|e| e.to_string())?.enumerator.to_u64();
    ensure(b == [1, 4, 8, 8, 6], format!("basketball orbits {b:?}"))?;
    let f = forest_orbit_census(3).map_err(|e| e.to_string())?.enumerator.to_u64();
    ensure(f == [0, 1, 1, 1, 2], format!("forest orbits {f:?}"))?;
    Ok("[1,4,8,8,6] and [0,1,1,1,2]".into())
}

fn criterion_5() -> Outcome {
    let a = gf_tree(13).map_err(|e| e.to_string())?;
    let rows: [(usize, &[i64]); 7] = [
        (1, &[1]),
        (3, &[0, 1]),
        (5, &[0, 1, 3]),
        (7, &[0, 1, 8, 12]),
        (9, &[0, 1, 15, 55, 55]),
        (11, &[0, 1, 24, 156, 364, 273]),
        (13, &[0, 1, 35, 350, 1400, 2380, 1428]),
    ];
    for (k, want) in rows {
        ensure(ints(a.coeff(k)) == want, format!("tree row x^{k}"))?;
    }
    let th = gf_even_noncrossing(10).map_err(|e| e.to_string())?;
    let theta = [
        (2, "p2"),
        (4, "2p2^2 + p4"),
        (6, "5p2^3 + 6p2p4 + p6"),
        (8, "14p2^4 + 28p2^2p4 + 8p2p6 + 4p4^2 + p8"),
        (10, "42p2^5 + 120p2^3p4 + 45p2^2p6 + 45p2p4^2 + 10p2p8 + 10p4p6 + p10"),
    ];
    for (k, want) in theta {
        ensure(th.format_coeff(k) == want, format!("partition row x^{k}: {}", th.format_coeff(k)))?;
    }
    // A = x + t·A³/(1 − A²) to order 60
    let n = 60;
    let a = gf_tree(n).map_err(|e| e.to_string())?;
    let a2 = a.mul(&a).map_err(|e| e.to_string())?;
    let cubic_over = a2.mul(&a).and_then(|x| x.mul(&a2.geometric()?)).map_err(|e| e.to_string())?;
    let rhs = BivariateSeries::x(n).add(&cubic_over.scale_t(1, 1)).map_err(|e| e.to_string())?;
    ensure(a == rhs, "functional equation")?;
    let f = gf_forest(12).map_err(|e| e.to_string())?;
    let catalan: Vec<i64> = (1..=6).map(|k| ints(f.coeff(2 * k))[0]).collect();
    ensure(catalan == [1, 2, 5, 14, 42, 132], format!("F(x,0) = {catalan:?}"))?;
    Ok("tree rows to x^13, partition rows to x^10, functional equation to order 60, Catalan to C6".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let a = q(rng.gen_range(-40..40), rng.gen_range(1..9));
        let b = q(rng.gen_range(-40..40), rng.gen_range(1..9));
        let f = ExactPoly::new(vec![
            RationalComplex::new(-a.clone(), -b.clone()),
            RationalComplex::from_ints(0, 0),
            RationalComplex::from_ints(1, 0),
        ]);
        let p = disc_in_t(&f, Axis::Imaginary).map_err(|e| e.to_string())?;
        let want = ExactPoly::new(vec![RationalComplex::new(b, -a), RationalComplex::from_ints(1, 0)]);
        ensure(p == want, format!("quadratic discriminant {p}"))?;
    }
    let mut points: Vec<Params3> =
        (0..1000).map(|_| [(); 4].map(|_| q(rng.gen_range(-12..=12), rng.gen_range(1..=4)))).collect();
    for case in [Case3::LowerB1, Case3::LowerC1, Case3::LowerC2, Case3::LowerC4, Case3::LowerA2] {
        for _ in 0..20 {
            points.push(stratified_params(case, &mut rng));
        }
    }
    let mut walls = 0;
    for p in &points {
        let f = cubic_from_params(p);
        let d3 = delta3(&p[0], &p[1], &p[2]);
        let v = singularity_verdict(&f, Curve::R).map_err(|e| e.to_string())?;
        ensure(v.resultant_value == -q(16, 1) * &d3, format!("R resultant at {p:?}"))?;
        ensure(v.has_real_witness <= d3.is_zero(), format!("witness off the wall at {p:?}"))?;
        ensure(v.has_real_witness == classify3(p).r_singular(), format!("R verdict at {p:?}"))?;
        let d3p = delta3_prime(&p[0], &p[1], &p[3]);
        let w = singularity_verdict(&f, Curve::I).map_err(|e| e.to_string())?;
        ensure(w.resultant_value == -q(16, 1) * &d3p, format!("I resultant at {p:?}"))?;
        ensure(w.has_real_witness == classify3(p).i_singular(), format!("I verdict at {p:?}"))?;
        walls += v.has_real_witness as usize;
    }
    ensure(cylindrical_identity_check(&cylindrical_samples(1000, 6)), "cylindrical identities")?;
    Ok(format!("100 quadratics; {} cubics ({walls} on the R wall) with resultant = -16 delta3; cylindrical forms", points.len()))
}

/// (z−1)³(z+1)² + 2⁷3³/5⁵
fn cusp_quintic() -> ExactPoly {
    ex(&[(1, 0), (-1, 0), (-2, 0), (2, 0), (1, 0), (-1, 0)])
        .add(&ExactPoly::constant(RationalComplex::real(q(128 * 27, 3125))))
}

fn criterion_7() -> Outcome {
    let cfg = TraceConfig::default();
    let tr = |f: ExactPoly| basketball_of_exact(&f, &cfg).map_err(|e| e.to_string());
    let t = tr(ex(&[(1, 0), (0, 0), (0, 0), (1, 0)]))?;
    ensure(t.r_matching == m(12, &[(1, 3), (5, 7), (9, 11)]), format!("z^3+1: R = {}", t.r_matching))?;
    let t = tr(ex(&[(1, 0), (0, 0), (-1, 0), (0, 0)]))?;
    ensure(t.r_matching == m(12, &[(1, 11), (3, 9), (5, 7)]), format!("z^3-z: R = {}", t.r_matching))?;
    let t = tr(ex(&[(1, 0), (0, 0), (0, 0), (0, 0)]))?;
    ensure(
        t.r_matching == m(12, &[(1, 7), (3, 9), (5, 11)]) && t.i_matching == m(12, &[(0, 6), (2, 8), (4, 10)]) && t.degree() == 0,
        "z^3",
    )?;
    let t = tr(cusp_quintic())?;
    ensure(t.n() == 5 && t.branches.len() == 10, "quintic")?;
    // on-curve residuals
    let f = cusp_quintic().to_complex();
    for b in &t.branches {
        for z in &b.polyline {
            let v = f.evaluate(z);
            let part = if b.start_leaf % 2 == 1 { v.re } else { v.im };
            ensure(part.abs() <= 1e-8 * f.magnitude_at(z.norm()).max(1.0), format!("residual {part} at {z}"))?;
        }
    }
    let quintic_degree = t.degree();
    let samples = [
        ex(&[(1, 0), (0, 0), (0, 0)]),
        ex(&[(1, 0), (0, 0), (0, 0), (1, 0)]),
        ex(&[(1, 0), (0, 0), (-3, -3), (0, 0)]),
        ex(&[(1, 0), (0, 0), (-1, 0), (0, 0)]),
        ex(&[(1, 0), (0, 0), (-3, 0), (2, 0)]),
        ex(&[(1, 0), (0, 0), (0, -6), (4, 4)]),
        ex(&[(1, 0), (1, 2), (-3, 1), (2, -1), (5, 0)]),
        ex(&[(1, 0), (0, 0), (0, 0), (0, 0), (0, 1)]),
        ex(&[(1, 0), (0, 0), (-5, 0), (0, 0), (4, 0)]),
        ex(&[(1, 0), (2, -1), (0, 3), (-1, 1)]),
    ];
    for f in &samples {
        ensure(union_self_check_exact(f, &cfg).map_err(|e| e.to_string())?, format!("union check for {f}"))?;
    }
    Ok(format!("golden cubics exact; quintic (z-1)^3(z+1)^2+c admissible with 5 + 5 branches (cell degree {quintic_degree}); union check on 10 polynomials"))
}

fn criterion_8() -> Outcome {
    let report = classify3_consistency(200, 50, 11, &TraceConfig::default());
    let summary = format!(
        "{}/{} agree ({} trace errors, {} disagreements)",
        report.agreed,
        report.checked,
        report.trace_errors.len(),
        report.disagreements.len()
    );
    ensure(report.all_agree() && report.checked == 200 + 50 * Case3::ALL.len(), summary.clone())?;
    Ok(summary)
}

fn chebyshev(n: usize) -> Vec<f64> {
    let (mut t0, mut t1) = (vec![1.0], vec![0.0, 1.0]);
    for _ in 1..n {
        let mut t2 = vec![0.0; t1.len() + 1];
        for (k, x) in t1.iter().enumerate() {
            t2[k + 1] += 2.0 * x;
        }
        for (k, x) in t0.iter().enumerate() {
            t2[k] -= x;
        }
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// Monic, with critical values `±2^{1−n}ε` and all critical points simple.
fn turned_chebyshev(n: usize, eps: Complex64) -> ComplexPoly {
    let alpha = Complex64::from_polar(1.0, -eps.arg() / n as f64);
    let scale = 2f64.powi(1 - n as i32);
    let t = ComplexPoly::new(chebyshev(n).into_iter().map(|x| c(x * scale, 0.0)).collect());
    t.dilate(&alpha).scale(&eps)
}

fn criterion_9() -> Outcome {
    let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(0., 6.), c(0., 0.)]);
    let mut vals = critical_data(&f, 1e-9, &RootConfig::default()).map_err(|e| e.to_string())?.critical_values;
    vals.sort_by(|x, y| x.re.total_cmp(&y.re));
    ensure(vals.len() == 2 && (vals[0] + c(4., 4.)).norm() <= 1e-12 && (vals[1] - c(4., 4.)).norm() <= 1e-12, format!("{vals:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..20 {
        let n = 3 + k % 4;
        let mut coeffs = vec![c(1.0, 0.0), c(0.0, 0.0)];
        for _ in 2..=n {
            coeffs.push(c(rng.gen_range(-2..=2) as f64, rng.gen_range(-2..=2) as f64));
        }
        let g = critical_grid(&ComplexPoly::from_descending(coeffs), 1e-9).map_err(|e| e.to_string())?;
        ensure(g.enumerator == grid_formula(g.l, g.m), format!("grid {k}"))?;
    }

    let k = 6f64.powf(0.2);
    let quintic = ComplexPoly::from_descending(vec![
        c(1.0, 0.0),
        c(-2.5 * k, 0.0),
        c(5.0 / 3.0 * k * k, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
    ]);
    ensure(shabat_check(&quintic, 1e-8).map_err(|e| e.to_string())?.0, "quintic rejected")?;
    for n in 2..=7 {
        let zn = ComplexPoly::monomial(c(1.0, 0.0), n);
        ensure(!shabat_check(&zn, 1e-9).map_err(|e| e.to_string())?.0, format!("z^{n} accepted"))?;
    }

    let cfg = TraceConfig::default();
    let mut checked = 0;
    for n in 2..=6 {
        let zn = ComplexPoly::monomial(c(1.0, 0.0), n);
        let cases = [
            zn.add(&ComplexPoly::constant(c(0.0, 0.75))),
            zn.add(&ComplexPoly::constant(c(-1.5, 0.0))),
            turned_chebyshev(n, c(0.0, 1.0)),
            turned_chebyshev(n, c(0.0, 1.0)).add(&ComplexPoly::constant(c(0.0, -0.3))),
            turned_chebyshev(n, c(1.0, 0.0)),
            turned_chebyshev(n, c(1.0, 0.0)).add(&ComplexPoly::constant(c(0.2, 0.0))),
            turned_chebyshev(n, c(1.0, 0.0)).add(&ComplexPoly::constant(c(0.0, 0.1))),
            turned_chebyshev(n, c(0.6, 0.8)),
            zn.sub(&ComplexPoly::monomial(c(0.5, 1.0), 1)),
            zn.add(&ComplexPoly::constant(c(1.0, 1.0))),
        ];
        for f in cases {
            let t = basketball_of(&f, &cfg).map_err(|e| format!("tracing {f}: {e}"))?;
            for (comp, forest) in [(Curve::R, t.basketball.r()), (Curve::I, t.basketball.i())] {
                let tree = is_tree_component(&f, comp, 1e-9).map_err(|e| e.to_string())?;
                ensure(tree == (forest.components().len() == 1), format!("{comp:?} of {f}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("z^3+6iz values exact; 20 grids; Shabat quintic; tree criterion on {checked} polynomials"))
}

fn criterion_10() -> Outcome {
    ensure(qn_enumerator(3).map_err(|e| e.to_string())?.to_u64() == [0, 1, 3, 6, 5], "Q3 enumerator differs from F3")?;
    for n in 2..=8 {
        ensure(qn_critical_values_check(n, 25, 40 + n as u64).map_err(|e| e.to_string())?, format!("critical values n = {n}"))?;
    }
    let mut cells = Vec::new();
    let mut embedded = Vec::new();
    for n in 2..=8 {
        cells.push(qn_enumerator(n).map_err(|e| e.to_string())?.total().to_u64().unwrap());
    }
    for n in 3..=5 {
        embedded.push(qn_embedding_census(n).map_err(|e| e.to_string())?.count() as u64);
    }
    let quoted: Vec<u64> = (2..=8).map(qn_quoted_total).collect();
    ensure(embedded[..] == cells[1..4], format!("embedding counts {embedded:?} vs enumerator totals {:?}", &cells[1..4]))?;
    ensure(
        cells == quoted,
        format!("n = 2..8: enumerator totals (and embedding counts for n = 3..5) {cells:?}, quoted 3n^2-5n+3 {quoted:?}; equal only at n = 3"),
    )?;
    Ok("totals match".into())
}

fn criterion_11() -> Outcome {
    let cfg = TraceConfig::default();
    let cx = |cs: &[f64]| ComplexPoly::from_descending(cs.iter().map(|&x| c(x, 0.0)).collect());
    for (name, f) in [
        ("z^2-1", cx(&[1.0, 0.0, -1.0])),
        ("z^3-z", cx(&[1.0, 0.0, -1.0, 0.0])),
        ("(z^2-1)(z^2-4)z", cx(&[1.0, 0.0, -5.0, 0.0, 4.0, 0.0])),
    ] {
        ensure(real_rooted_check(&f, &cfg).map_err(|e| e.to_string())?, name)?;
    }
    Ok("z^2-1, z^3-z, (z^2-1)(z^2-4)z".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "forest censuses vs generating function", criterion_1),
        (2, "degree-graded censuses", criterion_2),
        (3, "non-singular counts and orbit sizes", criterion_3),
        (4, "orbit enumerators", criterion_4),
        (5, "generating-function tables", criterion_5),
        (6, "discriminants", criterion_6),
        (7, "tracer golden matchings", criterion_7),
        (8, "tracer and stratifier consistency", criterion_8),
        (9, "critical-value facts", criterion_9),
        (10, "Qn enumerator and totals", criterion_10),
        (11, "real-rooted family", criterion_11),
    ];
    let mut bad = 0;
    for (k, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&k);
        match outcome {
            Ok(detail) => {
                println!("criterion {k:>2} PASS  {name}: {detail} [{secs:.1}s]");
                if known {
                    println!("             listed as a known failure but passed");
                    bad += 1;
                }
            }
            Err(detail) => {
                let tag = if known { " (known)" } else { "" };
                println!("criterion {k:>2} FAIL{tag}  {name}: {detail} [{secs:.1}s]");
                if !known {
                    bad += 1;
                }
            }
        }
    }
    if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
