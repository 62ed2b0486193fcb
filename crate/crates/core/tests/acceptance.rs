//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgraph::bounds::{self, GraphFacts, Status, SuiteConfig};
use sgraph::catalog;
use sgraph::combinatorics::{frustration_index, is_strong_nodal_walk, strong_nodal_decomposition};
use sgraph::curvature::{a_n_spectrum, cd_check_psd, curvature_profile, graph_curvature, vertex_curvature};
use sgraph::linalg::Matrix;
use sgraph::operators::{gamma2, laplacian_matrix, p_rayleigh, Exponent, SignChoice};
use sgraph::spectral::{first_nonzero_eigenvalue, p_spectral_gap, spectrum, PSolverOptions};
use sgraph::{Dimension, SignPattern, SignedGraph, SwitchingFunction, Walk};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(what: &str, got: f64, want: f64, tol: f64) -> Check {
    ensure((got - want).abs() <= tol, || format!("{what}: got {got}, want {want} (tol {tol})"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const DIMS: [Dimension; 3] = [Some(2.0), Some(10.0), None];

fn criterion_1() -> Check {
    let g = catalog::signed_triangle();
    let first = first_nonzero_eigenvalue(&g).map_err(err)?;
    close("lambda", first.lambda, 0.5, 1e-9)?;
    ensure(first.multiplicity == 2, || format!("multiplicity {}", first.multiplicity))?;
    for x in 0..3 {
        close(&format!("K(inf) at {x}"), vertex_curvature(&g, x, None).map_err(err)?, 0.25, 1e-9)?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let g = SignedGraph::complete(3, SignPattern::AllPositive).map_err(err)?;
    close("lambda_2", first_nonzero_eigenvalue(&g).map_err(err)?.lambda, 1.5, 1e-9)?;
    close("K(inf)", graph_curvature(&g, None).map_err(err)?, 1.25, 1e-9)
}

fn criterion_3() -> Check {
    for n in [5usize, 7, 9] {
        for (pattern, want) in [
            (SignPattern::AllPositive, 1.0 - (2.0 * PI / n as f64).cos()),
            (SignPattern::OneNegative, 1.0 - (PI / n as f64).cos()),
        ] {
            let g = SignedGraph::cycle(n, pattern.clone()).map_err(err)?;
            let first = first_nonzero_eigenvalue(&g).map_err(err)?;
            close(&format!("C{n} {pattern:?} lambda"), first.lambda, want, 1e-9)?;
            ensure(first.multiplicity == 2, || format!("C{n} {pattern:?} multiplicity {}", first.multiplicity))?;
            for nd in DIMS {
                let k = graph_curvature(&g, nd).map_err(err)?;
                ensure(k >= -1e-9, || format!("C{n} {pattern:?} K({nd:?}) = {k}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let g = catalog::chorded_heptagon();
    let (h, t) = (0.5, 1.0 / 3.0);
    let expected = Matrix::from_rows(&[
        vec![1.0, -h, 0.0, 0.0, 0.0, 0.0, -h],
        vec![-t, 1.0, -t, 0.0, 0.0, 0.0, -t],
        vec![0.0, -h, 1.0, -h, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, -h, 1.0, h, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, h, 1.0, -h, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, -h, 1.0, -h],
        vec![-t, -t, 0.0, 0.0, 0.0, -t, 1.0],
    ]);
    ensure(laplacian_matrix(&g, SignChoice::Given).matrix == expected, || "Laplacian matrix differs".into())?;

    let spec = spectrum(&g, SignChoice::Given).map_err(err)?;
    close("smallest eigenvalue", spec.eigenvalues[0], 0.08, 0.005)?;
    let f = &spec.eigenfunctions[0];
    let v2 = g.index_of("2").map_err(err)?;
    let scaled: Vec<f64> = f.iter().map(|v| v / f[v2]).collect();
    let want = [1.087, 1.0, 0.672, 0.237, 0.237, 0.672, 1.0];
    for (label, w) in (1..=7).zip(want) {
        let x = g.index_of(&label.to_string()).map_err(err)?;
        close(&format!("ratio at {label}"), scaled[x], w, 0.005)?;
    }
    let negative = (g.index_of("4").map_err(err)?, g.index_of("5").map_err(err)?);
    for e in g.edges() {
        let walk = Walk::new(&g, vec![e.u, e.v]).map_err(err)?;
        let is_neg = (e.u, e.v) == negative || (e.v, e.u) == negative;
        ensure(is_strong_nodal_walk(&g, f, &walk) != is_neg, || {
            format!("edge {}-{} nodal status", g.label(e.u), g.label(e.v))
        })?;
    }
    close("min K(inf) underlying", graph_curvature(&g.with_all_positive(), None).map_err(err)?, -0.194, 0.001)
}

fn criterion_5() -> Check {
    for n in 1..=6usize {
        let start = Instant::now();
        let g = SignedGraph::hypercube_one_negative(n).map_err(err)?;
        let e = g.edges().iter().find(|e| e.sign.is_negative()).ok_or("no negative edge")?;
        let x = e.u;
        let nf = n as f64;
        let (k_want, spec_want) = if n == 1 {
            (2.0, vec![2.0])
        } else {
            let mut s = vec![(2.0 - nf) / nf];
            s.extend(std::iter::repeat_n(2.0 / nf, n - 1));
            ((2.0 - nf) / nf, s)
        };
        close(&format!("Q^{n} K"), vertex_curvature(&g, x, None).map_err(err)?, k_want, 1e-9)?;
        let spec = a_n_spectrum(&g, x, None).map_err(err)?;
        ensure(spec.len() == spec_want.len(), || format!("Q^{n} spectrum size {}", spec.len()))?;
        for (a, b) in spec.iter().zip(&spec_want) {
            close(&format!("Q^{n} A_inf eigenvalue"), *a, *b, 1e-9)?;
        }
        let pos = SignedGraph::hypercube(n).map_err(err)?;
        close(&format!("Q^{n} positive K"), graph_curvature(&pos, None).map_err(err)?, 2.0 / nf, 1e-9)?;
        if n == 6 {
            let t = start.elapsed();
            ensure(t < Duration::from_secs(30), || format!("Q^6 took {t:?}"))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for n in 2..=4 {
        let g = SignedGraph::hypercube_one_negative(n).map_err(err)?;
        let iota = frustration_index(&g, 24).map_err(err)?.iota;
        ensure(iota == 2, || format!("Q^{n} iota = {iota}"))?;
    }
    let corpus = catalog::corpus();
    ensure(corpus.len() >= 12, || "corpus too small".into())?;
    for (name, g) in &corpus {
        if g.is_balanced() {
            let iota = frustration_index(g, 24).map_err(err)?.iota;
            ensure(iota == 0, || format!("{name}: iota = {iota}"))?;
        }
        for x in 0..g.n() {
            for nd in DIMS {
                let a = vertex_curvature(g, x, nd).map_err(err)?;
                let b = cd_check_psd(g, x, nd).map_err(err)?;
                close(&format!("{name} vertex {x} N={nd:?} routes"), a, b, 1e-7)?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let config = SuiteConfig { p_grid: vec![1.5, 2.0, 3.0], epsilons: vec![0.5, 1.0, 2.0, 4.0], ..Default::default() };
    let mut checked = 0;
    for (name, g) in catalog::corpus() {
        let suite = bounds::run_suite(&g, &config).map_err(err)?;
        if let Some(f) = suite.failures().next() {
            return Err(format!("{name}: {} ({}) lhs {} rhs {}", f.theorem, f.detail, f.lhs, f.rhs));
        }
        checked += suite.reports.iter().filter(|r| r.status == Status::Pass).count();
    }
    ensure(checked > 0, || "no binding checks".into())?;

    let s = GraphFacts::compute(&catalog::signed_triangle(), None).map_err(err)?;
    let p = GraphFacts::compute(&SignedGraph::complete(3, SignPattern::AllPositive).map_err(err)?, None).map_err(err)?;
    close("signed K3 diameter rhs", bounds::diameter_lower_bound(&s).map_err(err)?[0].rhs, 1.0 / 6.0, 1e-12)?;
    close("K3 diameter rhs", bounds::diameter_lower_bound(&p).map_err(err)?[0].rhs, 1.0 / 14.0, 1e-12)?;

    let q2 = GraphFacts::compute(&SignedGraph::hypercube_one_negative(2).map_err(err)?, None).map_err(err)?;
    let vol = bounds::volume_bound(&q2, 2).map_err(err)?;
    ensure(vol.status == Status::Pass, || format!("Q^2 volume bound {:?}", vol.status))?;

    let scan = bounds::hypercube_exclusion_scan(12, None).map_err(err)?;
    let first = scan.iter().position(|e| e.excluded).ok_or("no exclusion")?;
    ensure(first + 2 == 7 && scan[first..].iter().all(|e| e.excluded), || format!("first excluded n = {}", first + 2))?;

    for n in [5, 7] {
        let c = SignedGraph::cycle(n, SignPattern::AllPositive).map_err(err)?;
        for r in bounds::two_sided_liyau(&c, None).map_err(err)? {
            ensure(r.status == Status::Pass, || format!("C{n} two-sided {}: {:?}", r.detail, r.status))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let opts = PSolverOptions { restarts: 50, ..Default::default() };
    for (name, g) in catalog::corpus() {
        let linear = first_nonzero_eigenvalue(&g).map_err(err)?.lambda;
        let r = p_spectral_gap(&g, Exponent::new(2.0).map_err(err)?, &opts).map_err(err)?;
        close(&format!("{name} lambda_2"), r.lambda_p, linear, 1e-6)?;
    }
    Ok(())
}

fn random_tau(rng: &mut ChaCha8Rng, n: usize) -> SwitchingFunction {
    SwitchingFunction::from_mask(n, rng.gen::<u64>() & ((1u64 << n) - 1))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    for (name, g) in catalog::corpus() {
        let n = g.n();
        let spec = spectrum(&g, SignChoice::Given).map_err(err)?;
        ensure(spec.max_residual() <= 1e-9, || format!("{name}: residual {}", spec.max_residual()))?;
        let curv = curvature_profile(&g, &DIMS).map_err(err)?;
        let iota = frustration_index(&g, 24).map_err(err)?.iota;
        let f = &spec.eigenfunctions[0];
        let nodal = strong_nodal_decomposition(&g, f).map_err(err)?.count();
        for _ in 0..100 {
            let tau = random_tau(&mut rng, n);
            let h = g.switch(&tau).map_err(err)?;
            let s = spectrum(&h, SignChoice::Given).map_err(err)?;
            for (a, b) in s.eigenvalues.iter().zip(&spec.eigenvalues) {
                close(&format!("{name} switched eigenvalue"), *a, *b, 1e-9)?;
            }
            let c = curvature_profile(&h, &DIMS).map_err(err)?;
            for (a, b) in c.per_vertex.iter().flatten().zip(curv.per_vertex.iter().flatten()) {
                close(&format!("{name} switched curvature"), a.k, b.k, 1e-9)?;
            }
            let i = frustration_index(&h, 24).map_err(err)?.iota;
            ensure(i == iota, || format!("{name}: switched iota {i} vs {iota}"))?;
            let m = strong_nodal_decomposition(&h, &tau.apply(f)).map_err(err)?.count();
            ensure(m == nodal, || format!("{name}: switched nodal count {m} vs {nodal}"))?;
        }

        // Γ₂ at x only sees the 2-ball of x
        for x in 0..n {
            let ball = g.ball(x, 2);
            let base: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut other = base.clone();
            for (y, v) in other.iter_mut().enumerate() {
                if !ball.contains(&y) {
                    *v = rng.gen_range(-5.0..5.0);
                }
            }
            close(&format!("{name} locality at {x}"), gamma2(&g, &other, x), gamma2(&g, &base, x), 1e-12)?;
        }

        for p in [1.5, 2.0, 3.0] {
            let e = Exponent::new(p).map_err(err)?;
            let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let scale: f64 = rng.gen_range(0.1..10.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            let r1 = p_rayleigh(&g, e, &f).map_err(err)?;
            let r2 = p_rayleigh(&g, e, &f.iter().map(|v| v * scale).collect::<Vec<_>>()).map_err(err)?;
            ensure((r1 - r2).abs() <= 1e-9 * r1.abs().max(1.0), || format!("{name}: R_{p} scale {r1} vs {r2}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("signed K3 spectrum and curvature", criterion_1),
        ("all-positive K3", criterion_2),
        ("odd cycles", criterion_3),
        ("chorded heptagon", criterion_4),
        ("hypercubes with one negative edge", criterion_5),
        ("frustration and curvature cross-check", criterion_6),
        ("inequality suite", criterion_7),
        ("p = 2 solver against linear spectrum", criterion_8),
        ("switching invariance and property suites", criterion_9),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} PASS  {name} ({t:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({t:.2}s): {msg}", i + 1);
            }
        }
    }
    let t = total.elapsed();
    if t > Duration::from_secs(300) {
        failed += 1;
        println!("total time {t:?} exceeds 5 minutes");
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed.min(criteria.len()), criteria.len(), t.as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
