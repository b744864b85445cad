//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use monoconv::bounds::{
    c1, c2, c_beta_kappa, d_bound_cases, dineq_check, find_root_exp1, phi_beta_kappa, ratio_box_constants,
    simplex_bounds, symbox_error, DCase, RootResult,
};
use monoconv::envelopes::LinearUnderestimator;
use monoconv::hulls::{symbox_hull_error, symbox_reflection_errors, verify_integrality};
use monoconv::oracle::{max_gap, maximize, sigma_numeric, Estimator, Side};
use monoconv::polyrelax::certify_gap_small_instance;
use monoconv::{Domain, GridSpec, Monomial, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn mono(a: &[u32]) -> Monomial {
    Monomial::new(a.to_vec()).unwrap()
}

fn near_diagonal(p: &[f64], target: Option<f64>, tol: f64) -> bool {
    let mean = p.iter().sum::<f64>() / p.len() as f64;
    p.iter().all(|&v| (v - mean).abs() <= tol) && target.map_or(true, |t| p.iter().all(|&v| (v - t).abs() <= tol))
}

fn unit_box_hull_error() -> Outcome {
    let cases: [&[u32]; 5] = [&[1, 1], &[2, 1], &[1, 1, 1], &[2, 1, 1], &[3, 2]];
    let mut worst = 0.0f64;
    for a in cases {
        let m = mono(a);
        let d = m.degree();
        let dom = Domain::unit_box(m.n()).map_err(|e| e.to_string())?;
        let bound = c1::<f64>(d).unwrap();
        let r = max_gap(&m, &dom, &Estimator::ConcaveUnitBox, Side::Over, bound, 1e-4, &GridSpec::for_dim(m.n()))
            .map_err(|e| e.to_string())?;
        let target = (d as f64).powf(1.0 / (1.0 - d as f64));
        if r.abs_gap > 1e-4 {
            return Err(format!("alpha={a:?}: measured {} vs C1 {bound}", r.measured_value));
        }
        if !near_diagonal(r.argmax().unwrap(), Some(target), 1e-3) {
            return Err(format!("alpha={a:?}: argmax {:?} not near {target}", r.argmax()));
        }
        worst = worst.max(r.abs_gap);
    }
    Ok(format!("5 cases, max |measured - C1| = {worst:.2e}"))
}

fn unit_box_convex_envelope() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let m = Monomial::multilinear(n).unwrap();
        let dom = Domain::unit_box(n).unwrap();
        let bound = c2::<f64>(n as u32).unwrap();
        let r = max_gap(&m, &dom, &Estimator::ConvexUnitBox, Side::Under, bound, 1e-4, &GridSpec::for_dim(n))
            .map_err(|e| e.to_string())?;
        let target = 1.0 - 1.0 / n as f64;
        if r.abs_gap > 1e-4 {
            return Err(format!("n={n}: measured {} vs {bound}", r.measured_value));
        }
        if !near_diagonal(r.argmax().unwrap(), Some(target), 1e-2) {
            return Err(format!("n={n}: argmax {:?} not near {target}", r.argmax()));
        }
        worst = worst.max(r.abs_gap);
    }
    Ok(format!("n=2..5, max |measured - (1-1/n)^n| = {worst:.2e}"))
}

fn ratio_box() -> Outcome {
    let mut worst = 0.0f64;
    for &(n, r) in &[(2usize, 2.0f64), (3, 2.0), (3, 1.5), (4, 2.0)] {
        let m = Monomial::multilinear(n).unwrap();
        let dom = Domain::ratio_box(n, r).unwrap();
        let c = ratio_box_constants(n, r).unwrap();
        let spec = GridSpec::for_dim(n);
        for (est, side, bound, name) in [
            (Estimator::ConvexRatioBox, Side::Under, c.d, "D"),
            (Estimator::ConcaveRatioBox, Side::Over, c.e, "E"),
        ] {
            let rep = max_gap(&m, &dom, &est, side, bound, 1e-3, &spec).map_err(|e| e.to_string())?;
            if rep.abs_gap > 1e-3 {
                return Err(format!("n={n} r={r}: {name} measured {} vs {bound}", rep.measured_value));
            }
            if !near_diagonal(rep.argmax().unwrap(), None, 1e-3) {
                return Err(format!("n={n} r={r}: {name} argmax {:?} off the diagonal", rep.argmax()));
            }
            worst = worst.max(rep.abs_gap);
        }
    }
    Ok(format!("4 (n,r) pairs, both envelopes, max gap error {worst:.2e}"))
}

fn symmetric_box() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let bound = symbox_error::<f64>(n).unwrap();
        let rep = symbox_hull_error::<f64>(n, 1e-3, &GridSpec::for_dim(n)).map_err(|e| e.to_string())?;
        if rep.abs_gap > 1e-3 {
            return Err(format!("n={n}: oracle {} vs {bound}", rep.measured_value));
        }
        worst = worst.max(rep.abs_gap);
        for (x, w, err) in symbox_reflection_errors::<f64>(n).unwrap() {
            if (err - bound).abs() > 1e-9 {
                return Err(format!("n={n}: reflection {x:?}, w={w} has error {err}"));
            }
        }
    }
    Ok(format!("n=2..5, max oracle error {worst:.2e}, all reflections exact"))
}

fn integrality() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let r = verify_integrality(n, 1000, 42 + n as u64).map_err(|e| e.to_string())?;
        if !r.passed(1e-9) {
            return Err(format!("n={n}: {r:?}"));
        }
        worst = worst.max(r.max_abs_diff);
    }
    Ok(format!("n=2..5 x 1000 objectives, max |constructive - LP| = {worst:.2e}"))
}

fn simplex_tightness() -> Outcome {
    let mut worst = 0.0f64;
    let gaps = |m: &Monomial| -> Result<(f64, f64), String> {
        let dom = Domain::std_simplex(m.n()).unwrap();
        let spec = GridSpec::for_dim(m.n());
        let conc = max_gap(m, &dom, &Estimator::ConcaveUnitBox, Side::Over, 0.0, 1e-4, &spec).map_err(|e| e.to_string())?;
        // f vanishes at every vertex of the simplex, so its convex envelope there is 0
        let cvx = maximize(|x: &[f64]| m.eval(x).unwrap(), &dom, &spec).map_err(|e| e.to_string())?;
        Ok((conc.measured_value, cvx.value))
    };
    for a in [&[1u32, 1][..], &[2, 2], &[1, 1, 1], &[2, 2, 2]] {
        let m = mono(a);
        let (bc, bv) = simplex_bounds::<f64>(&m).unwrap();
        let (mc, mv) = gaps(&m)?;
        if (bc - mc).abs() > 1e-4 || (bv - mv).abs() > 1e-4 {
            return Err(format!("alpha={a:?}: bounds ({bc}, {bv}) vs measured ({mc}, {mv})"));
        }
        worst = worst.max((bc - mc).abs()).max((bv - mv).abs());
    }
    let m = mono(&[2, 1]);
    let (bc, bv) = simplex_bounds::<f64>(&m).unwrap();
    let (mc, mv) = gaps(&m)?;
    if !(bc > mc) || (bv - mv).abs() > 1e-4 {
        return Err(format!("alpha=(2,1): conc bound {bc} vs measured {mc}; cvx {bv} vs {mv}"));
    }
    Ok(format!("symmetric max error {worst:.2e}; alpha=(2,1) conc bound {bc:.6} > measured {mc:.6}"))
}

fn figure_one() -> Outcome {
    let rs = [1.01, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0];
    let mut max_ratio = 0.0f64;
    for n in 2..=100 {
        for &r in &rs {
            let c = ratio_box_constants(n, r).map_err(|e| e.to_string())?;
            let q = c.ratio();
            if !(q <= 1.0 + 1e-12) {
                return Err(format!("D/E = {q} at n={n} r={r}"));
            }
            max_ratio = max_ratio.max(q);
        }
    }
    let mut issues = Vec::new();
    for &r in &rs {
        let c = ratio_box_constants(100, r).unwrap();
        let case = d_bound_cases(100, r).unwrap().case;
        let dq = (c.ln_d - c.ln_span()).exp();
        if matches!(case, DCase::Exact | DCase::InteriorMax) && dq > 1.0 / std::f64::consts::E + 0.02 {
            issues.push(format!("D/(r^n-1) = {dq:.4} at r={r} ({case})"));
        }
    }
    let eq = |n: usize| {
        let c = ratio_box_constants(n, 2.0f64).unwrap();
        (c.ln_e - c.ln_span()).exp()
    };
    let e100 = eq(100);
    if (e100 - 1.0).abs() > 0.05 {
        issues.push(format!(
            "E/(r^n-1) = {e100:.4} at n=100, r=2 (not within 0.05 of 1; n=1000 gives {:.4}, n=10000 gives {:.4})",
            eq(1000),
            eq(10_000)
        ));
    }
    if issues.is_empty() {
        Ok(format!("max D/E = {max_ratio:.6}, E/(r^n-1) = {e100:.4} at n=100"))
    } else {
        Err(format!("max D/E = {max_ratio:.6} ok; {}", issues.join("; ")))
    }
}

fn fixed_points_and_roots() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let alpha: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
        let m = Monomial::new(alpha.clone()).unwrap();
        let kappa: Vec<f64> = alpha.iter().map(|&a| rng.gen_range(1..=a) as f64).collect();
        let mut beta: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..5.0)).collect();
        let j = rng.gen_range(0..n);
        beta[j] = beta[j].max(kappa[j]);
        let db: f64 = beta.iter().sum();
        let sigma = rng.gen_range(0.0..db);
        let c = c_beta_kappa(&m, &beta, &kappa, sigma).map_err(|e| e.to_string())?;
        let phi = phi_beta_kappa(&m, &beta, &kappa, sigma, c).map_err(|e| e.to_string())?;
        if (phi - c).abs() > 1e-12 {
            return Err(format!("phi(C) - C = {:e} for beta={beta:?} kappa={kappa:?} sigma={sigma}", phi - c));
        }
        worst = worst.max((phi - c).abs());
    }
    let mut roots = 0;
    for l1 in 2..=10u32 {
        for k in 0..20 {
            let l2 = 1.0 + (l1 as f64 - 1.0) * k as f64 / 20.0;
            match find_root_exp1(l1, l2).map_err(|e| e.to_string())? {
                RootResult::Root { sigma, lower, residual } => {
                    if residual.abs() > 1e-12 || !(sigma > lower) {
                        return Err(format!("l1={l1} l2={l2}: sigma={sigma} lower={lower} residual={residual:e}"));
                    }
                    roots += 1;
                }
                RootResult::NoRoot => return Err(format!("l1={l1} l2={l2}: no root reported")),
            }
        }
    }
    Ok(format!("100 fixed points (max residual {worst:.1e}), {roots} roots"))
}

fn underestimator_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    for _ in 0..20 {
        let n = rng.gen_range(2..=3);
        let mut alpha: Vec<u32> = vec![1; n];
        let extra = rng.gen_range(0..=(6 - n));
        for _ in 0..extra {
            alpha[rng.gen_range(0..n)] += 1;
        }
        let m = Monomial::new(alpha.clone()).unwrap();
        let lo: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..0.5)).collect();
        let hi: Vec<f64> = lo.iter().map(|&l| rng.gen_range(l + 0.1..=1.0)).collect();
        let dom = Domain::sub_box(lo.clone(), hi.clone()).unwrap();
        let u = LinearUnderestimator::gamma(&m, &dom).map_err(|e| e.to_string())?;
        let res = (1e5f64).powf(1.0 / n as f64).ceil() as usize;
        let total = res.pow(n as u32);
        let mut x = vec![0.0; n];
        for idx in 0..total {
            let mut k = idx;
            for j in 0..n {
                x[j] = lo[j] + (hi[j] - lo[j]) * (k % res) as f64 / (res - 1) as f64;
                k /= res;
            }
            let gap = u.value(&x).unwrap() - m.eval(&x).unwrap();
            if gap > 1e-12 {
                return Err(format!("alpha={alpha:?} box=({lo:?},{hi:?}): violation {gap:e} at {x:?}"));
            }
        }
        checked += total;
    }
    for _ in 0..10 {
        let n = rng.gen_range(2..=4);
        let alpha: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let m = Monomial::new(alpha.clone()).unwrap();
        let beta: Vec<f64> = alpha.iter().map(|&a| a as f64).collect();
        let dom = Domain::unit_box(n).unwrap();
        let s = sigma_numeric(&m, &dom, &beta, &GridSpec::for_dim(n).with_resolution(12)).map_err(|e| e.to_string())?;
        if (s - 1.0).abs() > 1e-9 {
            return Err(format!("sigma(alpha) = {s} for alpha={alpha:?}"));
        }
    }
    Ok(format!("{checked} grid points over 20 boxes, no violations; sigma(alpha) = 1 on 10 exponents"))
}

fn polynomial_gap() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let dom = Domain::unit_box(3).unwrap();
    let spec = GridSpec::for_dim(3).with_resolution(24);
    let mut max_ratio = 0.0f64;
    for trial in 0..50 {
        let mut terms = Vec::new();
        for mask in 1u32..8 {
            if mask.count_ones() >= 2 && terms.is_empty() || rng.gen_bool(0.6) {
                let alpha: Vec<u32> = (0..3).map(|j| mask >> j & 1).collect();
                terms.push((rng.gen_range(-2.0..2.0), alpha));
            }
        }
        let p = Polynomial::new(3, terms).unwrap();
        let c = certify_gap_small_instance(&p, &dom, &spec).map_err(|e| e.to_string())?;
        if !c.holds || c.gap < 0.0 || c.gap > c.bound.tight {
            return Err(format!("trial {trial}: gap {} outside [0, {}]", c.gap, c.bound.tight));
        }
        max_ratio = max_ratio.max(c.gap / c.bound.tight);
    }
    Ok(format!("50 polynomials, largest gap / tight bound = {max_ratio:.4}"))
}

fn inequality_sweeps() -> Outcome {
    for d in 2..=50u32 {
        if !dineq_check(d) {
            return Err(format!("dineq fails at d={d}"));
        }
        let (a, b) = (c1::<f64>(d).unwrap(), c2::<f64>(d).unwrap());
        if b > a || ((a == b) != (d == 2)) {
            return Err(format!("c2 <= c1 with equality only at 2 fails at d={d}: {b} vs {a}"));
        }
        if d > 2 {
            let (pa, pb) = (c1::<f64>(d - 1).unwrap(), c2::<f64>(d - 1).unwrap());
            if !(a > pa) || !(b > pb) || !(b < 1.0 / std::f64::consts::E) {
                return Err(format!("monotonicity fails at d={d}"));
            }
        }
    }
    Ok("d=2..50".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("unit-box hull error", unit_box_hull_error),
        ("unit-box convex envelope", unit_box_convex_envelope),
        ("ratio box envelopes", ratio_box),
        ("symmetric box hull", symmetric_box),
        ("integrality", integrality),
        ("simplex tightness", simplex_tightness),
        ("D/E table and asymptotics", figure_one),
        ("fixed points and roots", fixed_points_and_roots),
        ("underestimator validity", underestimator_validity),
        ("polynomial gap", polynomial_gap),
        ("inequality sweeps", inequality_sweeps),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
