use monoconv::bounds::{c1, c2, gamma_bound, lower_bound_phi, ratio_box_constants, sigma_beta};
use monoconv::envelopes::{
    concave_env_ratiobox, concave_env_unitbox, convex_env_ratiobox, convex_env_unitbox_multilinear, envelopes_symbox,
    gamma_vector, relaxed_convex_env_ratiobox, LinearUnderestimator,
};
use monoconv::hulls::{constructive_optimum, FacetSystem};
use monoconv::oracle::{sampled_hull_envelope, sigma_numeric, Side};
use monoconv::polyrelax::{gap_bound, lprime};
use monoconv::{Domain, GridSpec, Monomial, Polynomial};
use proptest::prelude::*;

fn unit_point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, n)
}

fn alpha_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unit_box_sandwich(x in (2usize..=6).prop_flat_map(unit_point)) {
        let n = x.len();
        let m = Monomial::multilinear(n).unwrap();
        let f = m.eval(&x).unwrap();
        prop_assert!(convex_env_unitbox_multilinear(n, &x).unwrap() <= f + 1e-15);
        prop_assert!(f <= concave_env_unitbox(&m, &x).unwrap() + 1e-15);
    }

    #[test]
    fn monomial_below_min_coordinate(alpha in alpha_strategy(), seed in prop::collection::vec(0.0..=1.0f64, 4)) {
        let m = Monomial::new(alpha.clone()).unwrap();
        let x = &seed[..alpha.len()];
        let f = m.eval(x).unwrap();
        prop_assert!(f >= 0.0);
        prop_assert!(f <= x.iter().copied().fold(1.0, f64::min) + 1e-15);
        prop_assert_eq!(m.eval(&vec![1.0; alpha.len()]).unwrap(), 1.0);
    }

    #[test]
    fn ratio_box_sandwich_and_permutation(
        n in 2usize..=5,
        r in 1.05..6.0f64,
        u in prop::collection::vec(0.0..=1.0f64, 5),
        shift in 0usize..5,
    ) {
        let x: Vec<f64> = u[..n].iter().map(|&t| 1.0 + (r - 1.0) * t).collect();
        let f: f64 = x.iter().product();
        let lo = convex_env_ratiobox(n, r, &x).unwrap();
        let relaxed = relaxed_convex_env_ratiobox(n, r, &x).unwrap();
        let hi = concave_env_ratiobox(n, r, &x).unwrap();
        let tol = 1e-12 * r.powi(n as i32);
        prop_assert!(relaxed <= lo + tol && lo <= f + tol && f <= hi + tol);
        let mut y = x.clone();
        y.rotate_left(shift % n);
        prop_assert!((convex_env_ratiobox(n, r, &y).unwrap() - lo).abs() <= tol);
        prop_assert!((concave_env_ratiobox(n, r, &y).unwrap() - hi).abs() <= tol);
    }

    #[test]
    fn symbox_sandwich_and_reflection(x in prop::collection::vec(-1.0..=1.0f64, 2..=6), flips in 0u64..64) {
        let n = x.len();
        let f: f64 = x.iter().product();
        let (lo, hi) = envelopes_symbox(n, &x).unwrap();
        prop_assert!(lo <= f + 1e-12 && f <= hi + 1e-12);
        // an even number of sign flips preserves f and both envelopes; an odd number swaps and negates them
        let mask = flips & ((1 << n) - 1);
        let y: Vec<f64> = x.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v }).collect();
        let (lo2, hi2) = envelopes_symbox(n, &y).unwrap();
        if mask.count_ones() % 2 == 0 {
            prop_assert!((lo2 - lo).abs() < 1e-12 && (hi2 - hi).abs() < 1e-12);
        } else {
            prop_assert!((lo2 + hi).abs() < 1e-12 && (hi2 + lo).abs() < 1e-12);
        }
    }

    #[test]
    fn facet_membership_matches_envelopes(x in prop::collection::vec(-1.0..=1.0f64, 2..=5), t in 0.0..=1.0f64) {
        let n = x.len();
        let fs = FacetSystem::new(n).unwrap();
        let (lo, hi) = envelopes_symbox(n, &x).unwrap();
        let w = lo + (hi - lo) * t;
        prop_assert!(fs.membership(&x, w).unwrap().member);
        prop_assert!(fs.membership(&x, x.iter().product()).unwrap().member);
        if hi < 1.0 - 1e-6 {
            prop_assert!(!fs.membership(&x, hi + 1e-6).unwrap().member);
        }
    }

    #[test]
    fn constructive_optimum_matches_lp(c in prop::collection::vec(prop_oneof![Just(0.0), -1.0..1.0f64], 3..=5)) {
        let fs = FacetSystem::new(c.len() - 1).unwrap();
        let (y, v) = constructive_optimum(&c);
        let (lp, _) = fs.lp_optimum(&c).unwrap();
        prop_assert!((v - lp).abs() < 1e-9);
        prop_assert_eq!(y.iter().filter(|&&t| t < 0.0).count() % 2, 0);
    }

    #[test]
    fn gamma_underestimator_valid(
        alpha in alpha_strategy(),
        lo in prop::collection::vec(0.0..0.6f64, 4),
        width in prop::collection::vec(0.05..0.4f64, 4),
        t in prop::collection::vec(0.0..=1.0f64, 4),
    ) {
        let n = alpha.len();
        let m = Monomial::new(alpha.clone()).unwrap();
        let lower = lo[..n].to_vec();
        let upper: Vec<f64> = lower.iter().zip(&width).map(|(&l, &w)| (l + w).min(1.0)).collect();
        let dom = Domain::sub_box(lower.clone(), upper.clone()).unwrap();
        let x: Vec<f64> = (0..n).map(|j| lower[j] + (upper[j] - lower[j]) * t[j]).collect();
        let f = m.eval(&x).unwrap();
        let ug = LinearUnderestimator::gamma(&m, &dom).unwrap();
        let ua = LinearUnderestimator::tangent_at_one(&m);
        prop_assert!(ug.value(&x).unwrap() <= f + 1e-12);
        prop_assert!(ua.value(&x).unwrap() <= f + 1e-12);
        // γ ≤ α componentwise, so its bound never exceeds C²_d
        let g = gamma_vector(&m, &dom).unwrap();
        prop_assert!(g.iter().zip(&alpha).all(|(&gj, &aj)| gj <= aj as f64 + 1e-12));
        if g.iter().all(|&gj| gj >= 1.0) && g.iter().sum::<f64>() > 1.0 {
            prop_assert!(gamma_bound(&g).unwrap() <= c2::<f64>(m.degree()).unwrap() + 1e-12);
        }
    }

    #[test]
    fn lprime_homogeneous(coeffs in prop::collection::vec(-3.0..3.0f64, 1..5), t in 0.1..10.0f64) {
        let terms: Vec<(f64, Vec<u32>)> = coeffs.iter().enumerate().map(|(i, &c)| (c, vec![1, 1 + i as u32 % 2, 1])).collect();
        let p = Polynomial::new(3, terms).unwrap();
        prop_assume!(!p.terms().is_empty());
        let a = lprime(&p).unwrap();
        let b = lprime(&p.scaled(t).unwrap()).unwrap();
        prop_assert!((b - t * a).abs() <= 1e-12 * (1.0 + t * a));
    }

    #[test]
    fn tight_below_cheap_for_homogeneous(coeffs in prop::collection::vec(-2.0..2.0f64, 1..4), n in 3usize..6) {
        let terms: Vec<(f64, Vec<u32>)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut a = vec![0u32; n];
                a[i % n] = 2;
                a[(i + 1) % n] += 1;
                (c, a)
            })
            .collect();
        let p = Polynomial::new(n, terms).unwrap();
        prop_assume!(!p.terms().is_empty());
        let b = gap_bound(&p).unwrap();
        prop_assert!(b.tight <= b.cheap * (1.0 + 1e-12));
        prop_assert!(b.sharper <= b.tight * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn d_below_e(n in 2usize..=300, r in 1.001..50.0f64) {
        let c = ratio_box_constants(n, r).unwrap();
        prop_assert!(c.ln_d <= c.ln_e + 1e-12);
        prop_assert!(c.ln_d <= c.ln_relaxed + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_forms_match_vertex_lp(u in prop::collection::vec(0.0..=1.0f64, 3), r in 1.2..4.0f64, n in 2usize..=3) {
        let m = Monomial::multilinear(n).unwrap();
        let x01 = &u[..n];
        let unit = Domain::unit_box(n).unwrap();
        let hi = sampled_hull_envelope(&m, &unit, x01, Side::Over).unwrap();
        let lo = sampled_hull_envelope(&m, &unit, x01, Side::Under).unwrap();
        prop_assert!((hi - concave_env_unitbox(&m, x01).unwrap()).abs() < 1e-6);
        prop_assert!((lo - convex_env_unitbox_multilinear(n, x01).unwrap()).abs() < 1e-6);

        let rb = Domain::ratio_box(n, r).unwrap();
        let xr: Vec<f64> = x01.iter().map(|&t| 1.0 + (r - 1.0) * t).collect();
        prop_assert!((sampled_hull_envelope(&m, &rb, &xr, Side::Over).unwrap() - concave_env_ratiobox(n, r, &xr).unwrap()).abs() < 1e-6);
        prop_assert!((sampled_hull_envelope(&m, &rb, &xr, Side::Under).unwrap() - convex_env_ratiobox(n, r, &xr).unwrap()).abs() < 1e-6);

        let sb = Domain::sym_box(n).unwrap();
        let xs: Vec<f64> = x01.iter().map(|&t| 2.0 * t - 1.0).collect();
        let (slo, shi) = envelopes_symbox(n, &xs).unwrap();
        prop_assert!((sampled_hull_envelope(&m, &sb, &xs, Side::Over).unwrap() - shi).abs() < 1e-6);
        prop_assert!((sampled_hull_envelope(&m, &sb, &xs, Side::Under).unwrap() - slo).abs() < 1e-6);
    }

    #[test]
    fn sigma_on_unit_box_in_unit_interval(beta in prop::collection::vec(1.0..4.0f64, 2..=3), alpha in prop::collection::vec(1u32..=3, 3)) {
        let n = beta.len();
        let m = Monomial::new(alpha[..n].to_vec()).unwrap();
        let dom = Domain::unit_box(n).unwrap();
        let s = sigma_numeric(&m, &dom, &beta, &GridSpec::for_dim(n).with_resolution(16)).unwrap();
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&s), "sigma = {}", s);
        prop_assert!(sigma_beta(&m, &dom, &beta).unwrap().contains(s, 1e-9));
    }
}

#[test]
fn degree_constant_ordering() {
    for d in 2..=200u32 {
        let (a, b) = (c1::<f64>(d).unwrap(), c2::<f64>(d).unwrap());
        assert!(b <= a);
        assert!(a < 1.0 && b < 1.0 / std::f64::consts::E);
        let (phi, _) = lower_bound_phi::<f64>(d, 0.0, 1.0).unwrap();
        assert!((phi - a).abs() < 1e-12, "d={d}");
    }
    assert_eq!(c1::<f64>(2).unwrap(), c2::<f64>(2).unwrap());
}

#[test]
fn f32_and_f64_agree() {
    for d in 2..=30 {
        assert!((c1::<f32>(d).unwrap() as f64 - c1::<f64>(d).unwrap()).abs() < 1e-6);
        assert!((c2::<f32>(d).unwrap() as f64 - c2::<f64>(d).unwrap()).abs() < 1e-6);
    }
    for n in [2usize, 5, 20] {
        let a = ratio_box_constants(n, 2.0f32).unwrap();
        let b = ratio_box_constants(n, 2.0f64).unwrap();
        assert!((a.ratio() as f64 - b.ratio()).abs() < 1e-4, "n={n}");
    }
}
