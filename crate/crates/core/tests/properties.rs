mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_sumset, random_diff_poly, random_form, random_poly, small_gauss};
use orbifold_workbench::algebra::gauss::GaussRat;
use orbifold_workbench::algebra::gcd::gcd;
use orbifold_workbench::algebra::nullstellensatz::nullstellensatz_certificate;
use orbifold_workbench::algebra::poly::SparsePoly;
use orbifold_workbench::algebra::resultant::resultant;
use orbifold_workbench::algebra::squarefree::is_squarefree;
use orbifold_workbench::constants::{dim_vt, MonomialFamily};
use orbifold_workbench::differential::{apply_du, check_product_rule, DiffRing};
use orbifold_workbench::exceptional::substitution::validate_plane_curve;
use orbifold_workbench::exceptional::{canonical_pairs, normalize_pair, substitute};
use orbifold_workbench::morphism::{euler_identity_check, jacobian_det, jacobian_ratio, PowerMorphism};
use orbifold_workbench::nevanlinna::{counting_n, gcd_counting, MeroFn, Target};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_rule(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_diff_poly(&mut r, n);
        let g = random_diff_poly(&mut r, n);
        prop_assert!(check_product_rule(&f, &g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn du_linear_and_degree_preserving(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let ring = DiffRing::new(n);
        let (df, dg) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let f = ring.embed(&random_form(&mut r, n + 1, df, 4)).unwrap();
        let g = ring.embed(&random_form(&mut r, n + 1, dg, 4)).unwrap();
        let (a, b) = (small_gauss(&mut r), small_gauss(&mut r));
        let lhs = apply_du(&f.scale(&a).add(&g.scale(&b))).unwrap();
        let rhs = apply_du(&f).unwrap().scale(&a).add(&apply_du(&g).unwrap().scale(&b));
        prop_assert_eq!(lhs, rhs);
        let d = apply_du(&f).unwrap();
        if !d.is_zero() {
            prop_assert_eq!(d.x_degree(), f.x_degree());
        }
        // constant coefficients twist into the Z-span of the w_j
        for (e, c) in d.poly.terms() {
            prop_assert_eq!(e[ring.n + 1..=2 * ring.n].iter().sum::<u32>(), 1);
            prop_assert!(e[2 * ring.n + 1..].iter().all(|&k| k == 0));
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn add_sub_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, 3, 5, 6);
        let q = random_poly(&mut r, 3, 5, 6);
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(seed in any::<u64>(), shared in any::<bool>()) {
        let mut r = rng(seed);
        let mk = |r: &mut ChaCha8Rng| loop {
            let p = random_poly(r, 2, 3, 4);
            if p.degree_in(0) > 0 {
                break p;
            }
        };
        let (mut f, mut g) = (mk(&mut r), mk(&mut r));
        if shared {
            let h = mk(&mut r);
            f = &f * &h;
            g = &g * &h;
        }
        let common = gcd(&f, &g).degree_in(0) > 0;
        prop_assert_eq!(resultant(&f, &g, 0).is_zero(), common);
        if shared {
            prop_assert!(common);
        }
    }

    #[test]
    fn normalized_pairs(n1 in -30i64..=30, n2 in -30i64..=30) {
        prop_assume!((n1, n2) != (0, 0));
        let p = normalize_pair(n1, n2).unwrap();
        prop_assert!(p.check_invariants());
        prop_assert_eq!(p.original(), (n1, n2));
    }

    #[test]
    fn dim_vt_matches_brute_force(seed in any::<u64>(), gens in 1usize..=3, size in 1usize..=4, t in 0u64..=8) {
        let mut r = rng(seed);
        let vecs: Vec<Vec<i64>> = (0..size).map(|_| (0..gens).map(|_| r.gen_range(-2..=2)).collect()).collect();
        let fam = MonomialFamily::new(gens, vecs).unwrap();
        let expected = brute_sumset(&fam.vectors, t as usize);
        prop_assert_eq!(dim_vt(&fam, t).unwrap().to_string(), expected.to_string());
    }

    #[test]
    fn morphism_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: Vec<SparsePoly> = (0..3).map(|_| {
            let d = r.gen_range(1..=3);
            random_form(&mut r, 3, d, 4)
        }).collect();
        let m = PowerMorphism::new_unchecked(f[0].clone(), f[1].clone(), f[2].clone()).unwrap();
        prop_assert!(euler_identity_check(&m).all());
        prop_assert_eq!(jacobian_det(&m, false), &jacobian_det(&m, true) * &jacobian_ratio(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn nullstellensatz_certificates_expand(seed in any::<u64>()) {
        let mut r = rng(seed);
        // forms in (z, u) = (x0, x1) with coefficients in Q(i)[x2]
        let mk = |r: &mut ChaCha8Rng| {
            let d = r.gen_range(1..=3);
            let mut p = SparsePoly::zero(3);
            for k in 0..=d {
                let c = random_poly(r, 1, 1, 2);
                for (e, v) in c.terms() {
                    p = &p + &SparsePoly::monomial(3, vec![d - k, k, e[0]], v.clone());
                }
            }
            p
        };
        let (f, g) = (mk(&mut r), mk(&mut r));
        prop_assume!(!f.is_zero() && !g.is_zero() && gcd(&f, &g).degree() == 0);
        let cert = nullstellensatz_certificate(&f, &g, 0, 1).unwrap();
        prop_assert!(cert.verify(&f, &g));
    }

    #[test]
    fn gcd_counting_symmetric_and_bounded(a in 0i64..4, b in 0i64..4, c in 1i64..4, r0 in 2.5f64..30.0) {
        // f = z^a (z-1)^c (z+2), g = z^b (z-1)^(c+1) (z-3i)
        let z = MeroFn::z();
        let one = MeroFn::poly_int(&[-1, 1]);
        let f = z.powi(a).unwrap().mul(&one.powi(c).unwrap()).mul(&MeroFn::poly_int(&[2, 1]));
        let g3 = MeroFn::poly(&SparsePoly::univariate(&[GaussRat::complex((0, 1), (-3, 1)), GaussRat::one()])).unwrap();
        let g = z.powi(b).unwrap().mul(&one.powi(c + 1).unwrap()).mul(&g3);
        let r = r0 + 0.0123;
        let fg = gcd_counting(&f, &g, r).unwrap();
        let gf = gcd_counting(&g, &f, r).unwrap();
        prop_assert!((fg - gf).abs() < 1e-9);
        let nf = counting_n(&f, Target::Zeros, r, None).unwrap();
        let ng = counting_n(&g, Target::Zeros, r, None).unwrap();
        prop_assert!(fg <= nf.min(ng) + 1e-9);
        for k in 1..4 {
            let nk = counting_n(&f, Target::Zeros, r, Some(k)).unwrap();
            let n1 = counting_n(&f, Target::Zeros, r, Some(1)).unwrap();
            prop_assert!(nk <= nf + 1e-12 && nk <= k as f64 * n1 + 1e-12);
        }
        let expected = (a.min(b) + c) as f64 * r.ln();
        prop_assert!((fg - expected).abs() < 1e-9, "{fg} vs {expected}");
    }
}

#[test]
fn substitution_round_trips() {
    let mut r = rng(7);
    let pairs = canonical_pairs(3);
    let mut checked = 0;
    while checked < 40 {
        let d = r.gen_range(2..=3);
        let mut g = random_form(&mut r, 3, d, 4);
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = d;
            g = &g + &SparsePoly::monomial(3, e, GaussRat::from_int(r.gen_range(1..=3)));
        }
        if validate_plane_curve(&g).is_err() {
            continue;
        }
        let pair = pairs[r.gen_range(0..pairs.len())];
        let s = substitute(&g, &pair).unwrap();
        assert_eq!(s.round_trip(), s.g1);
        assert!(is_squarefree(&s.b));
        checked += 1;
    }
}

#[test]
fn du_numeric_on_random_forms() {
    let mut r = rng(11);
    let x = SparsePoly::var(1, 0);
    let u = [MeroFn::one(), MeroFn::poly(&(&x * &x)).unwrap(), MeroFn::exp_linear(GaussRat::from_frac(1, 2))];
    let samples: Vec<Complex64> = (0..8).map(|k| Complex64::from_polar(0.6 + 0.4 * k as f64, 1.1 * k as f64 + 0.3)).collect();
    for _ in 0..20 {
        let d = r.gen_range(1..=4);
        let f = random_form(&mut r, 3, d, 5);
        let res = orbifold_workbench::differential::verify_du_numeric(&f, &u, &samples).unwrap();
        assert!(res < 1e-9, "{res}");
    }
}
