use pairlaw_core::dist_core::{canonical_sorted, Distribution};
use pairlaw_core::family_opt::{family_discrepancy_at, FamilyPoint};
use pairlaw_core::pair_laws::{derive_m1, derive_m2, discrepancy, m2_oracle_exact, tvd_forms};
use pairlaw_core::shoes::{shoes_discrepancy, shoes_m1, shoes_m2_exact, ShoePair};
use pairlaw_core::RngSeed;
use proptest::prelude::*;

/// Positive weights normalized to a distribution; `zeros` marks entries
/// forced to zero (at least one entry stays positive).
fn normalize(weights: Vec<f64>, zeros: Vec<bool>) -> Distribution {
    let mut w: Vec<f64> = weights
        .iter()
        .zip(zeros.iter().chain(std::iter::repeat(&false)))
        .map(|(&x, &z)| if z { 0.0 } else { x })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let s: f64 = w.iter().sum();
    Distribution::new(w.into_iter().map(|x| x / s).collect()).unwrap()
}

fn dist(max_m: usize) -> impl Strategy<Value = Distribution> {
    (1..=max_m)
        .prop_flat_map(|m| {
            (
                prop::collection::vec(1e-3f64..1.0, m),
                prop::collection::vec(prop::bool::weighted(0.15), m),
            )
        })
        .prop_map(|(w, z)| normalize(w, z))
}

fn permutation(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..m).collect::<Vec<_>>()).prop_shuffle()
}

fn dist_and_perm(max_m: usize) -> impl Strategy<Value = (Distribution, Vec<usize>)> {
    dist(max_m).prop_flat_map(|d| {
        let m = d.len();
        (Just(d), permutation(m))
    })
}

fn sum(v: &[f64]) -> f64 {
    v.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn laws_are_normalized(d in dist(200)) {
        let (m1, m2) = (derive_m1(&d), derive_m2(&d));
        prop_assert!((sum(&m1.probs) - 1.0).abs() < 1e-10);
        prop_assert!((sum(&m2.probs) - 1.0).abs() < 1e-10);
        prop_assert!(m2.probs.iter().all(|&q| q >= 0.0));
    }

    #[test]
    fn laws_are_permutation_equivariant((d, perm) in dist_and_perm(60)) {
        let pd = d.permuted(&perm).unwrap();
        let (m1, m2) = (derive_m1(&d), derive_m2(&d));
        let (pm1, pm2) = (derive_m1(&pd), derive_m2(&pd));
        for (k, &j) in perm.iter().enumerate() {
            prop_assert!((pm1.probs[k] - m1.probs[j]).abs() <= 1e-12);
            prop_assert!((pm2.probs[k] - m2.probs[j]).abs() <= 1e-12);
        }
        prop_assert!((discrepancy(&pd) - discrepancy(&d)).abs() <= 1e-12);
        prop_assert_eq!(canonical_sorted(&pd), canonical_sorted(&d));
    }

    #[test]
    fn larger_colors_are_relatively_rarer_under_method_two(d in dist(40)) {
        let p = d.probs();
        let y = derive_m2(&d).probs;
        for i in 0..p.len() {
            for j in 0..p.len() {
                if p[i] > p[j] && p[j] > 0.0 {
                    let (ri, rj) = (y[i] / (p[i] * p[i]), y[j] / (p[j] * p[j]));
                    prop_assert!(ri < rj + 1e-12 * rj, "ratio {} vs {}", ri, rj);
                    // cross-ratio form
                    let x_ratio = (p[i] * p[i]) / (p[j] * p[j]);
                    prop_assert!(x_ratio * (1.0 + 1e-12) > y[i] / y[j]);
                    if p[i] > p[j] * (1.0 + 1e-6) {
                        prop_assert!(ri < rj);
                    }
                }
            }
        }
    }

    #[test]
    fn discrepancy_vanishes_only_for_uniform(m in 2usize..60, gaps in prop::collection::vec(0.01f64..0.5, 1..8)) {
        prop_assert!(discrepancy(&Distribution::uniform(m).unwrap()) < 1e-10);
        // entries 1 + cumulative gaps, so neighbours differ by at least 0.01 before scaling
        let mut w = vec![1.0];
        for g in &gaps {
            let last = *w.last().unwrap();
            w.push(last + g);
        }
        let d = normalize(w, vec![]);
        prop_assert!(discrepancy(&d) > 1e-13);
    }

    #[test]
    fn oracle_agrees_with_table(d in dist(12)) {
        let fast = derive_m2(&d).probs;
        let slow = m2_oracle_exact(&d).unwrap().probs;
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn three_tvd_forms_agree(a in dist(30), seed in any::<u64>()) {
        let b = pairlaw_core::dist_core::sample_sorted_simplex(a.len(), RngSeed(seed));
        let f = tvd_forms(a.probs(), b.probs()).unwrap();
        prop_assert!((f.half_l1 - f.positive).abs() <= 1e-12);
        prop_assert!((f.half_l1 - f.negative).abs() <= 1e-12);
        let g = tvd_forms(derive_m1(&a).as_ref(), derive_m2(&a).as_ref()).unwrap();
        prop_assert!((g.positive - g.negative).abs() <= 1e-12);
    }

    #[test]
    fn family_formula_matches_general_path(n in 1u64..=200, s in 0.0f64..1.0) {
        let x = 1.0 / (n as f64 + 1.0) + s * (1.0 - 1.0 / (n as f64 + 1.0));
        let fp = FamilyPoint::new(n, x).unwrap();
        let direct = discrepancy(&fp.realize());
        prop_assert!((family_discrepancy_at(n, x).unwrap() - direct).abs() <= 1e-10);
    }
}

fn pair_strategy(max_m: usize) -> impl Strategy<Value = (ShoePair, Vec<usize>)> {
    (1..=max_m)
        .prop_flat_map(|m| {
            (
                prop::collection::vec(1e-3f64..1.0, m),
                prop::collection::vec(1e-3f64..1.0, m),
                prop::collection::vec(prop::bool::weighted(0.15), m),
                permutation(m),
            )
        })
        .prop_map(|(l, r, z, perm)| {
            let left = normalize(l, z);
            let right = normalize(r, vec![]);
            (ShoePair::new(left, right).unwrap(), perm)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shoe_laws_are_valid_and_equivariant((sp, perm) in pair_strategy(7)) {
        let (m1, m2) = (shoes_m1(&sp), shoes_m2_exact(&sp).unwrap());
        for law in [&m1.probs, &m2.probs] {
            prop_assert!((sum(law) - 1.0).abs() < 1e-12);
            prop_assert!(law.iter().all(|&q| q >= 0.0));
        }
        let psp = ShoePair::new(sp.left().permuted(&perm).unwrap(), sp.right().permuted(&perm).unwrap()).unwrap();
        let (pm1, pm2) = (shoes_m1(&psp), shoes_m2_exact(&psp).unwrap());
        for (k, &j) in perm.iter().enumerate() {
            prop_assert!((pm1.probs[k] - m1.probs[j]).abs() <= 1e-12);
            prop_assert!((pm2.probs[k] - m2.probs[j]).abs() <= 1e-12);
        }
        prop_assert_eq!(shoes_m1(&sp.swapped()), m1);
    }

    #[test]
    fn equal_sides_are_swap_invariant(d in dist(7)) {
        let sp = ShoePair::new(d.clone(), d).unwrap();
        prop_assert_eq!(shoes_m2_exact(&sp.swapped()).unwrap(), shoes_m2_exact(&sp).unwrap());
    }
}

#[test]
fn uniform_shoes_have_no_discrepancy() {
    for m in 1..=10 {
        let u = Distribution::uniform(m).unwrap();
        let r =
            shoes_discrepancy(&ShoePair::new(u.clone(), u).unwrap(), true, 0, RngSeed(0)).unwrap();
        assert!(r.exact && r.value < 1e-12, "m={m} {}", r.value);
    }
}
