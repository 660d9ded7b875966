use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use stablerep::ivpoly::binomial_mod_p;
use stablerep::permrep::{build_cl_matrix, express_in_cl_basis};
use stablerep::stablecat::{
    check_perm_equivalence, compose, compose_generic, composable_pairs, degree_bound, dualize, evaluate_entry,
    sampling_base,
};
use stablerep::{IvPoly, PAdicResidue, Partition, Prime, StableHom, StableObject, StableTabloid, Tabloid};

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = IvPoly> {
    (-30i64..30, proptest::collection::vec(-40i64..40, 0..=max_deg + 1))
        .prop_map(|(offset, d)| IvPoly::from_diffs(offset, d.into_iter().map(BigInt::from).collect()))
}

fn partition_strategy(max_size: usize) -> impl Strategy<Value = Partition> {
    let all = Partition::all_up_to(max_size);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn reduce(v: &BigInt, p: u32) -> u32 {
    let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
    u32::try_from(r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interpolation_round_trip(f in poly_strategy(8), base in -20i64..20) {
        let values: Vec<BigInt> = (0..=f.degree() as i64).map(|k| f.evaluate(base + k)).collect();
        prop_assert_eq!(IvPoly::from_values(base, &values), f);
    }

    #[test]
    fn ring_laws_are_pointwise(f in poly_strategy(5), g in poly_strategy(5)) {
        let d = (f.degree() + g.degree()) as i64;
        let (sum, prod, diff) = (f.add(&g), f.mul(&g), f.sub(&g));
        for n in -3..2 * d + 3 {
            let (a, b) = (f.evaluate(n), g.evaluate(n));
            prop_assert_eq!(sum.evaluate(n), &a + &b);
            prop_assert_eq!(diff.evaluate(n), &a - &b);
            prop_assert_eq!(prod.evaluate(n), &a * &b);
        }
    }

    #[test]
    fn period_of_reduction(f in poly_strategy(8), pi in 0usize..3, n in 0i64..200) {
        let p = [2u32, 3, 5][pi];
        let period = (p as i64).pow(prime(p).digits(f.degree() as u64));
        prop_assert_eq!(reduce(&f.evaluate(n + period), p), reduce(&f.evaluate(n), p));
        prop_assert_eq!(f.period_mod_p(prime(p)) as i64 <= period, true);
    }

    #[test]
    fn padic_evaluation_matches_integers(f in poly_strategy(6), pi in 0usize..3, extra in 0u32..2, seed in 0u64..1000) {
        let p = [2u32, 3, 5][pi];
        let q = prime(p);
        let exp = q.digits(f.degree() as u64) + extra;
        let modulus = q.power(exp).unwrap();
        let t = PAdicResidue::new(q, exp, seed % modulus).unwrap();
        let v = f.eval_at_padic(&t).unwrap();
        for k in 0..5i64 {
            let n = t.residue() as i64 + (k - 2) * modulus as i64;
            prop_assert_eq!(v, reduce(&f.evaluate(n), p));
            prop_assert_eq!(v, f.evaluate_mod(n, q));
        }
    }

    #[test]
    fn lucas_matches_pascal(n in 0u64..400, m in 0u64..400, pi in 0usize..3) {
        let p = [2u32, 3, 5][pi];
        let exact = stablerep::ivpoly::binomial(&BigInt::from(n), m as usize);
        prop_assert_eq!(binomial_mod_p(n, m, prime(p)), reduce(&exact, p));
    }

    #[test]
    fn conjugation_is_an_involution(lam in partition_strategy(12)) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
        prop_assert_eq!(lam.conjugate().size(), lam.size());
    }

    #[test]
    fn padding_prepends_a_row(lam in partition_strategy(6), extra in 0usize..8) {
        // the first row is empty, and dropped, only at n = 0
        let n = lam.pad_threshold().max(1) + extra;
        let padded = lam.pad(n).unwrap();
        prop_assert_eq!(padded.size(), n);
        prop_assert_eq!(&padded.parts()[1..], lam.parts());
    }

    #[test]
    fn stable_hom_dimension_is_symmetric(mu in partition_strategy(4), lam in partition_strategy(4)) {
        prop_assert_eq!(StableTabloid::enumerate(&mu, &lam).len(), StableTabloid::enumerate(&lam, &mu).len());
    }

    #[test]
    fn instantiation_is_injective(mu in partition_strategy(3), lam in partition_strategy(3), extra in 0usize..6) {
        let all = StableTabloid::enumerate(&mu, &lam);
        let n = all.iter().map(StableTabloid::threshold).max().unwrap_or(0) + extra;
        let mut full: Vec<Tabloid> = all.iter().map(|t| t.instantiate(n).unwrap()).collect();
        full.sort();
        full.dedup();
        prop_assert_eq!(full.len(), all.len());
    }
}

#[test]
fn cl_maps_express_themselves_and_their_duals() {
    for mu in Partition::all_up_to(2) {
        for lam in Partition::all_up_to(2) {
            for tau in StableTabloid::enumerate(&mu, &lam) {
                for n in tau.threshold().max(1)..=8 {
                    let full = tau.instantiate(n).unwrap();
                    let m = build_cl_matrix(&full, None).unwrap();
                    assert_eq!(express_in_cl_basis(&m).unwrap(), BTreeMap::from([(full.clone(), 1)]), "{tau} at {n}");
                    let dual = express_in_cl_basis(&m.transpose()).unwrap();
                    assert_eq!(dual, BTreeMap::from([(full.transpose(), 1)]), "{tau} at {n}");
                    assert_eq!(full.transpose(), tau.transpose_dual().instantiate(n).unwrap());
                }
            }
        }
    }
}

#[test]
fn specht_vectors_are_killed_by_maps_to_dominating_shapes() {
    use stablerep::modoracle::specht_basis;
    for n in 2..=6 {
        for lam in Partition::all_of_size(n) {
            let data = specht_basis(&lam).unwrap();
            for mu in Partition::all_of_size(n) {
                if mu == lam || lam.dominance_cmp(&mu).unwrap() != stablerep::Comparison::LessOrEqual {
                    continue;
                }
                for tau in Tabloid::enumerate(&lam, &mu) {
                    let m = build_cl_matrix(&tau, None).unwrap();
                    for v in &data.vectors {
                        let mut image = vec![0i64; m.nrows()];
                        for &(j, c) in v {
                            for &(i, x) in m.column(j) {
                                image[i as usize] += c * x;
                            }
                        }
                        assert!(image.iter().all(|&x| x == 0), "{lam} -> {mu}");
                    }
                }
            }
        }
    }
}

#[test]
fn interpolation_holds_far_from_the_samples() {
    for (a, b) in composable_pairs(3).iter() {
        let entry = compose_generic(a, b).unwrap();
        let n = sampling_base(a, b) + 3 * degree_bound(a, b);
        let want: BTreeMap<_, _> = stablerep::permrep::structure_constants(a, b, n)
            .unwrap()
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .collect();
        assert_eq!(evaluate_entry(&entry, n as i64).unwrap(), want, "{a} then {b} at {n}");
    }
}

#[test]
fn mod_p_tables_are_periodic() {
    for p in [2u32, 3] {
        let q = prime(p);
        let step = (p as usize).pow(q.digits(3));
        for n in 7..=14 {
            assert!(check_perm_equivalence(3, q, n, n + step, false).unwrap().agree, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn dualizing_reverses_composition() {
    let obj = StableObject::new(vec![Partition::new(vec![1]).unwrap(), Partition::empty(), Partition::new(vec![2]).unwrap()]);
    let mut f = StableHom::zero(obj.clone(), obj.clone());
    let mut g = StableHom::zero(obj.clone(), obj.clone());
    for (s, a) in obj.summands.iter().enumerate() {
        for (t, b) in obj.summands.iter().enumerate() {
            for (k, tau) in StableTabloid::enumerate(a, b).into_iter().enumerate() {
                let mut ef = vec![vec![BTreeMap::new(); obj.len()]; obj.len()];
                let mut eg = ef.clone();
                ef[t][s].insert(tau.clone(), IvPoly::constant(k as i64 + 1));
                eg[t][s].insert(tau, IvPoly::linear(k as i64 - s as i64));
                f = f.add(&StableHom::new(obj.clone(), obj.clone(), ef).unwrap()).unwrap();
                g = g.add(&StableHom::new(obj.clone(), obj.clone(), eg).unwrap()).unwrap();
            }
        }
    }
    let lhs = dualize(&compose(&f, &g).unwrap());
    let rhs = compose(&dualize(&g), &dualize(&f)).unwrap();
    assert_eq!(lhs, rhs);
}
