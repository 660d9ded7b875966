use std::collections::BTreeMap;

use stablerep::{detect_period, instantiate_coker, IvPoly, Partition, Presentation, Prime, StableHom, StableObject, StableTabloid};

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

/// Maps [M(1^r)] -> [M(1^g)] given as (tabloid index, constant) terms.
fn presentation(r: usize, g: usize, terms: &[(usize, i64)]) -> Presentation {
    let (src, dst) = (Partition::column(r), Partition::column(g));
    let all = StableTabloid::enumerate(&src, &dst);
    let mut entry = BTreeMap::new();
    for &(k, c) in terms {
        entry.insert(all[k % all.len()].clone(), IvPoly::constant(c));
    }
    let map = StableHom::new(StableObject::single(src), StableObject::single(dst), vec![vec![entry]]).unwrap();
    Presentation::new(map).unwrap()
}

fn samples() -> Vec<Presentation> {
    vec![
        presentation(0, 1, &[(0, 1)]),
        presentation(1, 1, &[(0, 1), (1, 1)]),
        presentation(1, 2, &[(0, 1), (2, -1)]),
        presentation(2, 1, &[(1, 1), (3, 2)]),
        presentation(0, 2, &[(0, 3)]),
        presentation(1, 1, &[(1, 1)]),
    ]
}

#[test]
fn invariants_are_eventually_periodic() {
    for pres in samples() {
        for p in [2u32, 3] {
            let from = pres.threshold().max(1);
            let inv: Vec<i64> =
                (from..=14).map(|n| instantiate_coker(&pres, n, prime(p)).unwrap().invariants as i64).collect();
            let found = detect_period(&inv, prime(p)).unwrap().expect("a period");
            assert!(found.period <= (p as u64).pow(2), "{inv:?} mod {p}");
        }
    }
}

#[test]
fn dimensions_match_characteristic_zero_where_flat() {
    // a large prime stands in for characteristic zero; where the mod-p dimension
    // agrees the cokernel has no p-torsion, and the dimensions follow one polynomial
    let big = prime(1_000_003);
    for pres in samples() {
        let from = pres.threshold().max(1) + 2;
        let dims: Vec<i64> = (from..=12).map(|n| instantiate_coker(&pres, n, big).unwrap().dim as i64).collect();
        let poly = IvPoly::from_values(from as i64, &dims[..4]);
        for (k, &d) in dims.iter().enumerate() {
            assert_eq!(poly.evaluate((from + k) as i64), d.into());
        }
        for p in [2u32, 3] {
            for n in from..=12 {
                let dp = instantiate_coker(&pres, n, prime(p)).unwrap().dim as i64;
                assert!(dp >= dims[n - from], "torsion can only add to the cokernel");
            }
        }
    }
    // coker(sum) is flat at every n
    let sum = &samples()[0];
    for n in 3..=12 {
        assert_eq!(instantiate_coker(sum, n, prime(2)).unwrap().dim, n - 1);
    }
}
