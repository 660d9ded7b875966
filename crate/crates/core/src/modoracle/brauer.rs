use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::MatrixRep;
use crate::linalg::FpMatrix;
use crate::partition::Partition;
use crate::permrep::generators;
use crate::prime::Prime;

/// A p-regular conjugacy class of S_n, reached by a word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRep {
    /// Letters: 0 = (1 2), 1 = (1 2 … n).
    pub word: Vec<u8>,
    pub cycle_type: Partition,
    pub order: u64,
}

/// Dimension and Brauer character values on a fixed list of classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub values: Vec<i64>,
}

fn word_permutation(word: &[u8], n: usize) -> Vec<usize> {
    let (s, c) = generators(n);
    let mut perm: Vec<usize> = (0..n).collect();
    for &letter in word {
        let g = if letter == 0 { &s } else { &c };
        perm.iter_mut().for_each(|x| *x = g[*x]);
    }
    perm
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Non-identity p-regular classes reachable by words of length ≤ `max_len`,
/// one per cycle type, shortest word first.
pub fn class_representatives(n: usize, p: Prime, max_len: usize) -> Vec<ClassRep> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for letter in [0u8, 1] {
                let mut word = w.clone();
                word.push(letter);
                let ct = cycle_type(&word_permutation(&word, n));
                let order = ct.iter().fold(1u64, |acc, &l| acc / gcd(acc, l as u64) * l as u64);
                if order > 1 && order % p.get() as u64 != 0 {
                    let key = Partition::from_unsorted(ct.clone());
                    if seen.insert(key.parts().to_vec()) {
                        out.push(ClassRep { word: word.clone(), cycle_type: key, order });
                    }
                }
                next.push(word);
            }
        }
        layer = next;
    }
    out
}

fn poly_divmod(a: &[u32], b: &[u32], p: Prime) -> (Vec<u32>, Vec<u32>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = p.inv(b[db]);
    if rem.len() <= db {
        return (vec![0], rem);
    }
    let mut quot = vec![0u32; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let f = p.mul(rem[i], lead_inv);
        if f == 0 {
            continue;
        }
        quot[i - db] = f;
        for (j, &bj) in b.iter().enumerate() {
            let k = i - db + j;
            rem[k] = p.sub(rem[k], p.mul(f, bj));
        }
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

fn cyclotomic(e: u64, cache: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(c) = cache.get(&e) {
        return c.clone();
    }
    // x^e - 1 divided by Φ_d for proper divisors d
    let mut poly = vec![0i64; e as usize + 1];
    poly[0] = -1;
    poly[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let phi = cyclotomic(d, cache);
            let dd = phi.len() - 1;
            let mut quot = vec![0i64; poly.len() - dd];
            for i in (dd..poly.len()).rev() {
                let f = poly[i];
                quot[i - dd] = f;
                for (j, &c) in phi.iter().enumerate() {
                    poly[i - dd + j] -= f * c;
                }
            }
            poly = quot;
        }
    }
    cache.insert(e, poly.clone());
    poly
}

fn mobius(mut e: u64) -> i64 {
    let mut out = 1;
    let mut d = 2;
    while d * d <= e {
        if e.is_multiple_of(d) {
            e /= d;
            if e.is_multiple_of(d) {
                return 0;
            }
            out = -out;
        }
        d += 1;
    }
    if e > 1 {
        out = -out;
    }
    out
}

/// Brauer character value of a matrix of p-regular order `order`.
///
/// Its characteristic polynomial is Π Φ_e^{m_e} over e | order, and the
/// primitive e-th roots of unity sum to μ(e).
pub fn brauer_value(m: &FpMatrix, order: u64) -> i64 {
    let p = m.prime();
    let mut poly = m.charpoly();
    let mut cache = HashMap::new();
    let mut value = 0;
    for e in (1..=order).filter(|e| order.is_multiple_of(*e)) {
        let phi: Vec<u32> = cyclotomic(e, &mut cache).into_iter().map(|c| p.reduce_i64(c)).collect();
        loop {
            let (q, r) = poly_divmod(&poly, &phi, p);
            if poly.len() < phi.len() || r.iter().any(|&x| x != 0) {
                break;
            }
            poly = q;
            value += mobius(e);
        }
    }
    assert!(poly == [1], "characteristic polynomial of an element of order {order} did not split into cyclotomic factors");
    value
}

/// Dimension plus Brauer character values on `classes`.
pub fn fingerprint(rep: &MatrixRep, classes: &[ClassRep]) -> Fingerprint {
    let mut prefix: HashMap<Vec<u8>, FpMatrix> = HashMap::new();
    let values = if rep.dim() == 0 {
        vec![0; classes.len()]
    } else {
        classes
            .iter()
            .map(|cls| {
                let mut m = FpMatrix::identity(rep.prime(), rep.dim());
                for k in 1..=cls.word.len() {
                    let key = cls.word[..k].to_vec();
                    m = match prefix.get(&key) {
                        Some(known) => known.clone(),
                        None => {
                            let g = if cls.word[k - 1] == 0 { rep.transposition() } else { rep.cycle() };
                            let next = m.mul(g);
                            prefix.insert(key, next.clone());
                            next
                        }
                    };
                }
                brauer_value(&m, cls.order)
            })
            .collect()
    };
    Fingerprint { dim: rep.dim(), values }
}
