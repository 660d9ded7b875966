use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::brauer::{class_representatives, fingerprint, Fingerprint};
use super::meataxe::composition_factors;
use super::MatrixRep;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::partition::Partition;
use crate::permrep::{generators, Basis};
use crate::prime::Prime;

/// Standard polytabloids of S^λ inside M(λ) and their Gram matrix.
#[derive(Debug, Clone, Serialize)]
pub struct SpechtData {
    pub lambda: Partition,
    /// Standard tableaux as rows of entries 1..=n.
    pub tableaux: Vec<Vec<Vec<usize>>>,
    /// Polytabloids as sparse (basis index, coefficient) lists, sorted by index.
    pub vectors: Vec<Vec<(usize, i64)>>,
    pub gram: Vec<Vec<i64>>,
    #[serde(skip)]
    leading: Vec<usize>,
}

/// Standard Young tableaux of shape λ, entries 1..=n, rows listed top down.
pub fn standard_tableaux(lam: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(k: usize, n: usize, shape: &[usize], t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k > n {
            out.push(t.clone());
            return;
        }
        for i in 0..shape.len() {
            let len = t[i].len();
            if len < shape[i] && (i == 0 || t[i - 1].len() > len) {
                t[i].push(k);
                rec(k + 1, n, shape, t, out);
                t[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, lam.size(), lam.parts(), &mut vec![Vec::new(); lam.len()], &mut out);
    out
}

fn permutations_with_sign(h: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..h).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, sign: &mut i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k <= 1 {
            out.push((cur.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, cur, sign, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
            *sign = -*sign;
        }
        heap(k - 1, cur, sign, out);
    }
    let mut sign = 1;
    heap(h, &mut cur, &mut sign, &mut out);
    out
}

fn polytabloid(t: &[Vec<usize>], lam: &Partition, basis: &Basis) -> Vec<(usize, i64)> {
    let n = lam.size();
    let ncols = lam.first();
    let columns: Vec<Vec<usize>> =
        (0..ncols).map(|j| t.iter().take_while(|row| row.len() > j).map(|row| row[j] - 1).collect()).collect();
    let perms: Vec<Vec<(Vec<usize>, i64)>> = columns.iter().map(|col| permutations_with_sign(col.len())).collect();
    let mut word = vec![0u8; n];
    for (r, row) in t.iter().enumerate() {
        for &e in row {
            word[e - 1] = r as u8;
        }
    }
    let mut out: Vec<(usize, i64)> = Vec::new();
    let mut idx = vec![0usize; ncols];
    loop {
        let mut sign = 1;
        for (j, col) in columns.iter().enumerate() {
            let (pi, sg) = &perms[j][idx[j]];
            sign *= sg;
            // entry col[pi[r]] moves to row r
            for (r, &src) in pi.iter().enumerate() {
                word[col[src]] = r as u8;
            }
        }
        out.push((basis.rank(&word), sign));
        let mut j = 0;
        loop {
            if j == ncols {
                out.sort_unstable();
                return out;
            }
            idx[j] += 1;
            if idx[j] < perms[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn sparse_dot(a: &[(usize, i64)], b: &[(usize, i64)]) -> i64 {
    let (mut i, mut j, mut acc) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Standard polytabloids e_T = Σ_{σ ∈ C_T} sgn(σ)·{σT} and their Gram matrix.
pub fn specht_basis(lam: &Partition) -> Result<SpechtData> {
    let basis = Basis::new(lam)?;
    let tableaux = standard_tableaux(lam);
    let vectors: Vec<Vec<(usize, i64)>> = tableaux.iter().map(|t| polytabloid(t, lam, &basis)).collect();
    let leading = tableaux
        .iter()
        .map(|t| {
            let mut word = vec![0u8; lam.size()];
            for (r, row) in t.iter().enumerate() {
                for &e in row {
                    word[e - 1] = r as u8;
                }
            }
            basis.rank(&word)
        })
        .collect();
    let gram = vectors.iter().map(|a| vectors.iter().map(|b| sparse_dot(a, b)).collect()).collect();
    Ok(SpechtData { lambda: lam.clone(), tableaux, vectors, gram, leading })
}

impl SpechtData {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn gram_mod(&self, p: Prime) -> FpMatrix {
        let rows = self.gram.iter().map(|r| r.iter().map(|&x| p.reduce_i64(x)).collect()).collect();
        FpMatrix::from_rows(p, self.dim(), rows)
    }
}

/// dim D^λ over F_p, the rank of the Gram matrix of S^λ.
pub fn irreducible_dim(lam: &Partition, p: Prime) -> Result<usize> {
    Ok(specht_basis(lam)?.gram_mod(p).rank())
}

/// S^λ over F_p in the standard polytabloid basis.
pub fn specht_rep(lam: &Partition, p: Prime) -> Result<MatrixRep> {
    let data = specht_basis(lam)?;
    specht_rep_from(&data, p)
}

fn specht_rep_from(data: &SpechtData, p: Prime) -> Result<MatrixRep> {
    let basis = Basis::new(&data.lambda)?;
    let k = data.dim();
    let n = data.lambda.size();
    let position: HashMap<usize, usize> = data.leading.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let restrict = |v: &[(usize, i64)]| {
        let mut row = vec![0u32; k];
        for &(b, x) in v {
            if let Some(&i) = position.get(&b) {
                row[i] = p.add(row[i], p.reduce_i64(x));
            }
        }
        row
    };
    // each standard tabloid {T} occurs in e_T and the leading block is unitriangular
    let pj = FpMatrix::from_rows(p, k, data.vectors.iter().map(|v| restrict(v)).collect());
    let pinv = pj.inverse().ok_or_else(|| Error::Precondition("polytabloid leading block is singular".into()))?;
    let (s, c) = generators(n);
    let mut scratch = Vec::new();
    let mut act = |g: &[usize]| {
        let rows = data
            .vectors
            .iter()
            .map(|v| {
                let moved: Vec<(usize, i64)> = v.iter().map(|&(b, x)| (basis.act(g, b, &mut scratch), x)).collect();
                restrict(&moved)
            })
            .collect();
        FpMatrix::from_rows(p, k, rows).mul(&pinv)
    };
    let ms = act(&s);
    let mc = act(&c);
    MatrixRep::new(n, ms, mc)
}

/// D^λ = S^λ / (S^λ ∩ S^λ⊥) over F_p; zero-dimensional when λ is p-singular.
pub fn irreducible_rep(lam: &Partition, p: Prime) -> Result<MatrixRep> {
    let data = specht_basis(lam)?;
    let rep = specht_rep_from(&data, p)?;
    let radical = Subspace::from_rows(p, data.dim(), data.gram_mod(p).left_kernel());
    Ok(rep.subquotient(&radical).1)
}

type CandidateKey = (usize, usize, u32, usize);

fn candidate_cache() -> &'static Mutex<HashMap<CandidateKey, Fingerprint>> {
    static CACHE: OnceLock<Mutex<HashMap<CandidateKey, Fingerprint>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn two_row(n: usize, j: usize) -> Partition {
    Partition::new(if j == 0 { vec![n] } else { vec![n - j, j] }).expect("two-row partition")
}

/// Multiplicities [S^(n-m,m) : D^(n-j,j)] for j = 0..=m, from a MeatAxe chop
/// of the Specht module with factors matched by Brauer-character fingerprints.
pub fn two_row_decomposition(n: usize, m: usize, p: Prime, seed: u64) -> Result<Vec<usize>> {
    if 2 * m > n {
        return Err(Error::Precondition(format!("two-row shape needs m <= n/2, got n = {n}, m = {m}")));
    }
    let rep = specht_rep(&two_row(n, m), p)?;
    let factors = composition_factors(&rep, seed)?;
    'lengths: for max_len in [4usize, 6, 8] {
        let classes = class_representatives(n, p, max_len);
        let mut candidates: Vec<(usize, Fingerprint)> = Vec::new();
        for j in 0..=m {
            let lam = two_row(n, j);
            if !lam.is_p_regular(p) {
                continue;
            }
            let key = (n, j, p.get(), max_len);
            let cached = candidate_cache().lock().unwrap().get(&key).cloned();
            let fp = match cached {
                Some(fp) => fp,
                None => {
                    let fp = fingerprint(&irreducible_rep(&lam, p)?, &classes);
                    candidate_cache().lock().unwrap().insert(key, fp.clone());
                    fp
                }
            };
            if candidates.iter().any(|(_, other)| *other == fp) {
                continue 'lengths;
            }
            candidates.push((j, fp));
        }
        let mut mult = vec![0usize; m + 1];
        for f in &factors {
            let fp = fingerprint(f, &classes);
            let Some((j, _)) = candidates.iter().find(|(_, c)| *c == fp) else {
                return Err(Error::Unidentified(format!("factor of dimension {} matches no D^(n-j,j)", f.dim())));
            };
            mult[*j] += 1;
        }
        return Ok(mult);
    }
    Err(Error::Unidentified("candidate fingerprints collide".into()))
}
