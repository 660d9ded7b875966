//! Concrete permutation modules M(λ) on the ordered set-partition basis.
//!
//! A set-partition of {0..n} with block sizes λ is stored as a label word:
//! `word[e]` is the index of the block containing `e`. Bases are ordered
//! lexicographically on words, and indices are computed by ranking the word
//! among the multiset permutations of its content, so no lookup table is kept.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::partition::{Composition, Partition};
use crate::prime::Prime;
use crate::tabloid::{contingency_tables, instantiation_threshold, StableTabloid, Tabloid};

pub const DEFAULT_BASIS_BUDGET: usize = 5_000_000;

static BASIS_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_BASIS_BUDGET);

/// Largest basis this process will enumerate.
pub fn basis_budget() -> usize {
    BASIS_BUDGET.load(Ordering::Relaxed)
}

pub fn set_basis_budget(budget: usize) {
    BASIS_BUDGET.store(budget, Ordering::Relaxed);
}

/// Fails when `dim M(shape)` exceeds the basis budget.
pub fn check_budget(shape: &Partition) -> Result<usize> {
    let dim = shape.perm_module_dim();
    let budget = basis_budget();
    match dim.to_usize() {
        Some(d) if d <= budget => Ok(d),
        _ => Err(Error::OverBudget { dim: dim.to_u128().unwrap_or(u128::MAX), budget }),
    }
}

/// An ordered set-partition `[n] = A_1 ∪ A_2 ∪ ...`, blocks listed in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_word(word: &[u8], blocks: usize) -> Self {
        let mut out = vec![Vec::new(); blocks];
        for (e, &b) in word.iter().enumerate() {
            out[b as usize].push(e + 1);
        }
        SetPartition { blocks: out }
    }
}

#[derive(Debug, Clone)]
pub struct Basis {
    shape: Partition,
    n: usize,
    words: Vec<u8>,
}

impl Basis {
    pub fn new(shape: &Partition) -> Result<Self> {
        let dim = check_budget(shape)?;
        let n = shape.size();
        let mut word: Vec<u8> = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i as u8, k))
            .collect();
        let mut words = Vec::with_capacity(dim * n);
        loop {
            words.extend_from_slice(&word);
            if !next_permutation(&mut word) {
                break;
            }
        }
        debug_assert_eq!(words.len(), dim * n);
        Ok(Basis { shape: shape.clone(), n, words })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            self.words.len() / self.n
        }
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn set_partition(&self, i: usize) -> SetPartition {
        SetPartition::from_word(self.word(i), self.shape.len())
    }

    /// Index of a word with this basis' content.
    pub fn rank(&self, word: &[u8]) -> usize {
        rank_word(word, self.shape.parts())
    }

    /// Index of σ·B, where (σ·B)_j = σ(B_j).
    pub fn act(&self, perm: &[usize], i: usize, scratch: &mut Vec<u8>) -> usize {
        scratch.clear();
        scratch.resize(self.n, 0);
        for (e, &b) in self.word(i).iter().enumerate() {
            scratch[perm[e]] = b;
        }
        self.rank(scratch)
    }

    /// The basis permutation induced by σ.
    pub fn permutation(&self, perm: &[usize]) -> Vec<usize> {
        let mut scratch = Vec::new();
        (0..self.dim()).map(|i| self.act(perm, i, &mut scratch)).collect()
    }
}

fn next_permutation(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let Some(i) = (0..w.len() - 1).rev().find(|&i| w[i] < w[i + 1]) else { return false };
    let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

fn rank_word(word: &[u8], content: &[usize]) -> usize {
    let mut counts: Vec<u128> = content.iter().map(|&c| c as u128).collect();
    let mut remaining = word.len() as u128;
    let mut total = crate::tabloid::multinomial(content);
    let mut rank = 0u128;
    for &w in word {
        let w = w as usize;
        for c in counts.iter().take(w) {
            if *c > 0 {
                rank += total * c / remaining;
            }
        }
        total = total * counts[w] / remaining;
        counts[w] -= 1;
        remaining -= 1;
    }
    rank as usize
}

/// The transposition (0 1) and the n-cycle e ↦ e+1, as images of 0..n.
pub fn generators(n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut s: Vec<usize> = (0..n).collect();
    if n >= 2 {
        s.swap(0, 1);
    }
    let c = (0..n).map(|e| (e + 1) % n.max(1)).collect();
    (s, c)
}

/// |A_i ∩ B_j| for label words a (shape rows) and b (type columns).
pub fn relative_position(a: &[u8], b: &[u8], rows: usize, cols: usize) -> Vec<Vec<usize>> {
    let mut counts = vec![vec![0usize; cols]; rows];
    for (&x, &y) in a.iter().zip(b) {
        counts[x as usize][y as usize] += 1;
    }
    counts
}

/// The canonical first basis element: labels in increasing blocks.
fn canonical_word(shape: &Partition) -> Vec<u8> {
    shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i as u8, k))
        .collect()
}

/// Calls `f` with every word B in relative position `counts` to the word `a`.
fn for_each_in_position(a: &[u8], counts: &[Vec<usize>], mut f: impl FnMut(&[u8])) {
    let rows = counts.len();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for (e, &x) in a.iter().enumerate() {
        blocks[x as usize].push(e);
    }
    let seqs: Vec<Vec<Vec<u8>>> = counts
        .iter()
        .map(|row| {
            let mut w: Vec<u8> = row.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j as u8, k)).collect();
            let mut all = vec![w.clone()];
            while next_permutation(&mut w) {
                all.push(w.clone());
            }
            all
        })
        .collect();
    let mut b = vec![0u8; a.len()];
    let mut idx = vec![0usize; rows];
    if seqs.iter().any(|s| s.is_empty()) {
        return;
    }
    loop {
        for i in 0..rows {
            for (&e, &l) in blocks[i].iter().zip(&seqs[i][idx[i]]) {
                b[e] = l;
            }
        }
        f(&b);
        let mut i = 0;
        loop {
            if i == rows {
                return;
            }
            idx[i] += 1;
            if idx[i] < seqs[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// A sparse matrix of a map M(source) → M(target), columns indexed by the
/// source basis and rows by the target basis. Entries are integers, reduced
/// into [0, p) when a modulus is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteMap {
    source: Partition,
    target: Partition,
    modulus: Option<Prime>,
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl ConcreteMap {
    pub fn from_columns(
        source: Partition,
        target: Partition,
        modulus: Option<Prime>,
        rows: usize,
        cols: Vec<Vec<(u32, i64)>>,
    ) -> Self {
        let mut m = ConcreteMap { source, target, modulus, rows, cols };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        let modulus = self.modulus;
        for col in self.cols.iter_mut() {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            if let Some(p) = modulus {
                merged.iter_mut().for_each(|e| e.1 = p.reduce_i64(e.1) as i64);
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
    }

    pub fn source(&self) -> &Partition {
        &self.source
    }

    pub fn target(&self) -> &Partition {
        &self.target
    }

    pub fn modulus(&self) -> Option<Prime> {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |&(r, _)| r)
            .map(|k| self.cols[j][k].1)
            .unwrap_or(0)
    }

    pub fn reduce(&self, p: Prime) -> ConcreteMap {
        ConcreteMap::from_columns(self.source.clone(), self.target.clone(), Some(p), self.rows, self.cols.clone())
    }

    pub fn transpose(&self) -> ConcreteMap {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i as usize].push((j as u32, v));
            }
        }
        ConcreteMap::from_columns(self.target.clone(), self.source.clone(), self.modulus, self.cols.len(), cols)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ConcreteMap) -> Result<ConcreteMap> {
        if self.target != next.source || self.rows != next.cols.len() {
            return Err(Error::ShapeMismatch(format!("cannot compose {} -> {} with {} -> {}", self.source, self.target, next.source, next.target)));
        }
        let modulus = self.modulus.or(next.modulus);
        let mut acc = vec![0i64; next.rows];
        let mut touched: Vec<u32> = Vec::new();
        let cols = self
            .cols
            .iter()
            .map(|col| {
                for &(k, v) in col {
                    for &(i, w) in &next.cols[k as usize] {
                        if acc[i as usize] == 0 {
                            touched.push(i);
                        }
                        acc[i as usize] += v * w;
                    }
                }
                let out: Vec<(u32, i64)> = touched.iter().map(|&i| (i, acc[i as usize])).collect();
                for &i in &touched {
                    acc[i as usize] = 0;
                }
                touched.clear();
                out
            })
            .collect();
        Ok(ConcreteMap::from_columns(self.source.clone(), next.target.clone(), modulus, next.rows, cols))
    }

    /// Coordinate-list dump, one `row col value` triple per line.
    pub fn to_coo(&self) -> String {
        let mut s = String::new();
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                s.push_str(&format!("{i} {j} {v}\n"));
            }
        }
        s
    }

    pub fn to_dense(&self, p: Prime) -> FpMatrix {
        // rows of the dense matrix are source vectors: row j = image of basis vector j
        let mut m = FpMatrix::zeros(p, self.cols.len(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m.set(j, i as usize, p.reduce_i64(v));
            }
        }
        m
    }
}

/// The Carter–Lusztig map h^τ : M(shape) → M(type): a set-partition A goes to
/// the sum of all B with |A_i ∩ B_j| = τ_ij.
pub fn build_cl_matrix(tau: &Tabloid, modulus: Option<Prime>) -> Result<ConcreteMap> {
    let source = Basis::new(tau.shape())?;
    let target = Basis::new(tau.ty())?;
    let cols = (0..source.dim())
        .map(|j| {
            let mut col = Vec::new();
            for_each_in_position(source.word(j), tau.counts(), |b| col.push((target.rank(b) as u32, 1i64)));
            col
        })
        .collect();
    Ok(ConcreteMap::from_columns(tau.shape().clone(), tau.ty().clone(), modulus, target.dim(), cols))
}

/// Coefficients c_τ with m = Σ c_τ h^τ.
///
/// Coefficients are read off the column of the first basis element, grouped
/// by relative position; every column is then checked against the expansion.
pub fn express_in_cl_basis(m: &ConcreteMap) -> Result<BTreeMap<Tabloid, i64>> {
    let source = Basis::new(m.source())?;
    let target = Basis::new(m.target())?;
    if source.dim() != m.ncols() || target.dim() != m.nrows() {
        return Err(Error::ShapeMismatch("matrix size does not match its shapes".into()));
    }
    let (rows, cols) = (m.source().len(), m.target().len());
    let a = source.word(0);
    let mut coef: HashMap<Vec<Vec<usize>>, i64> = HashMap::new();
    for b in 0..target.dim() {
        let pos = relative_position(a, target.word(b), rows, cols);
        let v = m.entry(b, 0);
        match coef.get(&pos) {
            Some(&c) if c != v => {
                return Err(Error::NotEquivariant(format!("entries {c} and {v} in one relative position {pos:?}")))
            }
            Some(_) => {}
            None => {
                coef.insert(pos, v);
            }
        }
    }
    coef.retain(|_, v| *v != 0);
    let out: BTreeMap<Tabloid, i64> = coef
        .iter()
        .map(|(counts, &v)| Ok((Tabloid::new(m.source().clone(), m.target().clone(), counts.clone())?, v)))
        .collect::<Result<_>>()?;
    // reconstruction check, column by column
    let expected_nnz: u128 = out.keys().map(Tabloid::orbit_column_count).sum();
    for j in 0..source.dim() {
        let col = m.column(j);
        if col.len() as u128 != expected_nnz {
            return Err(Error::NotEquivariant(format!("column {j} has {} nonzeros, expected {expected_nnz}", col.len())));
        }
        for &(i, v) in col {
            let pos = relative_position(source.word(j), target.word(i as usize), rows, cols);
            if coef.get(&pos) != Some(&v) {
                return Err(Error::NotEquivariant(format!("column {j} disagrees at row {i}")));
            }
        }
    }
    Ok(out)
}

fn check_composable(alpha: &StableTabloid, beta: &StableTabloid) -> Result<()> {
    if alpha.ty() != beta.shape() {
        return Err(Error::ShapeMismatch(format!(
            "type ({}) of the first map is not the shape ({}) of the second",
            alpha.ty(),
            beta.shape()
        )));
    }
    Ok(())
}

/// Smallest level at which α, β and every stable tabloid μ → ν instantiate.
pub fn composition_threshold(alpha: &StableTabloid, beta: &StableTabloid) -> usize {
    alpha.threshold().max(beta.threshold()).max(instantiation_threshold(alpha.shape(), beta.ty()))
}

fn check_level(alpha: &StableTabloid, beta: &StableTabloid, n: usize) -> Result<()> {
    check_composable(alpha, beta)?;
    let threshold = composition_threshold(alpha, beta);
    if n < threshold {
        return Err(Error::BelowThreshold { n, threshold });
    }
    Ok(())
}

/// Structure constants of f^β_n ∘ f^α_n from the explicit sparse matrices:
/// the product is built and handed to [`express_in_cl_basis`].
pub fn structure_constants_concrete(alpha: &StableTabloid, beta: &StableTabloid, n: usize) -> Result<BTreeMap<StableTabloid, i64>> {
    check_level(alpha, beta, n)?;
    let ha = build_cl_matrix(&alpha.instantiate(n)?, None)?;
    let hb = build_cl_matrix(&beta.instantiate(n)?, None)?;
    let coeffs = express_in_cl_basis(&ha.then(&hb)?)?;
    coeffs.into_iter().map(|(t, v)| Ok((destabilize_at(&t, alpha.shape(), beta.ty())?, v))).collect()
}

fn destabilize_at(t: &Tabloid, mu: &Partition, nu: &Partition) -> Result<StableTabloid> {
    // handles the degenerate level where a padded partition has no first row
    let mut counts = t.counts().to_vec();
    if t.shape().len() == mu.len() {
        counts.insert(0, vec![0; t.ty().len()]);
    }
    if t.ty().len() == nu.len() {
        for row in counts.iter_mut() {
            row.insert(0, 0);
        }
    }
    StableTabloid::new(mu.clone(), nu.clone(), counts[1..].to_vec())
}

/// Structure constants by direct enumeration: for a fixed A and one
/// representative C per target tabloid τ, count the B with pos(A,B) = α and
/// pos(B,C) = β. This is the (C, A) entry of h^β·h^α.
pub fn structure_constants_by_enumeration(
    alpha: &StableTabloid,
    beta: &StableTabloid,
    n: usize,
) -> Result<BTreeMap<StableTabloid, i64>> {
    check_level(alpha, beta, n)?;
    let (mu, nu) = (alpha.shape(), beta.ty());
    let ta = alpha.instantiate(n)?;
    let tb = beta.instantiate(n)?;
    check_budget(ta.ty())?;
    let a = canonical_word(ta.shape());
    let taus = StableTabloid::enumerate(mu, nu);
    let reps: Vec<(Vec<u8>, Tabloid)> = taus
        .iter()
        .map(|tau| {
            let full = tau.instantiate(n)?;
            // fill each block of A with labels in increasing order
            let mut c = Vec::with_capacity(n);
            for row in full.counts() {
                for (j, &k) in row.iter().enumerate() {
                    c.extend(std::iter::repeat_n(j as u8, k));
                }
            }
            Ok((c, full))
        })
        .collect::<Result<_>>()?;
    let (lrows, lcols) = (tb.shape().len(), tb.ty().len());
    let mut counts = vec![0i64; reps.len()];
    for_each_in_position(&a, ta.counts(), |b| {
        for (k, (c, _)) in reps.iter().enumerate() {
            if relative_position(b, c, lrows, lcols) == tb.counts() {
                counts[k] += 1;
            }
        }
    });
    Ok(taus.into_iter().zip(counts).filter(|(_, v)| *v != 0).collect())
}

/// Structure constants by counting three-way contingency tables.
///
/// With A, C fixed in relative position τ, a B is determined by splitting each
/// cell A_i ∩ C_k among the blocks B_j; the counts x_ijk must have margins α,
/// β and τ, and each admissible x contributes Π_ik multinomial(τ_ik; x_i·k).
pub fn structure_constants(alpha: &StableTabloid, beta: &StableTabloid, n: usize) -> Result<BTreeMap<StableTabloid, i64>> {
    check_level(alpha, beta, n)?;
    let ta = alpha.instantiate(n)?;
    let tb = beta.instantiate(n)?;
    let mut out = BTreeMap::new();
    for tau in StableTabloid::enumerate(alpha.shape(), beta.ty()) {
        let tt = tau.instantiate(n)?;
        let v = count_three_way(ta.counts(), tb.counts(), tt.counts())?;
        if v != 0 {
            out.insert(tau, v);
        }
    }
    Ok(out)
}

fn count_three_way(a: &[Vec<usize>], b: &[Vec<usize>], t: &[Vec<usize>]) -> Result<i64> {
    let (ri, rj) = (a.len(), b.len());
    let rk = t.first().map_or(0, Vec::len);
    let mut ra: Vec<Vec<usize>> = a.to_vec();
    let mut rb: Vec<Vec<usize>> = b.to_vec();
    // cells in order, with the large (0,0) cell last
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(ri * rk);
    for i in 0..ri {
        for k in 0..rk {
            if (i, k) != (0, 0) {
                cells.push((i, k));
            }
        }
    }
    if ri > 0 && rk > 0 {
        cells.push((0, 0));
    }
    let mut total: u128 = 0;
    let mut x = vec![0usize; rj];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ci: usize,
        cells: &[(usize, usize)],
        t: &[Vec<usize>],
        ra: &mut [Vec<usize>],
        rb: &mut [Vec<usize>],
        x: &mut [usize],
        weight: u128,
        total: &mut u128,
    ) -> Result<()> {
        if ci == cells.len() {
            if ra.iter().all(|r| r.iter().all(|&v| v == 0)) && rb.iter().all(|r| r.iter().all(|&v| v == 0)) {
                *total = total.checked_add(weight).ok_or(Error::Overflow("structure constant"))?;
            }
            return Ok(());
        }
        let (i, k) = cells[ci];
        split(0, t[i][k], i, k, ci, cells, t, ra, rb, x, weight, total)
    }
    #[allow(clippy::too_many_arguments)]
    fn split(
        j: usize,
        left: usize,
        i: usize,
        k: usize,
        ci: usize,
        cells: &[(usize, usize)],
        t: &[Vec<usize>],
        ra: &mut [Vec<usize>],
        rb: &mut [Vec<usize>],
        x: &mut [usize],
        weight: u128,
        total: &mut u128,
    ) -> Result<()> {
        let rj = x.len();
        if j == rj {
            if left != 0 {
                return Ok(());
            }
            return rec(ci + 1, cells, t, ra, rb, x, weight, total);
        }
        let hi = left.min(ra[i][j]).min(rb[j][k]);
        let lo = if j + 1 == rj { left } else { 0 };
        if lo > hi {
            return Ok(());
        }
        for v in lo..=hi {
            // weight picks up C(left, v) for this part of the multinomial
            let w = weight.checked_mul(binom_u128(left, v)).ok_or(Error::Overflow("structure constant"))?;
            x[j] = v;
            ra[i][j] -= v;
            rb[j][k] -= v;
            split(j + 1, left - v, i, k, ci, cells, t, ra, rb, x, w, total)?;
            ra[i][j] += v;
            rb[j][k] += v;
        }
        x[j] = 0;
        Ok(())
    }
    if rj == 0 {
        // nothing to split: only the empty configuration
        return Ok(i64::from(t.iter().all(|r| r.iter().all(|&v| v == 0))));
    }
    rec(0, &cells, t, &mut ra, &mut rb, &mut x, 1, &mut total)?;
    i64::try_from(total).map_err(|_| Error::Overflow("structure constant"))
}

fn binom_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// M(λp) ⊗ M(μp) = ⊕ M(entries of C) over contingency matrices C with row
/// sums λp and column sums μp.
pub fn tensor_decompose_concrete(lam: &Partition, mu: &Partition) -> Result<Vec<Partition>> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(lam.size(), mu.size()));
    }
    let mut out: Vec<Partition> = contingency_tables(lam.parts(), mu.parts())
        .into_iter()
        .map(|c| Partition::from_unsorted(c.into_iter().flatten().collect()))
        .collect();
    out.sort();
    Ok(out)
}

/// Res^{S_n}_{S_ℓ × S_{n-ℓ}} M(λ(n)) by Mackey: one summand M(μ) ⊠ M(ν) per
/// composition μ̃ ≤ λ(n) of ℓ, with ν̃ = λ(n) - μ̃.
pub fn restrict_decompose(lam: &Partition, ell: usize, n: usize) -> Result<Vec<(Partition, Partition)>> {
    let padded = lam.pad(n)?;
    if ell + lam.size() + lam.first() > n {
        return Err(Error::Precondition(format!("restriction to S_{ell} needs n >= {}", ell + lam.size() + lam.first())));
    }
    Ok(restrict_padded(&padded, ell))
}

/// Mackey decomposition for an arbitrary partition of n.
pub fn restrict_padded(padded: &Partition, ell: usize) -> Vec<(Partition, Partition)> {
    fn rec(i: usize, left: usize, parts: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if i == parts.len() {
            if left == 0 {
                out.push(Composition(cur.clone()));
            }
            return;
        }
        for v in 0..=left.min(parts[i]) {
            cur.push(v);
            rec(i + 1, left - v, parts, cur, out);
            cur.pop();
        }
    }
    let mut comps = Vec::new();
    rec(0, ell, padded.parts(), &mut Vec::new(), &mut comps);
    let mut out: Vec<(Partition, Partition)> = comps
        .into_iter()
        .map(|c| {
            let rest = Composition(padded.parts().iter().zip(&c.0).map(|(a, b)| a - b).collect());
            (c.to_partition(), rest.to_partition())
        })
        .collect();
    out.sort();
    out
}

/// Ind(M(μ) ⊠ M(λ(n))) = M(μ ∪ λ(n)).
pub fn induce(mu: &Partition, lam: &Partition, n: usize) -> Result<Partition> {
    Ok(mu.union(&lam.pad(n)?))
}

/// A map between direct sums of permutation modules of one S_n, as one sparse
/// matrix over the concatenated bases.
#[derive(Debug, Clone)]
pub struct SumMap {
    sources: Vec<Partition>,
    targets: Vec<Partition>,
    map: ConcreteMap,
}

impl SumMap {
    /// `blocks[t][s]` maps summand `s` of the source to summand `t` of the target.
    pub fn from_blocks(
        sources: Vec<Partition>,
        targets: Vec<Partition>,
        blocks: &[Vec<Option<ConcreteMap>>],
        modulus: Option<Prime>,
    ) -> Result<Self> {
        let sdims = sources.iter().map(check_budget).collect::<Result<Vec<_>>>()?;
        let tdims = targets.iter().map(check_budget).collect::<Result<Vec<_>>>()?;
        let toff: Vec<usize> = tdims.iter().scan(0, |acc, &d| { let o = *acc; *acc += d; Some(o) }).collect();
        let total_rows: usize = tdims.iter().sum();
        let mut cols: Vec<Vec<(u32, i64)>> = Vec::with_capacity(sdims.iter().sum());
        for (s, &sd) in sdims.iter().enumerate() {
            for j in 0..sd {
                let mut col = Vec::new();
                for (t, row) in blocks.iter().enumerate() {
                    if let Some(Some(block)) = row.get(s) {
                        if block.ncols() != sd || block.nrows() != tdims[t] {
                            return Err(Error::ShapeMismatch(format!("block ({t},{s}) has the wrong size")));
                        }
                        col.extend(block.column(j).iter().map(|&(i, v)| (i + toff[t] as u32, v)));
                    }
                }
                cols.push(col);
            }
        }
        let map = ConcreteMap::from_columns(Partition::empty(), Partition::empty(), modulus, total_rows, cols);
        Ok(SumMap { sources, targets, map })
    }

    pub fn single(map: ConcreteMap) -> Self {
        SumMap { sources: vec![map.source().clone()], targets: vec![map.target().clone()], map }
    }

    pub fn sources(&self) -> &[Partition] {
        &self.sources
    }

    pub fn targets(&self) -> &[Partition] {
        &self.targets
    }

    pub fn matrix(&self) -> &ConcreteMap {
        &self.map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SumMap) -> Result<SumMap> {
        if self.targets != next.sources {
            return Err(Error::ShapeMismatch("summands of the middle object differ".into()));
        }
        Ok(SumMap { sources: self.sources.clone(), targets: next.targets.clone(), map: self.map.then(&next.map)? })
    }

    pub fn rank(&self, p: Prime) -> usize {
        let dim = self.map.nrows();
        let rows = (0..self.map.ncols()).map(|j| sparse_to_dense(self.map.column(j), dim, p));
        Subspace::from_rows(p, dim, rows).dim()
    }
}

fn sparse_to_dense(col: &[(u32, i64)], dim: usize, p: Prime) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    for &(i, x) in col {
        v[i as usize] = p.add(v[i as usize], p.reduce_i64(x));
    }
    v
}

/// A module described by a permutation module, or the kernel or cokernel of a map.
#[derive(Debug, Clone)]
pub enum ModuleSpec {
    Perm(Partition),
    Coker(SumMap),
    Ker(SumMap),
    Zero,
}

/// Generator permutations of a direct sum of permutation modules.
fn sum_permutations(shapes: &[Partition]) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut s_all = Vec::new();
    let mut c_all = Vec::new();
    let mut starts = Vec::new();
    for shape in shapes {
        let basis = Basis::new(shape)?;
        let (s, c) = generators(shape.size());
        let off = s_all.len();
        starts.push(off);
        s_all.extend(basis.permutation(&s).into_iter().map(|x| x + off));
        c_all.extend(basis.permutation(&c).into_iter().map(|x| x + off));
    }
    Ok((s_all, c_all, starts))
}

/// Dimension over F_p of the vectors fixed by (1 2) and (1 2 … n), i.e. of H^0(S_n, V).
pub fn invariants_dim(v: &ModuleSpec, p: Prime) -> Result<usize> {
    match v {
        ModuleSpec::Zero => Ok(0),
        // a transitive permutation module has a single orbit
        ModuleSpec::Perm(shape) => {
            check_budget(shape)?;
            Ok(1)
        }
        ModuleSpec::Ker(map) => {
            // fixed vectors of a sum of transitive permutation modules are spanned by block indicators
            let dims = map.sources().iter().map(check_budget).collect::<Result<Vec<_>>>()?;
            let rows = map.matrix().nrows();
            let mut images = Vec::new();
            let mut j = 0;
            for d in dims {
                let mut acc = vec![0u32; rows];
                for col in j..j + d {
                    for &(i, x) in map.matrix().column(col) {
                        acc[i as usize] = p.add(acc[i as usize], p.reduce_i64(x));
                    }
                }
                images.push(acc);
                j += d;
            }
            let k = images.len();
            Ok(k - Subspace::from_rows(p, rows, images).dim())
        }
        ModuleSpec::Coker(map) => {
            let (s, c, _) = sum_permutations(map.targets())?;
            let dim = s.len();
            let image = Subspace::from_rows(p, dim, (0..map.matrix().ncols()).map(|j| sparse_to_dense(map.matrix().column(j), dim, p)));
            Ok(quotient_invariants(&image, &[s, c], p))
        }
    }
}

/// dim of (N/U)^G for permutation actions `gens` on N ⊇ U.
fn quotient_invariants(sub: &Subspace, gens: &[Vec<usize>], p: Prime) -> usize {
    let free = sub.non_pivots();
    let q = free.len();
    if q == 0 {
        return 0;
    }
    let dim = sub.ambient();
    let mut rows = Vec::with_capacity(q);
    for &j in &free {
        let mut row = Vec::with_capacity(q * gens.len());
        for g in gens {
            let mut v = vec![0u32; dim];
            v[g[j]] = p.add(v[g[j]], 1);
            v[j] = p.sub(v[j], 1);
            sub.reduce(&mut v);
            row.extend(free.iter().map(|&f| v[f]));
        }
        rows.push(row);
    }
    let m = FpMatrix::from_rows(p, q * gens.len(), rows);
    q - m.rank()
}

/// Dimension over F_p of the coinvariants V / span{gv - v}, i.e. of H_0(S_n, V).
pub fn coinvariants_dim(v: &ModuleSpec, p: Prime) -> Result<usize> {
    match v {
        ModuleSpec::Zero => Ok(0),
        ModuleSpec::Perm(shape) => {
            check_budget(shape)?;
            Ok(1)
        }
        ModuleSpec::Coker(map) => {
            let (s, c, _) = sum_permutations(map.targets())?;
            let dim = s.len();
            let mut sub = Subspace::from_rows(p, dim, (0..map.matrix().ncols()).map(|j| sparse_to_dense(map.matrix().column(j), dim, p)));
            for g in [&s, &c] {
                for j in 0..dim {
                    let mut v = vec![0u32; dim];
                    v[g[j]] = p.add(v[g[j]], 1);
                    v[j] = p.sub(v[j], 1);
                    sub.insert(v);
                }
            }
            Ok(dim - sub.dim())
        }
        ModuleSpec::Ker(map) => {
            let (s, c, _) = sum_permutations(map.sources())?;
            let kernel = map.matrix().to_dense(p).left_kernel();
            let dim = s.len();
            let mut sub = Subspace::new(p, dim);
            for k in &kernel {
                for g in [&s, &c] {
                    let mut v = vec![0u32; dim];
                    for (j, &x) in k.iter().enumerate() {
                        v[g[j]] = p.add(v[g[j]], x);
                        v[j] = p.sub(v[j], x);
                    }
                    sub.insert(v);
                }
            }
            Ok(kernel.len() - sub.dim())
        }
    }
}

/// dim V over F_p for the same descriptions.
pub fn module_dim(v: &ModuleSpec, p: Prime) -> Result<usize> {
    match v {
        ModuleSpec::Zero => Ok(0),
        ModuleSpec::Perm(shape) => check_budget(shape),
        ModuleSpec::Coker(map) => Ok(map.matrix().nrows() - map.rank(p)),
        ModuleSpec::Ker(map) => Ok(map.matrix().ncols() - map.rank(p)),
    }
}
