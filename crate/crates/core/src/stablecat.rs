//! The interpolation category: objects are finite sums of symbols [M(λ)],
//! morphisms are matrices of formal sums Σ c_τ(x)·τ over stable tabloids with
//! integer-valued polynomial coefficients, and composition uses interpolated
//! structure constants.
//!
//! A stable tabloid τ of shape μ and type λ is a morphism [M(μ)] → [M(λ)]
//! realized at level n by h^τ(n) : M(μ(n)) → M(λ(n)). `compose(f, g)` is g ∘ f.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ivpoly::{IvPoly, PAdicResidue};
use crate::partition::Partition;
use crate::permrep::{self, build_cl_matrix, ConcreteMap, SumMap};
use crate::prime::Prime;
use crate::tabloid::StableTabloid;

/// Formal sum Σ c_τ(x)·τ; zero coefficients are never stored.
pub type Entry = BTreeMap<StableTabloid, IvPoly>;

/// The object ⊕ [M(λ_i)].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StableObject {
    pub summands: Vec<Partition>,
}

impl StableObject {
    pub fn new(summands: Vec<Partition>) -> Self {
        StableObject { summands }
    }

    pub fn single(lam: Partition) -> Self {
        StableObject { summands: vec![lam] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Smallest level at which every summand pads.
    pub fn pad_threshold(&self) -> usize {
        self.summands.iter().map(Partition::pad_threshold).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub tau: StableTabloid,
    pub poly: IvPoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct HomWire {
    source: StableObject,
    target: StableObject,
    entries: Vec<Vec<Vec<Term>>>,
}

/// A morphism between stable objects; `entries[t][s]` maps source summand
/// `s` to target summand `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HomWire", into = "HomWire")]
pub struct StableHom {
    source: StableObject,
    target: StableObject,
    entries: Vec<Vec<Entry>>,
}

impl TryFrom<HomWire> for StableHom {
    type Error = Error;

    fn try_from(w: HomWire) -> Result<Self> {
        let entries = w
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(terms_to_entry).collect())
            .collect();
        StableHom::new(w.source, w.target, entries)
    }
}

impl From<StableHom> for HomWire {
    fn from(h: StableHom) -> Self {
        let entries = h.entries.into_iter().map(|row| row.into_iter().map(entry_to_terms).collect()).collect();
        HomWire { source: h.source, target: h.target, entries }
    }
}

pub fn terms_to_entry(terms: Vec<Term>) -> Entry {
    let mut out = Entry::new();
    for t in terms {
        add_term(&mut out, t.tau, &t.poly);
    }
    out
}

pub fn entry_to_terms(e: Entry) -> Vec<Term> {
    e.into_iter().map(|(tau, poly)| Term { tau, poly }).collect()
}

fn add_term(entry: &mut Entry, tau: StableTabloid, poly: &IvPoly) {
    let sum = match entry.get(&tau) {
        Some(old) => old.add(poly),
        None => poly.clone(),
    };
    if sum.is_zero() {
        entry.remove(&tau);
    } else {
        entry.insert(tau, sum);
    }
}

impl StableHom {
    pub fn new(source: StableObject, target: StableObject, entries: Vec<Vec<Entry>>) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
            return Err(Error::ShapeMismatch(format!(
                "entry matrix must be {} x {}",
                target.len(),
                source.len()
            )));
        }
        for (t, row) in entries.iter().enumerate() {
            for (s, entry) in row.iter().enumerate() {
                for tau in entry.keys() {
                    if tau.shape() != &source.summands[s] || tau.ty() != &target.summands[t] {
                        return Err(Error::ShapeMismatch(format!(
                            "entry ({t},{s}) holds a tabloid {} -> {}, expected {} -> {}",
                            tau.shape(),
                            tau.ty(),
                            source.summands[s],
                            target.summands[t]
                        )));
                    }
                }
            }
        }
        let mut h = StableHom { source, target, entries };
        for row in h.entries.iter_mut() {
            for e in row.iter_mut() {
                e.retain(|_, p| !p.is_zero());
            }
        }
        Ok(h)
    }

    pub fn zero(source: StableObject, target: StableObject) -> Self {
        let entries = vec![vec![Entry::new(); source.len()]; target.len()];
        StableHom { source, target, entries }
    }

    pub fn identity(obj: &StableObject) -> Self {
        let mut h = Self::zero(obj.clone(), obj.clone());
        for (i, lam) in obj.summands.iter().enumerate() {
            h.entries[i][i].insert(StableTabloid::identity(lam), IvPoly::constant(1));
        }
        h
    }

    /// The single basis morphism f^τ : [M(shape)] → [M(type)].
    pub fn basis(tau: &StableTabloid) -> Self {
        Self::from_tabloid(tau, IvPoly::constant(1))
    }

    pub fn from_tabloid(tau: &StableTabloid, poly: IvPoly) -> Self {
        let mut h = Self::zero(StableObject::single(tau.shape().clone()), StableObject::single(tau.ty().clone()));
        if !poly.is_zero() {
            h.entries[0][0].insert(tau.clone(), poly);
        }
        h
    }

    pub fn source(&self) -> &StableObject {
        &self.source
    }

    pub fn target(&self) -> &StableObject {
        &self.target
    }

    pub fn entry(&self, t: usize, s: usize) -> &Entry {
        &self.entries[t][s]
    }

    pub fn entries(&self) -> &[Vec<Entry>] {
        &self.entries
    }

    pub fn add(&self, other: &StableHom) -> Result<StableHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("cannot add morphisms between different objects".into()));
        }
        let mut out = self.clone();
        for (t, row) in other.entries.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                for (tau, p) in e {
                    add_term(&mut out.entries[t][s], tau.clone(), p);
                }
            }
        }
        Ok(out)
    }

    /// Largest coefficient degree.
    pub fn max_degree(&self) -> usize {
        self.entries.iter().flatten().flat_map(|e| e.values()).map(IvPoly::degree).max().unwrap_or(0)
    }

    /// Smallest level at which every tabloid in the entries instantiates.
    pub fn threshold(&self) -> usize {
        let objects = self.source.pad_threshold().max(self.target.pad_threshold());
        self.entries.iter().flatten().flat_map(|e| e.keys()).map(StableTabloid::threshold).fold(objects, usize::max)
    }
}

/// Memo of interpolated structure constants, keyed by (α, β).
///
/// Values are pure functions of the key, so concurrent writers agree and a
/// reader sees either nothing or a complete entry.
#[derive(Debug, Default)]
pub struct StructureTable {
    cache: RwLock<HashMap<(StableTabloid, StableTabloid), Arc<Entry>>>,
}

impl StructureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static StructureTable {
        static TABLE: OnceLock<StructureTable> = OnceLock::new();
        TABLE.get_or_init(StructureTable::new)
    }

    pub fn len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, alpha: &StableTabloid, beta: &StableTabloid) -> Option<Arc<Entry>> {
        self.cache.read().unwrap().get(&(alpha.clone(), beta.clone())).cloned()
    }

    /// Interpolated structure constants of f^β ∘ f^α, computed on first use.
    pub fn compose(&self, alpha: &StableTabloid, beta: &StableTabloid) -> Result<Arc<Entry>> {
        if let Some(e) = self.get(alpha, beta) {
            return Ok(e);
        }
        let e = Arc::new(interpolate_validated(alpha, beta)?);
        self.cache.write().unwrap().entry((alpha.clone(), beta.clone())).or_insert_with(|| e.clone());
        Ok(e)
    }
}

/// max(|μ|, |λ|, |ν|) for f^β ∘ f^α with α: μ → λ, β: λ → ν.
pub fn degree_bound(alpha: &StableTabloid, beta: &StableTabloid) -> usize {
    alpha.shape().size().max(alpha.ty().size()).max(beta.ty().size())
}

/// First sampling level 2(|μ|+|λ|+|ν|)+1.
pub fn sampling_base(alpha: &StableTabloid, beta: &StableTabloid) -> usize {
    2 * (alpha.shape().size() + alpha.ty().size() + beta.ty().size()) + 1
}

fn interpolate_at(alpha: &StableTabloid, beta: &StableTabloid, n0: usize) -> Result<Entry> {
    let d = degree_bound(alpha, beta);
    let samples = (n0..=n0 + d).map(|n| permrep::structure_constants(alpha, beta, n)).collect::<Result<Vec<_>>>()?;
    let mut out = Entry::new();
    for tau in StableTabloid::enumerate(alpha.shape(), beta.ty()) {
        let values: Vec<i64> = samples.iter().map(|s| s.get(&tau).copied().unwrap_or(0)).collect();
        let poly = IvPoly::from_values(n0 as i64, &values);
        if !poly.is_zero() {
            out.insert(tau, poly);
        }
    }
    // two further levels must agree exactly
    for n in n0 + d + 1..=n0 + d + 2 {
        let actual = permrep::structure_constants(alpha, beta, n)?;
        if evaluate_entry(&out, n as i64)? != actual {
            return Err(Error::InterpolationFailed(format!("{alpha} then {beta} at level {n}")));
        }
    }
    Ok(out)
}

fn interpolate_validated(alpha: &StableTabloid, beta: &StableTabloid) -> Result<Entry> {
    if alpha.ty() != beta.shape() {
        return Err(Error::ShapeMismatch(format!("type {} vs shape {}", alpha.ty(), beta.shape())));
    }
    let n0 = sampling_base(alpha, beta);
    match interpolate_at(alpha, beta, n0) {
        Err(Error::InterpolationFailed(_)) => interpolate_at(alpha, beta, 2 * n0),
        other => other,
    }
}

/// Integer values of an entry's coefficients at level n.
pub fn evaluate_entry(e: &Entry, n: i64) -> Result<BTreeMap<StableTabloid, i64>> {
    let mut out = BTreeMap::new();
    for (tau, p) in e {
        let v = p.evaluate(n).to_i64().ok_or(Error::Overflow("structure constant"))?;
        if v != 0 {
            out.insert(tau.clone(), v);
        }
    }
    Ok(out)
}

/// Interpolated structure constants p_τ(x) with f^β_n ∘ f^α_n = Σ p_τ(n) f^τ_n.
pub fn compose_generic(alpha: &StableTabloid, beta: &StableTabloid) -> Result<Entry> {
    Ok((*StructureTable::global().compose(alpha, beta)?).clone())
}

/// g ∘ f.
pub fn compose(f: &StableHom, g: &StableHom) -> Result<StableHom> {
    compose_with(StructureTable::global(), f, g)
}

pub fn compose_with(table: &StructureTable, f: &StableHom, g: &StableHom) -> Result<StableHom> {
    if f.target != g.source {
        return Err(Error::ShapeMismatch("target of the first morphism is not the source of the second".into()));
    }
    let mut out = StableHom::zero(f.source.clone(), g.target.clone());
    for c in 0..g.target.len() {
        for a in 0..f.source.len() {
            let mut acc = Entry::new();
            for b in 0..f.target.len() {
                for (alpha, pa) in &f.entries[b][a] {
                    for (beta, pb) in &g.entries[c][b] {
                        let coef = pa.mul(pb);
                        for (tau, pt) in table.compose(alpha, beta)?.iter() {
                            add_term(&mut acc, tau.clone(), &coef.mul(pt));
                        }
                    }
                }
            }
            out.entries[c][a] = acc;
        }
    }
    Ok(out)
}

/// The same morphism between the dual objects, in the opposite direction.
pub fn dualize(f: &StableHom) -> StableHom {
    let mut out = StableHom::zero(f.target.clone(), f.source.clone());
    for (t, row) in f.entries.iter().enumerate() {
        for (s, e) in row.iter().enumerate() {
            out.entries[s][t] = e.iter().map(|(tau, p)| (tau.transpose_dual(), p.clone())).collect();
        }
    }
    out
}

/// A morphism with coefficients in F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModHom {
    pub p: Prime,
    pub source: StableObject,
    pub target: StableObject,
    pub entries: Vec<Vec<BTreeMap<StableTabloid, u32>>>,
}

/// ev_t applied to every coefficient.
pub fn evaluate_category(f: &StableHom, t: &PAdicResidue) -> Result<ModHom> {
    let entries = f
        .entries
        .iter()
        .map(|row| row.iter().map(|e| evaluate_entry_padic(e, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ModHom { p: t.prime(), source: f.source.clone(), target: f.target.clone(), entries })
}

pub fn evaluate_entry_padic(e: &Entry, t: &PAdicResidue) -> Result<BTreeMap<StableTabloid, u32>> {
    let mut out = BTreeMap::new();
    for (tau, p) in e {
        let v = p.eval_at_padic(t)?;
        if v != 0 {
            out.insert(tau.clone(), v);
        }
    }
    Ok(out)
}

/// Concrete mod-p structure constants at level n, zeros dropped.
pub fn structure_constants_mod(
    alpha: &StableTabloid,
    beta: &StableTabloid,
    n: usize,
    p: Prime,
) -> Result<BTreeMap<StableTabloid, u32>> {
    Ok(reduce_table(&permrep::structure_constants(alpha, beta, n)?, p))
}

fn reduce_table(t: &BTreeMap<StableTabloid, i64>, p: Prime) -> BTreeMap<StableTabloid, u32> {
    t.iter().map(|(k, &v)| (k.clone(), p.reduce_i64(v))).filter(|(_, v)| *v != 0).collect()
}

/// The concrete map f_n over Z (or F_p), as one matrix over the summed bases.
pub fn concrete_hom(f: &StableHom, n: usize, modulus: Option<Prime>) -> Result<SumMap> {
    let threshold = f.threshold();
    if n < threshold {
        return Err(Error::BelowThreshold { n, threshold });
    }
    let sources: Vec<Partition> = f.source.summands.iter().map(|l| l.pad(n)).collect::<Result<_>>()?;
    let targets: Vec<Partition> = f.target.summands.iter().map(|l| l.pad(n)).collect::<Result<_>>()?;
    let blocks = f
        .entries
        .iter()
        .enumerate()
        .map(|(t, row)| {
            row.iter()
                .enumerate()
                .map(|(s, e)| concrete_block(e, n, modulus, &sources[s], &targets[t]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SumMap::from_blocks(sources, targets, &blocks, modulus)
}

fn concrete_block(
    e: &Entry,
    n: usize,
    modulus: Option<Prime>,
    source: &Partition,
    target: &Partition,
) -> Result<Option<ConcreteMap>> {
    let mut cols: Option<Vec<Vec<(u32, i64)>>> = None;
    let mut rows = 0;
    for (tau, poly) in e {
        let value = poly.evaluate(n as i64);
        let c = match modulus {
            Some(p) => {
                let r = value % BigInt::from(p.get());
                p.reduce_i64(r.to_i64().expect("residue fits")) as i64
            }
            None => value.to_i64().ok_or(Error::Overflow("coefficient at level n"))?,
        };
        if c == 0 {
            continue;
        }
        let m = build_cl_matrix(&tau.instantiate(n)?, modulus)?;
        rows = m.nrows();
        let acc = cols.get_or_insert_with(|| vec![Vec::new(); m.ncols()]);
        for (j, col) in acc.iter_mut().enumerate() {
            col.extend(m.column(j).iter().map(|&(i, v)| (i, v * c)));
        }
    }
    Ok(cols.map(|cols| ConcreteMap::from_columns(source.clone(), target.clone(), modulus, rows, cols)))
}

/// All (α, β) with α: μ → λ, β: λ → ν and |μ|, |λ|, |ν| ≤ r, in a fixed order.
pub fn composable_pairs(r: usize) -> Arc<Vec<(StableTabloid, StableTabloid)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(StableTabloid, StableTabloid)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&r) {
        return v.clone();
    }
    let parts = Partition::all_up_to(r);
    let mut out = Vec::new();
    for mu in &parts {
        for lam in &parts {
            let alphas = StableTabloid::enumerate(mu, lam);
            for nu in &parts {
                let betas = StableTabloid::enumerate(lam, nu);
                for a in &alphas {
                    for b in &betas {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert(r, out.clone());
    out
}

type LevelTable = Arc<Vec<BTreeMap<StableTabloid, i64>>>;

/// Integer structure constants of every pair of [`composable_pairs`] at level n.
pub fn level_table(r: usize, n: usize) -> Result<LevelTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), LevelTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(r, n)) {
        return Ok(t.clone());
    }
    let pairs = composable_pairs(r);
    let table: Vec<_> =
        pairs.par_iter().map(|(a, b)| permrep::structure_constants(a, b, n)).collect::<Result<_>>()?;
    let table = Arc::new(table);
    cache.lock().unwrap().insert((r, n), table.clone());
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModTerm {
    pub tau: StableTabloid,
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub alpha: StableTabloid,
    pub beta: StableTabloid,
    pub at_n: Vec<ModTerm>,
    pub at_m: Vec<ModTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermEquivReport {
    pub r: usize,
    pub p: Prime,
    pub n: usize,
    pub m: usize,
    /// p^digits_p(r) divides n − m.
    pub digits_hypothesis: bool,
    /// p^⌈log_p r⌉ divides n − m.
    pub ceil_log_hypothesis: bool,
    pub exploratory: bool,
    pub pairs_compared: usize,
    pub agree: bool,
    pub witnesses: Vec<Witness>,
}

fn ceil_log(p: Prime, r: usize) -> u32 {
    let mut e = 0;
    let mut pow = 1usize;
    while pow < r {
        pow *= p.get() as usize;
        e += 1;
    }
    e
}

fn divides(p: Prime, e: u32, n: usize, m: usize) -> bool {
    let diff = n.abs_diff(m) as u64;
    match p.power(e) {
        Some(q) => diff.is_multiple_of(q),
        None => diff == 0,
    }
}

/// Compares the full mod-p composition tables of sizes ≤ r at levels n and m.
///
/// Requires n, m > 2r and p^digits_p(r) | (n − m); `exploratory` runs the
/// comparison without the divisibility requirement.
pub fn check_perm_equivalence(r: usize, p: Prime, n: usize, m: usize, exploratory: bool) -> Result<PermEquivReport> {
    if n <= 2 * r || m <= 2 * r {
        return Err(Error::Precondition(format!("levels must exceed 2r = {}", 2 * r)));
    }
    let digits_hypothesis = divides(p, p.digits(r as u64), n, m);
    let ceil_log_hypothesis = divides(p, ceil_log(p, r), n, m);
    if !digits_hypothesis && !exploratory {
        return Err(Error::Precondition(format!(
            "{}^{} does not divide {n} - {m}; rerun in exploratory mode to compare anyway",
            p,
            p.digits(r as u64)
        )));
    }
    let pairs = composable_pairs(r);
    let (tn, tm) = (level_table(r, n)?, level_table(r, m)?);
    let mut witnesses = Vec::new();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let (x, y) = (reduce_table(&tn[k], p), reduce_table(&tm[k], p));
        if x != y {
            let terms = |t: BTreeMap<StableTabloid, u32>| t.into_iter().map(|(tau, value)| ModTerm { tau, value }).collect();
            witnesses.push(Witness { alpha: a.clone(), beta: b.clone(), at_n: terms(x), at_m: terms(y) });
        }
    }
    Ok(PermEquivReport {
        r,
        p,
        n,
        m,
        digits_hypothesis,
        ceil_log_hypothesis,
        exploratory,
        pairs_compared: pairs.len(),
        agree: witnesses.is_empty(),
        witnesses,
    })
}

fn depad_checked(q: &Partition, n: usize) -> Result<Partition> {
    let d = q.depad();
    if d.pad(n).ok().as_ref() != Some(q) {
        return Err(Error::NotStable(format!("{q} is not in the padded range at level {n}")));
    }
    Ok(d)
}

fn stable_pair<T: PartialEq + std::fmt::Debug>(what: &str, n: usize, f: impl Fn(usize) -> Result<T>) -> Result<T> {
    let (a, b) = (f(n)?, f(n + 1)?);
    if a != b {
        return Err(Error::NotStable(format!("{what}: {a:?} at n = {n} but {b:?} at n = {}", n + 1)));
    }
    Ok(a)
}

/// Stable summands of M(λ(n)) ⊗ M(μ(n)), de-padded.
pub fn stable_tensor(lam: &Partition, mu: &Partition) -> Result<Vec<Partition>> {
    let n0 = 2 * (lam.size() + mu.size()) + 2;
    stable_pair("tensor", n0, |n| {
        let mut out = permrep::tensor_decompose_concrete(&lam.pad(n)?, &mu.pad(n)?)?
            .iter()
            .map(|q| depad_checked(q, n))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    })
}

/// Stable summands M(μ) ⊠ M(ν(n−ℓ)) of the restriction of M(λ(n)) to S_ℓ × S_{n−ℓ}.
pub fn stable_restrict(lam: &Partition, ell: usize) -> Result<Vec<(Partition, Partition)>> {
    let n0 = 2 * (lam.size() + ell) + lam.first() + 2;
    stable_pair("restriction", n0, |n| {
        let mut out = permrep::restrict_decompose(lam, ell, n)?
            .into_iter()
            .map(|(a, b)| Ok((a, depad_checked(&b, n - ell)?)))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    })
}

/// Stable form of Ind(M(μ) ⊠ M(λ(n))) = M(μ ∪ λ(n)).
pub fn stable_induce(mu: &Partition, lam: &Partition) -> Result<Partition> {
    let n0 = 2 * (lam.size() + mu.size()) + lam.first() + 2;
    stable_pair("induction", n0, |n| depad_checked(&permrep::induce(mu, lam, n)?, n + mu.size()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    fn st(shape: &[usize], ty: &[usize], counts: &[&[usize]]) -> StableTabloid {
        StableTabloid::new(part(shape), part(ty), counts.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn dp() -> StableTabloid {
        st(&[1], &[1], &[&[1, 0]])
    }

    fn sum() -> StableTabloid {
        st(&[], &[1], &[])
    }

    fn aug() -> StableTabloid {
        st(&[1], &[], &[&[1]])
    }

    fn p(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    #[test]
    fn dp_squared() {
        let e = compose_generic(&dp(), &dp()).unwrap();
        let id = StableTabloid::identity(&part(&[1]));
        assert_eq!(e.len(), 2);
        assert_eq!(e[&id], IvPoly::linear(1));
        assert_eq!(e[&dp()], IvPoly::linear(2));
        assert!(e.values().all(|poly| poly.offset() == sampling_base(&dp(), &dp()) as i64));
    }

    #[test]
    fn identity_and_aug_sum() {
        let beta = st(&[1], &[1, 1], &[&[0, 1, 0]]);
        let e = compose_generic(&StableTabloid::identity(&part(&[1])), &beta).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(beta, IvPoly::constant(1))]);
        let e = compose_generic(&sum(), &aug()).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(StableTabloid::identity(&Partition::empty()), IvPoly::linear(0))]);
    }

    fn end_space_element(seed: u64) -> StableHom {
        // a mixed endomorphism of [M(1)] ⊕ [M(∅)]
        let obj = StableObject::new(vec![part(&[1]), Partition::empty()]);
        let mut h = StableHom::zero(obj.clone(), obj);
        let c = |k: u64| IvPoly::from_values(0, &[(seed * 3 + k) as i64 % 5 - 2, (seed + k) as i64 % 3]);
        h.entries[0][0].insert(dp(), c(1));
        h.entries[0][0].insert(StableTabloid::identity(&part(&[1])), c(2));
        h.entries[0][1].insert(sum(), c(3));
        h.entries[1][0].insert(aug(), c(4));
        h.entries[1][1].insert(StableTabloid::identity(&Partition::empty()), c(5));
        for row in h.entries.iter_mut() {
            for e in row.iter_mut() {
                e.retain(|_, poly| !poly.is_zero());
            }
        }
        h
    }

    #[test]
    fn composition_laws() {
        let (f, g, h) = (end_space_element(1), end_space_element(2), end_space_element(3));
        let id = StableHom::identity(f.source());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &id).unwrap(), f);
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_concrete_product() {
        let (f, g) = (end_space_element(4), end_space_element(7));
        let fg = compose(&f, &g).unwrap();
        for n in [9, 10] {
            let direct = concrete_hom(&fg, n, None).unwrap();
            let product = concrete_hom(&f, n, None).unwrap().then(&concrete_hom(&g, n, None).unwrap()).unwrap();
            assert_eq!(direct.matrix(), product.matrix());
        }
    }

    #[test]
    fn dualize_reverses_composition() {
        let (f, g) = (end_space_element(5), end_space_element(6));
        let lhs = dualize(&compose(&f, &g).unwrap());
        let rhs = compose(&dualize(&g), &dualize(&f)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(dualize(&StableHom::basis(&sum())), StableHom::basis(&aug()));
    }

    #[test]
    fn evaluate_examples() {
        let sq = compose(&StableHom::basis(&dp()), &StableHom::basis(&dp())).unwrap();
        let id = StableTabloid::identity(&part(&[1]));
        let at0 = evaluate_category(&sq, &PAdicResidue::new(p(2), 2, 0).unwrap()).unwrap();
        assert_eq!(at0.entries[0][0].clone().into_iter().collect::<Vec<_>>(), vec![(id.clone(), 1)]);
        let at1 = evaluate_category(&sq, &PAdicResidue::new(p(2), 2, 1).unwrap()).unwrap();
        assert_eq!(at1.entries[0][0].clone().into_iter().collect::<Vec<_>>(), vec![(dp(), 1)]);
        for n in [5, 9] {
            assert_eq!(at1.entries[0][0], structure_constants_mod(&dp(), &dp(), n, p(2)).unwrap());
        }
        let ident = StableHom::identity(&StableObject::single(part(&[2, 1])));
        let e = evaluate_category(&ident, &PAdicResidue::new(p(3), 1, 2).unwrap()).unwrap();
        assert_eq!(e.entries[0][0].values().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn evaluate_needs_enough_digits() {
        let sq = compose(&StableHom::basis(&dp()), &StableHom::basis(&dp())).unwrap();
        let err = evaluate_category(&sq, &PAdicResidue::new(p(2), 0, 0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InsufficientDigits { .. }));
    }

    #[test]
    fn perm_equivalence_examples() {
        assert!(check_perm_equivalence(2, p(2), 6, 10, false).unwrap().agree);
        assert!(check_perm_equivalence(1, p(2), 5, 7, false).unwrap().agree);
        assert!(check_perm_equivalence(1, p(2), 5, 6, false).is_err());
        let rep = check_perm_equivalence(1, p(2), 5, 6, true).unwrap();
        assert!(!rep.agree && !rep.digits_hypothesis && rep.ceil_log_hypothesis);
        assert!(rep.witnesses.iter().any(|w| w.alpha == dp() && w.beta == dp()));
    }

    #[test]
    fn stable_functor_examples() {
        assert_eq!(stable_tensor(&part(&[1]), &part(&[1])).unwrap(), vec![part(&[1]), part(&[1, 1])]);
        assert_eq!(stable_tensor(&Partition::empty(), &part(&[2, 1])).unwrap(), vec![part(&[2, 1])]);
        assert_eq!(stable_induce(&part(&[1]), &part(&[1])).unwrap(), part(&[1, 1]));
        assert_eq!(stable_induce(&Partition::empty(), &part(&[2])).unwrap(), part(&[2]));
        assert_eq!(
            stable_restrict(&part(&[1]), 1).unwrap(),
            vec![(part(&[1]), Partition::empty()), (part(&[1]), part(&[1]))]
        );
    }

    #[test]
    fn hom_json_round_trip() {
        let f = end_space_element(3);
        let json = serde_json::to_string(&f).unwrap();
        let back: StableHom = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
