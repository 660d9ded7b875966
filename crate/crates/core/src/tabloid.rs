//! Tabloids and stable tabloids.
//!
//! A tabloid of shape μ and type λ is recorded by its count matrix: entry
//! `(i, j)` is the number of boxes in row `i` carrying label `j`. It is the
//! relative position of a set-partition of shape μ and one of shape λ.
//!
//! A stable tabloid drops the first row of a tabloid of shape μ(n) and type
//! λ(n). Its count matrix has `len(μ)` rows and `len(λ) + 1` columns; column 0
//! is the label belonging to the long first row of λ(n).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TabloidWire", into = "TabloidWire")]
pub struct Tabloid {
    shape: Partition,
    ty: Partition,
    counts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TabloidWire", into = "TabloidWire")]
pub struct StableTabloid {
    shape: Partition,
    ty: Partition,
    counts: Vec<Vec<usize>>,
}

/// JSON wire form shared by both kinds: `{"shape":[..],"type":[..],"counts":[[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TabloidWire {
    pub shape: Partition,
    #[serde(rename = "type")]
    pub ty: Partition,
    pub counts: Vec<Vec<usize>>,
}

fn check_rows(counts: &[Vec<usize>], shape: &Partition, width: usize) -> Result<()> {
    if counts.len() != shape.len() {
        return Err(Error::InvalidTabloid(format!("{} rows for shape {shape}", counts.len())));
    }
    for (row, &mu) in counts.iter().zip(shape.parts()) {
        if row.len() != width {
            return Err(Error::InvalidTabloid(format!("row {row:?} should have {width} entries")));
        }
        if row.iter().sum::<usize>() != mu {
            return Err(Error::InvalidTabloid(format!("row {row:?} does not sum to {mu}")));
        }
    }
    Ok(())
}

fn column_sum(counts: &[Vec<usize>], j: usize) -> usize {
    counts.iter().map(|row| row[j]).sum()
}

impl Tabloid {
    pub fn new(shape: Partition, ty: Partition, counts: Vec<Vec<usize>>) -> Result<Self> {
        check_rows(&counts, &shape, ty.len())?;
        for (j, &lam) in ty.parts().iter().enumerate() {
            if column_sum(&counts, j) != lam {
                return Err(Error::InvalidTabloid(format!("label {} used {} times, type wants {lam}", j + 1, column_sum(&counts, j))));
            }
        }
        Ok(Tabloid { shape, ty, counts })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn ty(&self) -> &Partition {
        &self.ty
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn transpose(&self) -> Tabloid {
        let counts = (0..self.ty.len()).map(|j| self.counts.iter().map(|row| row[j]).collect()).collect();
        Tabloid { shape: self.ty.clone(), ty: self.shape.clone(), counts }
    }

    /// Drops the first row; shape and type lose their first parts.
    pub fn destabilize(&self) -> Result<StableTabloid> {
        if self.shape.is_empty() || self.ty.is_empty() {
            return Err(Error::InvalidTabloid("no first row to drop".into()));
        }
        StableTabloid::new(self.shape.depad(), self.ty.depad(), self.counts[1..].to_vec())
    }

    /// Number of set-partitions B in this relative position to a fixed A:
    /// Π_i multinomial(μ_i; τ_i1, τ_i2, ...).
    pub fn orbit_column_count(&self) -> u128 {
        self.counts.iter().map(|row| multinomial(row)).product()
    }

    /// All tabloids (contingency tables) of the given shape and type.
    pub fn enumerate(shape: &Partition, ty: &Partition) -> Vec<Tabloid> {
        if shape.size() != ty.size() {
            return Vec::new();
        }
        contingency_tables(shape.parts(), ty.parts())
            .into_iter()
            .map(|counts| Tabloid { shape: shape.clone(), ty: ty.clone(), counts })
            .collect()
    }
}

pub(crate) fn multinomial(row: &[usize]) -> u128 {
    let mut acc = 1u128;
    let mut seen = 0u128;
    for &k in row {
        for i in 1..=k as u128 {
            seen += 1;
            acc = acc * seen / i;
        }
    }
    acc
}

/// Nonnegative integer matrices with the given row and column sums, in
/// lexicographic order of the flattened entries.
pub fn contingency_tables(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        j: usize,
        rows: &[usize],
        col_left: &mut Vec<usize>,
        row_left: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == rows.len() {
            if col_left.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let width = col_left.len();
        if j == width {
            if row_left == 0 {
                let next = rows.get(i + 1).copied().unwrap_or(0);
                rec(i + 1, 0, rows, col_left, next, cur, out);
            }
            return;
        }
        let hi = row_left.min(col_left[j]);
        // the last column is forced
        let lo = if j + 1 == width { row_left } else { 0 };
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            cur[i][j] = v;
            col_left[j] -= v;
            rec(i, j + 1, rows, col_left, row_left - v, cur, out);
            col_left[j] += v;
        }
        cur[i][j] = 0;
    }
    let mut out = Vec::new();
    if cols.is_empty() {
        if rows.iter().all(|&r| r == 0) {
            out.push(vec![Vec::new(); rows.len()]);
        }
        return out;
    }
    let mut cur = vec![vec![0; cols.len()]; rows.len()];
    let mut col_left = cols.to_vec();
    let first = rows.first().copied().unwrap_or(0);
    rec(0, 0, rows, &mut col_left, first, &mut cur, &mut out);
    out
}

impl StableTabloid {
    pub fn new(shape: Partition, ty: Partition, counts: Vec<Vec<usize>>) -> Result<Self> {
        check_rows(&counts, &shape, ty.len() + 1)?;
        for (j, &lam) in ty.parts().iter().enumerate() {
            if column_sum(&counts, j + 1) > lam {
                return Err(Error::InvalidTabloid(format!("label {} used more than {lam} times", j + 2)));
            }
        }
        Ok(StableTabloid { shape, ty, counts })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn ty(&self) -> &Partition {
        &self.ty
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    /// The identity map on [M(λ)]: every box of row i carries the label of row i.
    pub fn identity(lam: &Partition) -> StableTabloid {
        let counts = lam
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut row = vec![0; lam.len() + 1];
                row[i + 1] = x;
                row
            })
            .collect();
        StableTabloid { shape: lam.clone(), ty: lam.clone(), counts }
    }

    /// Smallest level at which this tabloid instantiates.
    pub fn threshold(&self) -> usize {
        instantiation_threshold(&self.shape, &self.ty)
    }

    /// The full tabloid of shape μ(n), type λ(n) whose rows after the first are these counts.
    pub fn instantiate(&self, n: usize) -> Result<Tabloid> {
        let threshold = self.threshold();
        if n < threshold {
            return Err(Error::BelowThreshold { n, threshold });
        }
        let shape = self.shape.pad(n)?;
        let ty = self.ty.pad(n)?;
        let mut first = Vec::with_capacity(self.ty.len() + 1);
        first.push(n - self.ty.size() - column_sum(&self.counts, 0));
        for (j, &lam) in self.ty.parts().iter().enumerate() {
            first.push(lam - column_sum(&self.counts, j + 1));
        }
        let mut counts = Vec::with_capacity(self.counts.len() + 1);
        counts.push(first);
        counts.extend(self.counts.iter().cloned());
        // At n = |μ| = |λ| the first rows are empty and vanish from the padded partitions.
        if shape.len() == self.shape.len() {
            counts.remove(0);
        }
        if ty.len() == self.ty.len() {
            for row in counts.iter_mut() {
                row.remove(0);
            }
        }
        Tabloid::new(shape, ty, counts)
    }

    /// Exchange of shape and type; instantiates to the matrix transpose.
    pub fn transpose_dual(&self) -> StableTabloid {
        let counts = self
            .ty
            .parts()
            .iter()
            .enumerate()
            .map(|(j, &lam)| {
                let mut row = Vec::with_capacity(self.shape.len() + 1);
                row.push(lam - column_sum(&self.counts, j + 1));
                row.extend(self.counts.iter().map(|r| r[j + 1]));
                row
            })
            .collect();
        StableTabloid { shape: self.ty.clone(), ty: self.shape.clone(), counts }
    }

    /// Complete list in lexicographic order of the flattened counts.
    pub fn enumerate(shape: &Partition, ty: &Partition) -> Vec<StableTabloid> {
        fn rec(
            i: usize,
            j: usize,
            shape: &[usize],
            caps: &mut Vec<usize>,
            row_left: usize,
            cur: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if i == shape.len() {
                out.push(cur.clone());
                return;
            }
            let width = caps.len() + 1;
            if j == width - 1 {
                // last column absorbs the remainder, subject to its cap
                let last = width - 1;
                let ok = if last == 0 { true } else { row_left <= caps[last - 1] };
                if ok {
                    cur[i][last] = row_left;
                    if last > 0 {
                        caps[last - 1] -= row_left;
                    }
                    let next = shape.get(i + 1).copied().unwrap_or(0);
                    rec(i + 1, 0, shape, caps, next, cur, out);
                    if last > 0 {
                        caps[last - 1] += row_left;
                    }
                    cur[i][last] = 0;
                }
                return;
            }
            let hi = if j == 0 { row_left } else { row_left.min(caps[j - 1]) };
            for v in 0..=hi {
                cur[i][j] = v;
                if j > 0 {
                    caps[j - 1] -= v;
                }
                rec(i, j + 1, shape, caps, row_left - v, cur, out);
                if j > 0 {
                    caps[j - 1] += v;
                }
            }
            cur[i][j] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![vec![0; ty.len() + 1]; shape.len()];
        let mut caps = ty.parts().to_vec();
        let first = shape.parts().first().copied().unwrap_or(0);
        rec(0, 0, shape.parts(), &mut caps, first, &mut cur, &mut out);
        out.sort();
        out.into_iter()
            .map(|counts| StableTabloid { shape: shape.clone(), ty: ty.clone(), counts })
            .collect()
    }
}

/// max(|μ|+μ_1, |λ|+λ_1, |μ|+|λ|): every stable tabloid of shape μ, type λ
/// instantiates at this level and above.
pub fn instantiation_threshold(shape: &Partition, ty: &Partition) -> usize {
    shape.pad_threshold().max(ty.pad_threshold()).max(shape.size() + ty.size())
}

impl TryFrom<TabloidWire> for Tabloid {
    type Error = Error;
    fn try_from(w: TabloidWire) -> Result<Self> {
        Tabloid::new(w.shape, w.ty, w.counts)
    }
}

impl From<Tabloid> for TabloidWire {
    fn from(t: Tabloid) -> Self {
        TabloidWire { shape: t.shape, ty: t.ty, counts: t.counts }
    }
}

impl TryFrom<TabloidWire> for StableTabloid {
    type Error = Error;
    fn try_from(w: TabloidWire) -> Result<Self> {
        StableTabloid::new(w.shape, w.ty, w.counts)
    }
}

impl From<StableTabloid> for TabloidWire {
    fn from(t: StableTabloid) -> Self {
        TabloidWire { shape: t.shape, ty: t.ty, counts: t.counts }
    }
}

impl std::fmt::Display for StableTabloid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .counts
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({})->({}) [{}]", self.shape, self.ty, rows.join("; "))
    }
}
