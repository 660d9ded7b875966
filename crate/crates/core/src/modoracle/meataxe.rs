use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::brauer::{class_representatives, fingerprint, Fingerprint};
use super::MatrixRep;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};

/// Random algebra elements tried before giving up on one module.
pub const MEATAXE_TRIES: usize = 50;

/// Longest generator word used for the factor fingerprints of [`chop`].
const FINGERPRINT_WORD_LEN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub dim: usize,
    pub fingerprint: Fingerprint,
}

/// A proper nonzero submodule, or `None` once Norton's test proves `rep`
/// irreducible.
pub fn find_submodule(rep: &MatrixRep, rng: &mut impl Rng) -> Result<Option<Subspace>> {
    let d = rep.dim();
    if d <= 1 {
        return Ok(None);
    }
    let p = rep.prime();
    let q = p.get();
    let mut pool: Vec<FpMatrix> = vec![rep.transposition().clone(), rep.cycle().clone()];
    for _ in 0..MEATAXE_TRIES {
        let (a, b) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        let product = pool[a].mul(&pool[b]);
        pool.push(product);
        let mut theta = FpMatrix::zeros(p, d, d);
        for m in &pool {
            let coef = rng.gen_range(0..q);
            if coef != 0 {
                theta = theta.add(&m.scale(coef));
            }
        }
        for lambda in 0..q {
            let shifted = theta.sub_scalar(lambda);
            let kernel = shifted.left_kernel();
            let Some(v) = kernel.first() else { continue };
            let span = rep.spin([v.clone()]);
            if span.dim() < d {
                return Ok(Some(span));
            }
            if kernel.len() == 1 {
                // Norton: a one-dimensional null space spinning to everything
                // proves irreducibility unless the dual side finds a submodule.
                let dual_kernel = shifted.transpose().left_kernel();
                let dual = rep.transposed().spin([dual_kernel[0].clone()]);
                if dual.dim() < d {
                    let annihilator = FpMatrix::from_rows(p, d, dual.basis().to_vec()).right_kernel();
                    return Ok(Some(Subspace::from_rows(p, d, annihilator)));
                }
                return Ok(None);
            }
        }
    }
    Err(Error::MeatAxeExhausted(MEATAXE_TRIES))
}

/// Composition factors of `rep` as representations, largest dimension first.
pub fn composition_factors(rep: &MatrixRep, seed: u64) -> Result<Vec<MatrixRep>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = vec![rep.clone()];
    let mut done = Vec::new();
    while let Some(m) = work.pop() {
        if m.dim() == 0 {
            continue;
        }
        match find_submodule(&m, &mut rng)? {
            None => done.push(m),
            Some(sub) => {
                let (a, b) = m.subquotient(&sub);
                work.push(a);
                work.push(b);
            }
        }
    }
    done.sort_by_key(|f| std::cmp::Reverse(f.dim()));
    Ok(done)
}

/// Composition factors as (dimension, Brauer fingerprint), sorted. The
/// multiset does not depend on the seed.
pub fn chop(rep: &MatrixRep, seed: u64) -> Result<Vec<Factor>> {
    let classes = class_representatives(rep.n(), rep.prime(), FINGERPRINT_WORD_LEN);
    let mut out: Vec<Factor> = composition_factors(rep, seed)?
        .iter()
        .map(|f| Factor { dim: f.dim(), fingerprint: fingerprint(f, &classes) })
        .collect();
    out.sort();
    Ok(out)
}
