//! Sequences V_n presented as cokernels of stable maps between free objects
//! ⊕ [M(1^d)], with dimension and invariant tracking and period detection.
//!
//! Any stable map between free objects is accepted; genuine FI-morphisms form
//! a subspace of these and are not singled out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permrep::{coinvariants_dim, invariants_dim, module_dim, ModuleSpec};
use crate::prime::Prime;
use crate::stablecat::{concrete_hom, entry_to_terms, terms_to_entry, StableHom, StableObject, Term};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct PresentationWire {
    generators: Vec<usize>,
    relations: Vec<usize>,
    /// `map[g][r]` lists the terms from relation summand r to generator summand g.
    map: Vec<Vec<Vec<Term>>>,
}

/// V = coker(map: ⊕ [M(1^{r_j})] → ⊕ [M(1^{g_i})]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PresentationWire", into = "PresentationWire")]
pub struct Presentation {
    generators: Vec<usize>,
    relations: Vec<usize>,
    map: StableHom,
}

impl TryFrom<PresentationWire> for Presentation {
    type Error = Error;

    fn try_from(w: PresentationWire) -> Result<Self> {
        let source = free_object(&w.relations);
        let target = free_object(&w.generators);
        let entries = if w.map.is_empty() && (w.relations.is_empty() || w.generators.is_empty()) {
            vec![vec![Default::default(); source.len()]; target.len()]
        } else {
            w.map.into_iter().map(|row| row.into_iter().map(terms_to_entry).collect()).collect()
        };
        let map = StableHom::new(source, target, entries)?;
        Ok(Presentation { generators: w.generators, relations: w.relations, map })
    }
}

impl From<Presentation> for PresentationWire {
    fn from(p: Presentation) -> Self {
        let map = p.map.entries().iter().map(|row| row.iter().map(|e| entry_to_terms(e.clone())).collect()).collect();
        PresentationWire { generators: p.generators, relations: p.relations, map }
    }
}

fn free_object(degrees: &[usize]) -> StableObject {
    StableObject::new(degrees.iter().map(|&d| Partition::column(d)).collect())
}

impl Presentation {
    pub fn new(map: StableHom) -> Result<Self> {
        let degree = |lam: &Partition| {
            if lam.parts().iter().all(|&x| x == 1) {
                Ok(lam.size())
            } else {
                Err(Error::Precondition(format!("summand {lam} is not of the form (1^d)")))
            }
        };
        let relations = map.source().summands.iter().map(degree).collect::<Result<_>>()?;
        let generators = map.target().summands.iter().map(degree).collect::<Result<_>>()?;
        Ok(Presentation { generators, relations, map })
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relations(&self) -> &[usize] {
        &self.relations
    }

    pub fn map(&self) -> &StableHom {
        &self.map
    }

    /// Smallest level at which the presentation instantiates.
    pub fn threshold(&self) -> usize {
        self.map.threshold()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiLevel {
    pub n: usize,
    pub dim: usize,
    /// dim V_n^{S_n}.
    pub invariants: usize,
    /// dim (V_n)_{S_n}.
    pub coinvariants: usize,
}

/// V_n over F_p: its dimension, fixed space and coinvariants.
pub fn instantiate_coker(pres: &Presentation, n: usize, p: Prime) -> Result<FiLevel> {
    let map = concrete_hom(&pres.map, n, Some(p))?;
    let spec = ModuleSpec::Coker(map);
    Ok(FiLevel {
        n,
        dim: module_dim(&spec, p)?,
        invariants: invariants_dim(&spec, p)?,
        coinvariants: coinvariants_dim(&spec, p)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    pub preperiod: usize,
    pub period: u64,
}

/// Smallest power of p, then smallest preperiod, such that the window from the
/// preperiod on repeats with that period and covers at least three periods.
/// `Ok(None)` means no period is visible in the window.
pub fn detect_period(values: &[i64], p: Prime) -> Result<Option<Period>> {
    let len = values.len();
    if len < 3 {
        return Err(Error::WindowTooShort { len });
    }
    let mut t = 1u64;
    while 3 * t as usize <= len {
        let tu = t as usize;
        // the last index that breaks the period bounds the preperiod
        let last_break = (0..len - tu).rev().find(|&i| values[i] != values[i + tu]);
        let preperiod = last_break.map_or(0, |i| i + 1);
        if len - preperiod >= 3 * tu {
            return Ok(Some(Period { preperiod, period: t }));
        }
        t *= p.get() as u64;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivpoly::IvPoly;
    use crate::partition::part;
    use crate::tabloid::StableTabloid;

    fn p(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    fn sum() -> StableTabloid {
        StableTabloid::new(Partition::empty(), part(&[1]), vec![]).unwrap()
    }

    fn aug() -> StableTabloid {
        StableTabloid::new(part(&[1]), Partition::empty(), vec![vec![1]]).unwrap()
    }

    #[test]
    fn trivial_presentation() {
        let pres: Presentation = serde_json::from_str(r#"{"generators":[0],"relations":[],"map":[]}"#).unwrap();
        for n in 1..8 {
            let v = instantiate_coker(&pres, n, p(2)).unwrap();
            assert_eq!((v.dim, v.invariants, v.coinvariants), (1, 1, 1));
        }
    }

    #[test]
    fn coker_of_sum() {
        let pres = Presentation::new(StableHom::basis(&sum())).unwrap();
        for q in [2, 3] {
            for n in 4..=9 {
                let v = instantiate_coker(&pres, n, p(q)).unwrap();
                assert_eq!(v.dim, n - 1);
                assert_eq!(v.invariants, 0);
                assert_eq!(v.coinvariants, usize::from(n % q as usize == 0));
            }
        }
    }

    #[test]
    fn coker_of_aug_vanishes() {
        let pres = Presentation::new(StableHom::basis(&aug())).unwrap();
        for n in 2..8 {
            assert_eq!(instantiate_coker(&pres, n, p(3)).unwrap().dim, 0);
        }
    }

    #[test]
    fn scaled_map() {
        // coker of n·sum: the image vanishes mod p exactly when p | n
        let pres = Presentation::new(StableHom::from_tabloid(&sum(), IvPoly::linear(0))).unwrap();
        for n in 3..9 {
            let v = instantiate_coker(&pres, n, p(2)).unwrap();
            assert_eq!(v.dim, if n % 2 == 0 { n } else { n - 1 });
        }
    }

    #[test]
    fn rejects_non_free_summands() {
        let tau = StableTabloid::identity(&part(&[2]));
        assert!(Presentation::new(StableHom::basis(&tau)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let pres = Presentation::new(StableHom::basis(&sum())).unwrap();
        let json = serde_json::to_string(&pres).unwrap();
        assert!(json.starts_with(r#"{"generators":[1],"relations":[0],"map":[[["#));
        assert_eq!(serde_json::from_str::<Presentation>(&json).unwrap(), pres);
    }

    #[test]
    fn period_examples() {
        assert_eq!(detect_period(&[1, 0, 1, 0, 1, 0], p(2)).unwrap(), Some(Period { preperiod: 0, period: 2 }));
        assert_eq!(detect_period(&[1, 2, 3, 4, 5, 6, 7], p(2)).unwrap(), None);
        assert_eq!(detect_period(&[5, 5, 5], p(3)).unwrap(), Some(Period { preperiod: 0, period: 1 }));
        assert_eq!(detect_period(&[9, 1, 0, 0, 1, 0, 0, 1, 0, 0], p(3)).unwrap(), Some(Period { preperiod: 1, period: 3 }));
        assert!(matches!(detect_period(&[1, 0], p(2)), Err(Error::WindowTooShort { len: 2 })));
    }
}
