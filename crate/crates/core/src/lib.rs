//! Stable representation theory of symmetric groups: integer-valued
//! polynomials, stable tabloids, concrete permutation modules, modular
//! decompositions and the stable category of permutation modules.

pub mod error;
pub mod fi;
pub mod ivpoly;
pub mod linalg;
pub mod modoracle;
pub mod partition;
pub mod permrep;
pub mod prime;
pub mod stablecat;
pub mod tabloid;

pub use error::{Error, Result};
pub use fi::{detect_period, instantiate_coker, FiLevel, Period, Presentation};
pub use ivpoly::{IvPoly, PAdicResidue};
pub use linalg::{FpMatrix, Subspace};
pub use modoracle::{MatrixRep, SpechtData};
pub use partition::{Comparison, Composition, Partition};
pub use permrep::{ConcreteMap, SetPartition, SumMap};
pub use prime::Prime;
pub use stablecat::{StableHom, StableObject, StructureTable};
pub use tabloid::{StableTabloid, Tabloid};
