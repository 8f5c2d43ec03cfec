//! Finite quantale-valued order structures: quantales, Q-orders, Q-modules,
//! Q-sup-algebras, nuclei, and a mechanical check of the representation of
//! every Q-sup-algebra as a nucleus quotient of its free object.

pub mod algebra;
pub mod corpus;
pub mod lattice;
pub mod module;
pub mod nucleus;
pub mod qorder;
pub mod quantale;
pub mod recheck;
pub mod representation;
pub mod sampling;

pub use algebra::{
    search_homs, AlgebraError, FreeAlgebra, HomKind, OmegaAlgebra, QModuleAlgebra, QSupAlgebra, Signature, Symbol,
};
pub use lattice::{CompleteLattice, FinitePoset, MonotoneMap, OrderError};
pub use module::{ModuleError, ModuleLaws, QModule};
pub use nucleus::{DerivedLaws, Nucleus, NucleusAxiom, NucleusError, Quotient};
pub use qorder::{QOrderError, QOrderedSet, QSubset, QSupLattice};
pub use quantale::{Quantale, QuantaleError};
pub use recheck::{recheck, RecheckItem, RecheckReport};
pub use representation::{
    representation, representation_of_module_algebra, CheckRecord, CrispReport, RepresentationCertificate,
    RepresentationError, Verdict,
};
pub use sampling::{Budget, Coverage, QSubsetSpace};
