//! Exact symbolic engine for braidings of diagonal type and their
//! (pre-)Nichols algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclo`]: arithmetic in cyclotomic fields and q-combinatorics.
//! * [`braiding`]: braiding matrices, Dynkin diagrams, Cartan matrices,
//!   family constructors and finiteness obstructions.
//! * [`weyl`]: reflections, Weyl orbits and root systems.
//! * [`freealg`]: the free algebra as a braided Hopf algebra, plus the
//!   element grammar used by the CLI and the relation catalog.
//! * [`quotient`]: truncated Gröbner bases and everything computed in
//!   quotients (normal forms, graded dimensions, primitivity, centrality).
//! * [`series`]: truncated multivariate Hilbert series.
//! * [`presentations`]: the relation catalog.
//! * [`cli`] and [`replay`]: the command-line front end.

pub mod braiding;
pub mod cli;
pub mod cyclo;
pub mod freealg;
pub mod presentations;
pub mod quotient;
pub mod replay;
pub mod series;
pub mod weyl;

pub use braiding::{BraidingMatrix, CartanEntry, DynkinDiagram, FamilyDescriptor, GeneralizedCartanMatrix};
pub use cyclo::CycScalar;
pub use freealg::{FreeElement, TensorElement, Word};
pub use quotient::{GradedIdeal, GroebnerBasis};
pub use series::TruncatedSeries;
pub use weyl::{Root, RootSystem, WeylOrbit};
