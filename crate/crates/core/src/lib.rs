//! Exact structure tables, Hopf axiom verification and automorphism groups
//! for the Suzuki Hopf algebras `A_{Nn}^{μλ}`.

pub mod algebra;
pub mod automorphism;
pub mod error;
pub mod field;
pub mod groups;
pub mod coalgebra;
pub mod hopf;
pub mod linalg;
pub mod morphism;
pub mod parallel;

pub use algebra::{AlgebraParams, BasisIndex, Element, Family, Generator, StructureTables, Word};
pub use error::{Error, Result};
pub use field::{CycNumber, FieldContext, Sign};
pub use hopf::{AxiomReport, HopfTables, TensorElement};
pub use parallel::Exec;
