//! Exact computations with the `U_q(gl_m) ⊗ U_q(gl_n)` bimodule structure on the
//! quantum exterior algebra `Λ(C^m ⊗ C^n)` and the quantum matrix algebra.

pub mod bimodule;
pub mod crystal;
pub mod exterior;
pub mod hw_maps;
pub mod linalg;
pub mod qscalar;
pub mod relations;
pub mod report;
pub mod straightening;
pub mod sym;
pub mod tensor;

pub use bimodule::{BasisTuple, BiModule, BiWeight, GenKind, GeneratorId, ModuleShape, Side};
pub use exterior::ColumnSet;
pub use linalg::Vector;
pub use qscalar::{QRat, ScalarError};
pub use report::{Check, CheckReport, Status};
pub use tensor::EquivariantMap;
pub use crystal::{CrystalGraph, SignTable};
pub use hw_maps::{PsiFactory, Shape, Variant};
pub use sym::{DegreeMatrix, SymModule};
