//! Computational toolkit for subgroups of finite symplectic similitude
//! groups that contain transvections.

pub mod classify;
pub mod cyclotomic;
pub mod ffield;
pub mod fixture;
pub mod linalg;
pub mod mackey;
pub mod npgroup;
pub mod numth;
pub mod groupkit;
pub mod regularity;
pub mod symplectic;

pub use ffield::{field_make, Elem, FieldElement, FieldSpec};
pub use symplectic::{SqMatrix, Subspace, SympSpace};
pub use cyclotomic::{CycInt, CycRat};
pub use regularity::{NiveauCharacterBig, NiveauCharacterU128};
