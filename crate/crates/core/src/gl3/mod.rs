//! GL3 over a finite field: arithmetic, classification, centralizers.

pub mod centralizer;
pub mod classes;
pub mod classify;
pub mod gl2;
pub mod mat;

pub use classes::{conjugacy_classes, ClassData, ClassMode};
pub use classify::{classify, ClassDescriptor, ClassKind};
pub use mat::{group_order, Gl3Mat};
