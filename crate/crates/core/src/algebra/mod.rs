//! Exact arithmetic building blocks.

pub mod det;
pub mod form;
pub mod genus;
pub mod graded;
pub mod linalg;
pub mod mpoly;
pub mod parse;
pub mod ring;
mod roots;
pub mod snf;
pub mod upoly;

pub use form::{binary_gcd, cubic_discriminant, BinaryForm, ProjPoint};
pub use genus::{GenusPoly, GenusPolys};
pub use graded::{GradedClass, RingPresentation};
pub use linalg::Matrix;
pub use ring::{Dual, DualRing, ExactField, Field, PrimeField, Rationals, Ring};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
