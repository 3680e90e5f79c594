//! Exact arithmetic in GF(p^m), relative Frobenius and trace.

mod basis;
mod ext;
mod field;

pub use basis::KBasis;
pub use ext::{BaseEmbedding, ExtDesc};
pub(crate) use field::{is_prime, prime_factors};
pub use field::{make_field, prime_power, ArithOp, FElt, FieldDesc, FieldKey, MAX_ORDER_BITS};
