//! Exact arithmetic for residue fields and complete dyadic valued fields.

pub mod field;
pub mod gf;
pub mod ratfn;
pub mod residue;

pub use field::{Elem, Field, FieldKind, Val, DEFAULT_PRECISION, EXACT};
pub use gf::Gf;
pub use ratfn::{Poly, RatFn};
pub use residue::{RVal, Res, ResidueField, DEFAULT_DEGREE_CAP};

use crate::error::{Error, Result};

/// Largest precision the retry protocol will try.
pub const MAX_PRECISION: u32 = 4096;

/// Runs `job` at the field's precision, doubling it whenever the job
/// reports `PrecisionExhausted`. Returns the result and the field used.
pub fn with_precision_retry<T>(
    field: Field,
    max_prec: u32,
    mut job: impl FnMut(Field) -> Result<T>,
) -> Result<(T, Field)> {
    let mut f = field;
    loop {
        match job(f) {
            Err(Error::PrecisionExhausted(msg)) => {
                if f.prec() >= max_prec {
                    return Err(Error::PrecisionExhausted(msg));
                }
                f = f.with_precision((f.prec() * 2).min(max_prec));
            }
            other => return other.map(|t| (t, f)),
        }
    }
}
