//! Cost of preparing the uniform superposition over S_k by amplitude
//! amplification. Formula only; no circuit is built.

use crate::complex::slot_count;
use crate::error::{Error, Result};

/// `n · k · √(C_{k,n} / |S_k|)`.
pub fn grover_prep_cost(n: usize, k: usize, simplices: usize) -> Result<f64> {
    if simplices == 0 {
        return Err(Error::EmptySimplexSet(k));
    }
    let c = slot_count(n, k);
    if simplices > c {
        return Err(Error::InvalidInput(format!("|S_k| = {simplices} exceeds the {c} available slots")));
    }
    Ok((n * k) as f64 * (c as f64 / simplices as f64).sqrt())
}
