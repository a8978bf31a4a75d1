//! Power series of `h^(-1/2)` at `x = 0` and their term-wise integrals.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{rat, text, BigRat};
use crate::{Error, RatPoly, Result};

const MAX_ORDER: usize = 64;

/// `sum a_i x^i`, known modulo `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesExpansion {
    #[serde(serialize_with = "text::rats")]
    pub coeffs: Vec<BigRat>,
    pub order: usize,
}

impl SeriesExpansion {
    /// Coefficient of `x^i` (zero past the stored terms).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }
}

/// Expansion of `1 / sqrt(h)` for `h(0) = 1`, to `order` terms.
///
/// From `2 h s' + h' s = 0` with `s_0 = 1`:
/// `(i+1) s_{i+1} = -sum_{j>=1} h_j (i+1-j) s_{i+1-j} - (1/2) sum_{j>=0} (j+1) h_{j+1} s_{i-j}`.
pub fn sqrt_recip_series(h: &RatPoly, order: usize) -> Result<SeriesExpansion> {
    if h.coeff(0) != BigRat::one() {
        return Err(Error::HypothesisViolated("need h(0) = 1".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::cap("series order", order as u64, MAX_ORDER as u64));
    }
    let hc: Vec<BigRat> = (0..=order).map(|i| h.coeff(i)).collect();
    let half = BigRat::new(1.into(), 2.into());
    let mut s: Vec<BigRat> = Vec::with_capacity(order);
    if order > 0 {
        s.push(BigRat::one());
    }
    for i in 0..order.saturating_sub(1) {
        let mut acc = BigRat::zero();
        for j in 1..=i + 1 {
            acc += &hc[j] * rat((i + 1 - j) as i64) * &s[i + 1 - j];
        }
        let mut tail = BigRat::zero();
        for j in 0..=i {
            tail += rat((j + 1) as i64) * &hc[j + 1] * &s[i - j];
        }
        acc += tail * &half;
        s.push(-acc / rat((i + 1) as i64));
    }
    Ok(SeriesExpansion { coeffs: s, order })
}

/// `int_0^x t^k s(t) dt` for `k = 0, 1, 2`: the coefficient of `x^(k+j+1)` is `s_j / (k+j+1)`.
pub fn formal_integrals(s: &SeriesExpansion) -> [SeriesExpansion; 3] {
    std::array::from_fn(|k| {
        let mut coeffs = vec![BigRat::zero(); k + 1];
        for (j, a) in s.coeffs.iter().enumerate() {
            coeffs.push(a / rat((k + j + 1) as i64));
        }
        SeriesExpansion { coeffs, order: s.order + k + 1 }
    })
}
