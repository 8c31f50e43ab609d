//! Exact rational helpers shared by the bound and potential computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(k: impl Into<BigInt>) -> Rational {
    Rational::from_integer(k.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(c, t) / c^t`, the per-vertex weight of the localized bound.
/// Increasing in `c` for `c >= 1`; zero when `c < t`.
pub fn clique_weight(c: usize, t: usize) -> Rational {
    if c == 0 || c < t {
        return Rational::zero();
    }
    Rational::new(binomial(c, t), BigInt::from(c).pow(t as u32))
}

/// Display-only decimal with 10 significant digits.
pub fn to_decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let v = match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => return if r.is_negative() { "-inf".into() } else { "inf".into() },
    };
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.9e}")
    }
}
