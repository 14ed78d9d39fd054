//! Special q-series and helpers used by the dissection identities:
//! Borwein's cubic theta `a(q)`, theta sums over squares, `f_{-k}`,
//! square-type classification and p-adic valuations of binomials.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_square};
use crate::series::{check_trunc, eta_quotient_series, EtaExponentMap, TruncatedSeries};
use crate::{Error, Result};

/// `a(q^scale) = Σ_{j,k ∈ Z} q^{scale (j² + jk + k²)}`.
pub fn borwein_a(scale: usize, trunc: usize) -> Result<TruncatedSeries> {
    if scale == 0 || trunc == 0 {
        return Err(Error::invalid("borwein_a needs scale >= 1 and trunc >= 1"));
    }
    check_trunc(trunc)?;
    // j² + jk + k² >= (3/4) max(j,k)², so |j|, |k| <= sqrt(4 (T-1) / (3 scale)).
    let limit = ((trunc - 1) / scale) as i64;
    let bound = crate::arith::isqrt((4 * limit / 3) as u64) as i64 + 1;
    let mut counts = vec![0u64; trunc];
    for j in -bound..=bound {
        for k in -bound..=bound {
            let q = j * j + j * k + k * k;
            if q <= limit {
                counts[q as usize * scale] += 1;
            }
        }
    }
    TruncatedSeries::new(counts.into_iter().map(BigInt::from).collect())
}

/// `Σ_{n≥1} q^{c n²}` (the `n = 0` term is left out).
pub fn theta_squares(c: usize, trunc: usize) -> Result<TruncatedSeries> {
    if c == 0 || trunc == 0 {
        return Err(Error::invalid("theta_squares needs c >= 1 and trunc >= 1"));
    }
    check_trunc(trunc)?;
    let mut coeffs = vec![BigInt::zero(); trunc];
    let mut n = 1usize;
    while c * n * n < trunc {
        coeffs[c * n * n] = BigInt::from(1);
        n += 1;
    }
    TruncatedSeries::new(coeffs)
}

/// `f_{-k} = (-q^k; -q^k)_∞ = f_{2k}³ / (f_k f_{4k})` for odd `k`.
pub fn f_neg(k: u64, trunc: usize) -> Result<TruncatedSeries> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::invalid(format!(
            "f_neg needs a positive odd k, got {k}"
        )));
    }
    let map = EtaExponentMap::new([(k, -1), (2 * k, 3), (4 * k, -1)])?;
    eta_quotient_series(&map, trunc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareTypeClass {
    Square,
    TwiceSquare,
    FourTimesSquare,
    None,
}

impl SquareTypeClass {
    pub fn is_some(self) -> bool {
        self != SquareTypeClass::None
    }
}

/// Classifies `n >= 1`, preferring square over twice-square over
/// four-times-square. Since `4m² = (2m)²`, the last class is always absorbed
/// by the first and is never returned.
pub fn classify_square_type(n: u64) -> Result<SquareTypeClass> {
    if n == 0 {
        return Err(Error::invalid("classify_square_type is defined for n >= 1"));
    }
    Ok(if is_square(n) {
        SquareTypeClass::Square
    } else if n % 2 == 0 && is_square(n / 2) {
        SquareTypeClass::TwiceSquare
    } else if n % 4 == 0 && is_square(n / 4) {
        SquareTypeClass::FourTimesSquare
    } else {
        SquareTypeClass::None
    })
}

/// `v_p(C(n, k))`, the number of carries when adding `k` and `n - k` in base `p`.
pub fn binom_padic_valuation(n: u64, k: u64, p: u64) -> Result<u32> {
    if k > n {
        return Err(Error::invalid(format!("binomial C({n}, {k}) needs k <= n")));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let (mut a, mut b) = (k, n - k);
    let mut carry = 0;
    let mut carries = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = u64::from(digit >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    Ok(carries)
}

/// First `(m, n)` with `1 <= n <= p^m` and
/// `v_p(C(p^m, n)) + n < m + floor((n-1)/p) + 1`, scanning `m <= m_max`.
///
/// For `p = 2` and `p = 3` this is the binomial bound behind the mod-`2^k`
/// and mod-`3^k` families; `None` means it held everywhere scanned.
pub fn binomial_bound_counterexample(p: u64, m_max: u32) -> Result<Option<(u32, u64)>> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    for m in 0..=m_max {
        let pm = p
            .checked_pow(m)
            .ok_or_else(|| Error::invalid("p^m overflows u64"))?;
        for n in 1..=pm {
            let lhs = u64::from(binom_padic_valuation(pm, n, p)?) + n;
            let rhs = u64::from(m) + (n - 1) / p + 1;
            if lhs < rhs {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}
