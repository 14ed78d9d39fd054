//! Truncated formal power series over the integers.
//!
//! A [`TruncatedSeries`] of truncation `T` stores exactly the coefficients of
//! `q^0 .. q^{T-1}`; nothing is known beyond. Binary operations return the
//! smaller of the two truncations. [`ModSeries`] is the same object with
//! coefficients reduced modulo a machine-word modulus, used when only
//! residues are needed.

mod eta;
mod io;
pub(crate) mod kernel;
mod modular;

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::par::Exec;
use crate::{Error, Result};

pub use eta::{eta_quotient_mod, eta_quotient_series, EtaExponentMap};
pub use modular::{euler_product_mod, ModSeries, MAX_MODULUS};

use kernel::{Integers, SparseFactor};

/// Default cap on any single truncation, in coefficients.
pub const DEFAULT_MAX_TRUNC: usize = 2_000_000;

static MAX_TRUNC: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TRUNC);

/// Current process-wide truncation cap.
pub fn max_trunc() -> usize {
    MAX_TRUNC.load(Ordering::Relaxed)
}

pub fn set_max_trunc(limit: usize) {
    MAX_TRUNC.store(limit.max(1), Ordering::Relaxed);
}

/// Fails fast when `trunc` exceeds the cap, reporting the size needed.
pub fn check_trunc(trunc: usize) -> Result<()> {
    let max = max_trunc();
    if trunc > max {
        return Err(Error::TruncationLimit { needed: trunc, max });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs truncation >= 1"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(trunc: usize) -> Result<Self> {
        check_trunc(trunc)?;
        Self::new(vec![BigInt::zero(); trunc])
    }

    pub fn one(trunc: usize) -> Result<Self> {
        let mut s = Self::zero(trunc)?;
        s.coeffs[0] = BigInt::one();
        Ok(s)
    }

    /// `c * q^e` to truncation `trunc` (zero if `e >= trunc`).
    pub fn monomial(c: impl Into<BigInt>, e: usize, trunc: usize) -> Result<Self> {
        let mut s = Self::zero(trunc)?;
        if e < trunc {
            s.coeffs[e] = c.into();
        }
        Ok(s)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Forgets coefficients at and above `trunc`.
    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc == 0 || trunc > self.trunc() {
            return Err(Error::invalid(format!(
                "cannot truncate a series of truncation {} to {trunc}",
                self.trunc()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..trunc].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        let coeffs = (0..t).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        let coeffs = (0..t).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `q^s`; the truncation is unchanged.
    pub fn shift(&self, s: usize) -> Self {
        let t = self.trunc();
        let mut coeffs = vec![BigInt::zero(); t];
        for (i, c) in self.coeffs.iter().enumerate().take(t.saturating_sub(s)) {
            coeffs[i + s] = c.clone();
        }
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, Exec::auto())
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        TruncatedSeries {
            coeffs: kernel::convolve(&Integers, &self.coeffs, &other.coeffs, exec),
        }
    }

    /// Two-sided inverse; requires constant term `±1`.
    pub fn inverse(&self) -> Result<Self> {
        kernel::invert(&Integers, &self.coeffs)
            .map(|coeffs| TruncatedSeries { coeffs })
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].to_string()))
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let coeffs = kernel::power(&Integers, &base.coeffs, e.unsigned_abs(), Exec::auto());
        Ok(TruncatedSeries { coeffs })
    }

    /// Substitutes `q -> q^s`. The new truncation is `trunc * s`, capped at
    /// [`max_trunc`].
    pub fn inflate(&self, s: usize) -> Result<Self> {
        self.inflate_capped(s, max_trunc())
    }

    /// [`inflate`](Self::inflate) with an explicit cap on the output truncation.
    pub fn inflate_capped(&self, s: usize, cap: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::invalid("inflation factor must be >= 1"));
        }
        let t = self.trunc().saturating_mul(s).min(cap.max(1));
        let mut coeffs = vec![BigInt::zero(); t];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(s) {
                Some(e) if e < t => coeffs[e] = c.clone(),
                _ => break,
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// The progression `n -> a[m n + t]`, of truncation `ceil((T - t) / m)`.
    pub fn extract_ap(&self, m: usize, t: usize) -> Result<Self> {
        let coeffs = extract_ap_slice(&self.coeffs, m, t)?;
        Ok(TruncatedSeries { coeffs })
    }

    /// Canonical residues in `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid("modulus must be >= 2"));
        }
        let m = BigInt::from(modulus);
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(&m)).collect(),
        })
    }

    pub fn to_mod(&self, modulus: u64) -> Result<ModSeries> {
        ModSeries::from_series(self, modulus)
    }
}

pub(crate) fn extract_ap_slice<T: Clone>(a: &[T], m: usize, t: usize) -> Result<Vec<T>> {
    if m == 0 {
        return Err(Error::invalid("progression modulus must be >= 1"));
    }
    if t >= m {
        return Err(Error::invalid(format!("residue {t} must be < modulus {m}")));
    }
    if t >= a.len() {
        return Err(Error::InsufficientTruncation {
            needed: t,
            available: a.len(),
        });
    }
    Ok(a.iter().skip(t).step_by(m).cloned().collect())
}

/// `f_k = (q^k; q^k)_∞` to truncation `trunc`, from the pentagonal number
/// theorem.
pub fn euler_product(k: usize, trunc: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::invalid("euler_product needs k >= 1"));
    }
    if trunc == 0 {
        return Err(Error::invalid("euler_product needs trunc >= 1"));
    }
    check_trunc(trunc)?;
    TruncatedSeries::new(SparseFactor::euler(k, trunc).dense(&Integers, trunc))
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
