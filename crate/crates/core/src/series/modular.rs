use num_bigint::BigInt;

use super::kernel::{self, Residues, SparseFactor};
use super::{check_trunc, extract_ap_slice, TruncatedSeries};
use crate::par::Exec;
use crate::{Error, Result};

/// A truncated series with coefficients in `Z / mZ`, canonical in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModSeries {
    modulus: u64,
    coeffs: Vec<u64>,
}

/// Largest modulus accepted by the residue path.
pub const MAX_MODULUS: u64 = 1 << 62;

fn check_modulus(modulus: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return Err(Error::invalid(format!(
            "modulus {modulus} outside [2, 2^62]"
        )));
    }
    Ok(())
}

impl ModSeries {
    pub fn from_residues(modulus: u64, values: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i128;
        let coeffs = values
            .iter()
            .map(|&v| (v as i128).rem_euclid(m) as u64)
            .collect();
        Self::from_canonical(modulus, coeffs)
    }

    pub(crate) fn from_canonical(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs truncation >= 1"));
        }
        debug_assert!(coeffs.iter().all(|&c| c < modulus));
        Ok(ModSeries { modulus, coeffs })
    }

    pub fn from_series(s: &TruncatedSeries, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let m = BigInt::from(modulus);
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &m) + &m) % &m;
                u64::try_from(r).expect("residue below a u64 modulus")
            })
            .collect();
        Self::from_canonical(modulus, coeffs)
    }

    pub fn one(modulus: u64, trunc: usize) -> Result<Self> {
        check_modulus(modulus)?;
        check_trunc(trunc)?;
        let mut coeffs = vec![0; trunc.max(1)];
        coeffs[0] = 1;
        Self::from_canonical(modulus, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<u64> {
        self.coeffs.get(n).copied()
    }

    pub(crate) fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    fn ring(&self) -> Residues {
        Residues::new(self.modulus)
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::invalid(format!(
                "moduli differ: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + b as u128) % m as u128) as u64)
            .collect();
        Self::from_canonical(m, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + m as u128 - b as u128) % m as u128) as u64)
            .collect();
        Self::from_canonical(m, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Exec::auto())
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        self.same_modulus(other)?;
        let coeffs = kernel::convolve(&self.ring(), &self.coeffs, &other.coeffs, exec);
        Self::from_canonical(self.modulus, coeffs)
    }

    pub fn inverse(&self) -> Result<Self> {
        let coeffs = kernel::invert(&self.ring(), &self.coeffs)
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].to_string()))?;
        Self::from_canonical(self.modulus, coeffs)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let coeffs = kernel::power(&self.ring(), &base.coeffs, e.unsigned_abs(), Exec::auto());
        Self::from_canonical(self.modulus, coeffs)
    }

    pub fn inflate(&self, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::invalid("inflation factor must be >= 1"));
        }
        let t = self.trunc().saturating_mul(s).min(super::max_trunc());
        let mut coeffs = vec![0; t];
        for (i, &c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(s) {
                Some(e) if e < t => coeffs[e] = c,
                _ => break,
            }
        }
        Self::from_canonical(self.modulus, coeffs)
    }

    pub fn extract_ap(&self, m: usize, t: usize) -> Result<Self> {
        Self::from_canonical(self.modulus, extract_ap_slice(&self.coeffs, m, t)?)
    }

    /// Multiplication by `q^s`, keeping the truncation.
    pub fn shift(&self, s: usize) -> Self {
        let t = self.trunc();
        let mut coeffs = vec![0; t];
        for (i, &c) in self.coeffs.iter().enumerate().take(t.saturating_sub(s)) {
            coeffs[i + s] = c;
        }
        ModSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Re-reduces modulo a divisor of the current modulus.
    pub fn reduce(&self, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        if self.modulus % modulus != 0 {
            return Err(Error::invalid(format!(
                "{modulus} does not divide the working modulus {}",
                self.modulus
            )));
        }
        let coeffs = self.coeffs.iter().map(|&c| c % modulus).collect();
        Self::from_canonical(modulus, coeffs)
    }

    /// Canonical representatives as an integer series.
    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("non-empty by construction")
    }
}

/// `f_k` modulo `modulus`.
pub fn euler_product_mod(k: usize, trunc: usize, modulus: u64) -> Result<ModSeries> {
    if k == 0 || trunc == 0 {
        return Err(Error::invalid(
            "euler_product_mod needs k >= 1 and trunc >= 1",
        ));
    }
    check_modulus(modulus)?;
    check_trunc(trunc)?;
    let ring = Residues::new(modulus);
    ModSeries::from_canonical(modulus, SparseFactor::euler(k, trunc).dense(&ring, trunc))
}
