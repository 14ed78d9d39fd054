use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::kernel::{self, Integers, Residues};
use super::{check_trunc, ModSeries, TruncatedSeries};
use crate::{Error, Result};

/// Exponents `δ -> r_δ` of a product `Π f_δ^{r_δ}` (or `Π η(δz)^{r_δ}`).
///
/// Keys are distinct positive integers. Maps built with [`new`](Self::new)
/// or parsed with [`FromStr`] carry at least one nonzero exponent;
/// [`auxiliary`](Self::auxiliary) lifts that restriction for witness vectors
/// that may legitimately vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<u64, i64>", into = "BTreeMap<u64, i64>")]
pub struct EtaExponentMap {
    entries: BTreeMap<u64, i64>,
}

impl EtaExponentMap {
    pub fn new(entries: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let map = Self::auxiliary(entries)?;
        if map.entries.values().all(|&r| r == 0) {
            return Err(Error::MalformedExponents("all exponents are zero".into()));
        }
        Ok(map)
    }

    /// Like [`new`](Self::new) but the all-zero map is allowed.
    pub fn auxiliary(entries: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (delta, r) in entries {
            if delta == 0 {
                return Err(Error::MalformedExponents("δ must be positive".into()));
            }
            if map.insert(delta, r).is_some() {
                return Err(Error::MalformedExponents(format!(
                    "δ = {delta} listed twice"
                )));
            }
        }
        Ok(EtaExponentMap { entries: map })
    }

    /// Parses `"1:-4,2:6,4:-2"` without the nonzero requirement.
    pub fn parse_auxiliary(s: &str) -> Result<Self> {
        Self::auxiliary(parse_pairs(s)?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.entries.iter().map(|(&d, &r)| (d, r))
    }

    pub fn get(&self, delta: u64) -> i64 {
        self.entries.get(&delta).copied().unwrap_or(0)
    }

    pub fn deltas(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ r_δ`.
    pub fn exponent_sum(&self) -> i64 {
        self.entries.values().sum()
    }

    /// `Σ δ r_δ`.
    pub fn weighted_sum(&self) -> i64 {
        self.iter().map(|(d, r)| d as i64 * r).sum()
    }

    /// `Σ (n / δ) r_δ`; every δ must divide `n`.
    pub fn dual_weighted_sum(&self, n: u64) -> Result<i64> {
        self.iter()
            .map(|(d, r)| {
                if n % d != 0 {
                    Err(Error::MalformedExponents(format!(
                        "δ = {d} does not divide {n}"
                    )))
                } else {
                    Ok((n / d) as i64 * r)
                }
            })
            .sum()
    }

    pub fn all_divide(&self, n: u64) -> bool {
        self.deltas().all(|d| n % d == 0)
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.values().all(|&r| r == 0)
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, i64)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let (d, r) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `delta:exponent`, got `{item}`")))?;
            let d = d
                .trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("δ `{d}`: {e}")))?;
            let r = r
                .trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("r `{r}`: {e}")))?;
            Ok((d, r))
        })
        .collect()
}

impl FromStr for EtaExponentMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_pairs(s)?)
    }
}

impl fmt::Display for EtaExponentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(d, r)| format!("{d}:{r}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl TryFrom<BTreeMap<u64, i64>> for EtaExponentMap {
    type Error = Error;

    fn try_from(map: BTreeMap<u64, i64>) -> Result<Self> {
        Self::auxiliary(map)
    }
}

impl From<EtaExponentMap> for BTreeMap<u64, i64> {
    fn from(map: EtaExponentMap) -> Self {
        map.entries
    }
}

/// `Π f_δ^{r_δ}` to truncation `trunc`, exactly.
pub fn eta_quotient_series(map: &EtaExponentMap, trunc: usize) -> Result<TruncatedSeries> {
    if trunc == 0 {
        return Err(Error::invalid("truncation must be >= 1"));
    }
    check_trunc(trunc)?;
    let mut coeffs = vec![BigInt::zero(); trunc];
    coeffs[0] = BigInt::one();
    for (delta, r) in map.iter() {
        kernel::apply_euler_power(&Integers, &mut coeffs, delta as usize, r);
    }
    TruncatedSeries::new(coeffs)
}

/// `Π f_δ^{r_δ}` modulo `modulus`, without forming the integer coefficients.
pub fn eta_quotient_mod(map: &EtaExponentMap, trunc: usize, modulus: u64) -> Result<ModSeries> {
    if trunc == 0 {
        return Err(Error::invalid("truncation must be >= 1"));
    }
    check_trunc(trunc)?;
    let mut coeffs = ModSeries::one(modulus, trunc)?.into_coeffs();
    let ring = Residues::new(modulus);
    for (delta, r) in map.iter() {
        kernel::apply_euler_power(&ring, &mut coeffs, delta as usize, r);
    }
    ModSeries::from_canonical(modulus, coeffs)
}
