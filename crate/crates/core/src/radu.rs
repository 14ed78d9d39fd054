//! Radu's finite verification for eta-quotient congruences.
//!
//! Given a tuple in Δ*, a witness `r'` and double-coset representatives with
//! `p + p' >= 0`, a congruence `A(mn + t') ≡ 0 (mod u)` for all `t'` in `P(t)`
//! follows from checking `0 <= n <= ⌊ν⌋`. [`radu_verify`] runs every step
//! and records all inputs in a [`RaduCertificate`].

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    divisors, factorize, is_squarefree, prime_divisors, rational, rational_str, Rational,
};
use crate::congruence::Coefficients;
use crate::series::{eta_quotient_mod, eta_quotient_series, EtaExponentMap};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaduTuple {
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub t: u64,
    pub r: EtaExponentMap,
}

impl RaduTuple {
    pub fn new(m: u64, big_m: u64, big_n: u64, t: u64, r: EtaExponentMap) -> Result<Self> {
        let tuple = RaduTuple {
            m,
            big_m,
            big_n,
            t,
            r,
        };
        tuple.validate()?;
        Ok(tuple)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.big_m == 0 || self.big_n == 0 {
            return Err(Error::invalid("m, M and N must be positive"));
        }
        if self.t >= self.m {
            return Err(Error::invalid(format!(
                "t = {} must be below m = {}",
                self.t, self.m
            )));
        }
        if !self.r.all_divide(self.big_m) {
            return Err(Error::invalid(format!(
                "exponent map {} has a key not dividing M = {}",
                self.r, self.big_m
            )));
        }
        Ok(())
    }

    /// `(8, 4, 4, t, {1: -2K, 2: 3K, 4: -K})` with `K = 2^i r`.
    pub fn opt_family(i: u32, r: u64, t: u64) -> Result<Self> {
        let k = family_k(i, r)?;
        RaduTuple::new(
            8,
            4,
            4,
            t,
            EtaExponentMap::new([(1, -2 * k), (2, 3 * k), (4, -k)])?,
        )
    }

    fn k(&self) -> u64 {
        (self.m * self.m - 1).gcd(&24)
    }
}

fn family_k(i: u32, r: u64) -> Result<i64> {
    1i64.checked_shl(i)
        .and_then(|p| i64::try_from(r).ok().and_then(|r| p.checked_mul(r)))
        .filter(|k| *k > 0 && i < 40)
        .ok_or_else(|| Error::invalid(format!("2^{i}·{r} is out of range")))
}

/// The witness `r' = {1: 6K}` used with [`RaduTuple::opt_family`].
pub fn opt_family_r_prime(i: u32, r: u64) -> Result<EtaExponentMap> {
    EtaExponentMap::new([(1, 6 * family_k(i, r)?)])
}

/// The modulus claimed for residue `t` of the family: `2^{2i+1}` for `t = 2`,
/// `2^{2i+3}` for `t = 4, 6`.
pub fn opt_family_modulus(i: u32, t: u64) -> Result<u64> {
    let e = match t {
        2 => 2 * i + 1,
        4 | 6 => 2 * i + 3,
        _ => {
            return Err(Error::invalid(format!(
                "family residue must be 2, 4 or 6, got {t}"
            )))
        }
    };
    1u64.checked_shl(e)
        .filter(|_| e < 63)
        .ok_or_else(|| Error::invalid("modulus overflows"))
}

/// The six Δ* conditions, each evaluated literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaStarReport {
    /// Prime divisors of `m` divide `N`.
    pub prime_support: bool,
    /// `δ | mN` whenever `r_δ != 0`.
    pub divisor_support: bool,
    /// `24 | kN Σ r_δ mN / δ`.
    pub weighted_sum: bool,
    /// `8 | kN Σ r_δ`.
    pub exponent_sum: bool,
    /// `24m / gcd(-24kt - k Σ δ r_δ, 24m)` divides `N`.
    pub level: bool,
    /// For even `m`: `4 | kN` and `8 | sN`, or `2 | s` and `8 | (1 - j)N`,
    /// where `Π δ^{|r_δ|} = 2^s j`.
    pub parity: bool,
}

impl DeltaStarReport {
    pub fn all(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.prime_support, "prime_support"),
            (self.divisor_support, "divisor_support"),
            (self.weighted_sum, "weighted_sum"),
            (self.exponent_sum, "exponent_sum"),
            (self.level, "level"),
            (self.parity, "parity"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

pub fn delta_star_check(tuple: &RaduTuple) -> DeltaStarReport {
    let m = tuple.m as i128;
    let n = tuple.big_n as i128;
    let k = tuple.k() as i128;
    let prime_support = prime_divisors(tuple.m).iter().all(|p| tuple.big_n % p == 0);
    let divisor_support = tuple
        .r
        .iter()
        .all(|(d, _)| (tuple.m * tuple.big_n) % d == 0);
    let weighted = tuple.r.iter().fold(Rational::zero(), |acc, (d, e)| {
        acc + rational(e as i128 * m * n, d as i128)
    }) * Rational::from(k * n);
    let weighted_sum = weighted.is_integer() && weighted.to_integer() % 24 == 0;
    let exponent_sum = (k * n * tuple.r.exponent_sum() as i128) % 8 == 0;
    let g = (-24 * k * tuple.t as i128 - k * tuple.r.weighted_sum() as i128).gcd(&(24 * m));
    let level = n % (24 * m / g) == 0;
    let parity = if tuple.m % 2 == 0 {
        let mut s: i128 = 0;
        let mut j: i128 = 1;
        for (d, e) in tuple.r.iter() {
            for (p, v) in factorize(d) {
                let times = v as i128 * e.unsigned_abs() as i128;
                if p == 2 {
                    s += times;
                } else {
                    j = j.saturating_mul((p as i128).saturating_pow(times as u32));
                }
            }
        }
        ((k * n) % 4 == 0 && (s * n) % 8 == 0) || (s % 2 == 0 && ((1 - j) * n) % 8 == 0)
    } else {
        true
    };
    DeltaStarReport {
        prime_support,
        divisor_support,
        weighted_sum,
        exponent_sum,
        level,
        parity,
    }
}

/// `{s² mod n : gcd(s, n) = 1}`.
pub fn square_units(n: u64) -> Result<BTreeSet<u64>> {
    if n == 0 {
        return Err(Error::invalid("square_units needs n >= 1"));
    }
    Ok((0..n)
        .filter(|s| s.gcd(&n) == 1)
        .map(|s| ((s as u128 * s as u128) % n as u128) as u64)
        .collect())
}

/// `P(t)`: residues `t' ≡ t s + (s - 1)/24 · Σ δ r_δ (mod m)` over square
/// units `s` modulo `24m`.
pub fn p_set(tuple: &RaduTuple) -> Result<Vec<u64>> {
    let m = tuple.m as i128;
    let weight = tuple.r.weighted_sum() as i128;
    let mut out = BTreeSet::new();
    for s in square_units(24 * tuple.m)? {
        let s = s as i128;
        let shift = rational((s - 1) * weight, 24);
        if !shift.is_integer() {
            return Err(Error::MalformedExponents(format!(
                "(s - 1)/24 · Σ δ r_δ = {shift} is not an integer at s = {s}"
            )));
        }
        out.insert((tuple.t as i128 * s + shift.to_integer()).rem_euclid(m) as u64);
    }
    Ok(out.into_iter().collect())
}

/// The lower-triangular representative `(1 0; δ 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Representatives `(1 0; δ 1)` for `δ | N`, valid when `N` or `N/2` is
/// square-free.
pub fn gamma_reps(n: u64) -> Result<Vec<Gamma>> {
    if n == 0 || !(is_squarefree(n) || (n % 2 == 0 && is_squarefree(n / 2))) {
        return Err(Error::hypothesis(format!(
            "neither {n} nor {n}/2 is square-free"
        )));
    }
    Ok(divisors(n)
        .into_iter()
        .map(|d| Gamma {
            a: 1,
            b: 0,
            c: d as i64,
            d: 1,
        })
        .collect())
}

/// `p(γ) = min_λ (1/24) Σ r_δ gcd(δ(a + kλc), mc)² / (δ m)`.
pub fn p_lower(tuple: &RaduTuple, g: Gamma) -> Rational {
    let m = tuple.m as i128;
    let k = tuple.k() as i128;
    let (a, c) = (g.a as i128, g.c as i128);
    (0..m)
        .map(|lambda| {
            tuple.r.iter().fold(Rational::zero(), |acc, (d, e)| {
                let d = d as i128;
                let h = (d * (a + k * lambda * c)).gcd(&(m * c));
                acc + rational(e as i128 * h * h, d * m)
            }) / 24
        })
        .min()
        .expect("m >= 1")
}

/// `p'(γ) = (1/24) Σ r'_δ gcd(δ, c)² / δ`.
pub fn p_prime(r_prime: &EtaExponentMap, g: Gamma) -> Rational {
    r_prime.iter().fold(Rational::zero(), |acc, (d, e)| {
        let h = (d as i128).gcd(&(g.c as i128));
        acc + rational(e as i128 * h * h, d as i128)
    }) / 24
}

/// `[Γ : Γ_0(N)] = N Π_{ℓ | N} (1 + 1/ℓ)`.
pub fn index_gamma0(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("index_gamma0 needs N >= 1"));
    }
    Ok(prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p + 1)))
}

/// ν evaluated literally from its defining formula.
pub fn nu_bound(tuple: &RaduTuple, r_prime: &EtaExponentMap) -> Result<Rational> {
    let t_min = *p_set(tuple)?.first().expect("P(t) is never empty");
    let m = tuple.m as i128;
    let index = index_gamma0(tuple.big_n)? as i128;
    let sums = (tuple.r.exponent_sum() + r_prime.exponent_sum()) as i128;
    let inner = Rational::from(sums * index)
        - Rational::from(r_prime.weighted_sum() as i128)
        - rational(tuple.r.weighted_sum() as i128, m);
    Ok(inner / 24 - rational(t_min as i128, m))
}

/// The closed form `7K/2 - t/8` stated for [`RaduTuple::opt_family`] with
/// witness [`opt_family_r_prime`], or `None` for any other input.
pub fn nu_family_closed_form(tuple: &RaduTuple, r_prime: &EtaExponentMap) -> Option<Rational> {
    if (tuple.m, tuple.big_m, tuple.big_n) != (8, 4, 4) || tuple.r.len() != 3 {
        return None;
    }
    let k = tuple.r.get(4).checked_neg()?;
    let matches = k > 0
        && k % 2 == 0
        && tuple.r.get(1) == -2 * k
        && tuple.r.get(2) == 3 * k
        && r_prime.len() == 1
        && r_prime.get(1) == 6 * k;
    matches.then(|| rational(7 * k as i128, 2) - rational(tuple.t as i128, 8))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCheck {
    pub delta: u64,
    #[serde(with = "rational_str")]
    pub p: Rational,
    #[serde(with = "rational_str")]
    pub p_prime: Rational,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum RaduStatus {
    Pass,
    /// The finite check found `A(m n + t') ≢ 0 (mod u)`.
    Fail {
        t_prime: u64,
        n: u64,
        residue: u64,
    },
    /// A hypothesis of the method does not hold; nothing is concluded.
    Inapplicable {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaduCertificate {
    pub tuple: RaduTuple,
    pub r_prime: EtaExponentMap,
    pub u: u64,
    pub delta_star: DeltaStarReport,
    pub p_t_set: Vec<u64>,
    pub gamma_checks: Vec<GammaCheck>,
    #[serde(with = "rational_str")]
    pub nu_literal: Rational,
    #[serde(with = "rational_str::option")]
    pub nu_closed_form: Option<Rational>,
    #[serde(with = "rational_str")]
    pub nu_eff: Rational,
    /// `⌊ν_eff⌋`; negative means no prefix term is required.
    pub checked_prefix: i64,
    /// `A(m n + t') mod u` for `0 <= n <= checked_prefix`, keyed by `t'`.
    pub prefix_residues: BTreeMap<u64, Vec<u64>>,
    #[serde(flatten)]
    pub status: RaduStatus,
}

impl RaduCertificate {
    pub fn passed(&self) -> bool {
        self.status == RaduStatus::Pass
    }
}

/// `max(ν literal, closed form)`.
pub fn nu_effective(tuple: &RaduTuple, r_prime: &EtaExponentMap) -> Result<Rational> {
    let literal = nu_bound(tuple, r_prime)?;
    Ok(nu_family_closed_form(tuple, r_prime).map_or(literal, |c| c.max(literal)))
}

/// Series length needed by [`radu_verify_with`].
pub fn required_trunc(tuple: &RaduTuple, r_prime: &EtaExponentMap) -> Result<usize> {
    tuple.validate()?;
    let prefix = nu_effective(tuple, r_prime)?.floor().to_integer().max(-1);
    let t_max = *p_set(tuple)?.last().expect("P(t) is never empty") as i128;
    let needed = (tuple.m as i128 * prefix.max(0) + t_max + 1).to_usize();
    needed.ok_or_else(|| Error::invalid("required truncation overflows"))
}

/// Runs the method with `Π f_δ^{r_δ}` computed here.
pub fn radu_verify(tuple: &RaduTuple, r_prime: &EtaExponentMap, u: u64) -> Result<RaduCertificate> {
    let trunc = required_trunc(tuple, r_prime)?;
    if (2..=crate::series::MAX_MODULUS).contains(&u) {
        radu_verify_with(tuple, r_prime, u, &eta_quotient_mod(&tuple.r, trunc, u)?)
    } else {
        radu_verify_with(tuple, r_prime, u, &eta_quotient_series(&tuple.r, trunc)?)
    }
}

/// Runs the method against caller-supplied coefficients of `Π f_δ^{r_δ}`.
pub fn radu_verify_with<S: Coefficients + ?Sized>(
    tuple: &RaduTuple,
    r_prime: &EtaExponentMap,
    u: u64,
    series: &S,
) -> Result<RaduCertificate> {
    tuple.validate()?;
    if u == 0 {
        return Err(Error::invalid("u must be >= 1"));
    }
    if !r_prime.all_divide(tuple.big_n) {
        return Err(Error::invalid(format!(
            "r' = {r_prime} has a key not dividing N = {}",
            tuple.big_n
        )));
    }
    let needed = required_trunc(tuple, r_prime)?;
    if series.trunc() < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            available: series.trunc(),
        });
    }
    let delta_star = delta_star_check(tuple);
    let p_t_set = p_set(tuple)?;
    let nu_literal = nu_bound(tuple, r_prime)?;
    let nu_closed_form = nu_family_closed_form(tuple, r_prime);
    let nu_eff = nu_effective(tuple, r_prime)?;
    let checked_prefix = nu_eff.floor().to_integer().max(-1) as i64;

    let (gamma_checks, reps_reason) = match gamma_reps(tuple.big_n) {
        Ok(reps) => {
            let checks = reps
                .into_iter()
                .map(|g| {
                    let p = p_lower(tuple, g);
                    let pp = p_prime(r_prime, g);
                    GammaCheck {
                        delta: g.c as u64,
                        p,
                        p_prime: pp,
                        nonnegative: !(p + pp).is_negative(),
                    }
                })
                .collect();
            (checks, None)
        }
        Err(e) => (Vec::new(), Some(e.to_string())),
    };

    let mut prefix_residues = BTreeMap::new();
    let mut failure = None;
    for &tp in &p_t_set {
        let mut column = Vec::new();
        for n in 0..=checked_prefix.max(-1) {
            if n < 0 {
                break;
            }
            let residue = if u == 1 {
                0
            } else {
                series.residue((tuple.m * n as u64 + tp) as usize, u)?
            };
            if residue != 0 && failure.is_none() {
                failure = Some(RaduStatus::Fail {
                    t_prime: tp,
                    n: n as u64,
                    residue,
                });
            }
            column.push(residue);
        }
        prefix_residues.insert(tp, column);
    }

    let status = if !delta_star.all() {
        RaduStatus::Inapplicable {
            reason: format!("Δ* fails: {}", delta_star.failures().join(", ")),
        }
    } else if let Some(reason) = reps_reason {
        RaduStatus::Inapplicable { reason }
    } else if let Some(bad) = gamma_checks.iter().find(|g| !g.nonnegative) {
        RaduStatus::Inapplicable {
            reason: format!("p + p' = {} < 0 at δ = {}", bad.p + bad.p_prime, bad.delta),
        }
    } else {
        failure.unwrap_or(RaduStatus::Pass)
    };

    Ok(RaduCertificate {
        tuple: tuple.clone(),
        r_prime: r_prime.clone(),
        u,
        delta_star,
        p_t_set,
        gamma_checks,
        nu_literal,
        nu_closed_form,
        nu_eff,
        checked_prefix,
        prefix_residues,
        status,
    })
}

/// Recomputes a certificate from its recorded inputs and lists every field
/// that differs. An empty list means the certificate stands.
pub fn recheck_certificate(cert: &RaduCertificate) -> Result<Vec<&'static str>> {
    let fresh = radu_verify(&cert.tuple, &cert.r_prime, cert.u)?;
    let mut diffs = Vec::new();
    let mut cmp = |same: bool, name| {
        if !same {
            diffs.push(name);
        }
    };
    cmp(fresh.delta_star == cert.delta_star, "delta_star");
    cmp(fresh.p_t_set == cert.p_t_set, "p_t_set");
    cmp(fresh.gamma_checks == cert.gamma_checks, "gamma_checks");
    cmp(fresh.nu_literal == cert.nu_literal, "nu_literal");
    cmp(
        fresh.nu_closed_form == cert.nu_closed_form,
        "nu_closed_form",
    );
    cmp(fresh.nu_eff == cert.nu_eff, "nu_eff");
    cmp(
        fresh.checked_prefix == cert.checked_prefix,
        "checked_prefix",
    );
    cmp(
        fresh.prefix_residues == cert.prefix_residues,
        "prefix_residues",
    );
    cmp(fresh.status == cert.status, "status");
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optk::opt_series;
    use proptest::prelude::*;

    fn family(i: u32, r: u64, t: u64) -> (RaduTuple, EtaExponentMap) {
        (
            RaduTuple::opt_family(i, r, t).unwrap(),
            opt_family_r_prime(i, r).unwrap(),
        )
    }

    #[test]
    fn tuple_validation() {
        let r = EtaExponentMap::new([(1, -4), (2, 6), (4, -2)]).unwrap();
        assert!(RaduTuple::new(8, 4, 4, 8, r.clone()).is_err());
        assert!(RaduTuple::new(8, 2, 4, 2, r.clone()).is_err());
        assert_eq!(
            RaduTuple::opt_family(1, 1, 2).unwrap(),
            RaduTuple::new(8, 4, 4, 2, r).unwrap()
        );
    }

    #[test]
    fn delta_star_examples() {
        for t in [2, 4, 6] {
            for (i, r) in [(1, 1), (2, 3), (5, 5)] {
                assert!(
                    delta_star_check(&family(i, r, t).0).all(),
                    "i={i} r={r} t={t}"
                );
            }
        }
        // condition 5 at t = 2: 24·8 / gcd(-144, 192) = 192 / 48 = 4
        assert_eq!((-144i64).gcd(&192), 48);
        let r = EtaExponentMap::new([(1, -4), (2, 6), (4, -2)]).unwrap();
        let bad = RaduTuple::new(5, 4, 4, 2, r).unwrap();
        let report = delta_star_check(&bad);
        assert!(!report.prime_support);
        assert!(report.failures().contains(&"prime_support"));
    }

    #[test]
    fn square_unit_examples() {
        assert_eq!(square_units(8).unwrap(), BTreeSet::from([1]));
        assert_eq!(square_units(24).unwrap(), BTreeSet::from([1]));
        let s192 = square_units(192).unwrap();
        assert!(s192.iter().all(|s| s % 8 == 1));
        // brute force: s² for every unit
        let brute: BTreeSet<u64> = (1..192u64)
            .filter(|s| s.gcd(&192) == 1)
            .map(|s| s * s % 192)
            .collect();
        assert_eq!(s192, brute);
        assert!(square_units(0).is_err());
    }

    #[test]
    fn p_set_examples() {
        for t in [2, 4, 6] {
            assert_eq!(p_set(&family(1, 1, t).0).unwrap(), vec![t]);
        }
        let one =
            RaduTuple::new(1, 2, 2, 0, EtaExponentMap::new([(1, 3), (2, -1)]).unwrap()).unwrap();
        assert_eq!(p_set(&one).unwrap(), vec![0]);
        // f_1^{-1}: Σ δ r_δ = -1, so t' ≡ 5 s - (s - 1)/24 (mod 7) over s ∈ S_168
        let p = RaduTuple::new(7, 1, 7, 5, EtaExponentMap::new([(1, -1)]).unwrap()).unwrap();
        assert_eq!(p_set(&p).unwrap(), vec![5]);
    }

    #[test]
    fn square_units_mod_24m_are_one_mod_24() {
        for m in 1..=40 {
            assert!(
                square_units(24 * m).unwrap().iter().all(|s| s % 24 == 1),
                "m = {m}"
            );
        }
        let r = EtaExponentMap::new([(1, 1)]).unwrap();
        assert!(p_set(&RaduTuple::new(5, 1, 5, 1, r).unwrap()).is_ok());
    }

    #[test]
    fn gamma_rep_examples() {
        let deltas = |n| {
            gamma_reps(n)
                .unwrap()
                .iter()
                .map(|g| g.c as u64)
                .collect::<Vec<_>>()
        };
        assert_eq!(deltas(4), vec![1, 2, 4]);
        assert_eq!(deltas(6), vec![1, 2, 3, 6]);
        assert!(gamma_reps(16).is_err());
        assert!(gamma_reps(12).is_ok());
    }

    #[test]
    fn p_and_p_prime() {
        let (tuple, rp) = family(1, 1, 2);
        let g = |c| Gamma {
            a: 1,
            b: 0,
            c,
            d: 1,
        };
        assert_eq!(p_prime(&rp, g(1)), rational(1, 2));
        assert_eq!(p_lower(&tuple, g(1)), rational(-1, 2));
        for d in [1, 2, 4] {
            assert!(
                !(p_lower(&tuple, g(d)) + p_prime(&rp, g(d))).is_negative(),
                "δ = {d}"
            );
        }
        assert_eq!(
            p_prime(&EtaExponentMap::auxiliary([(1, 0)]).unwrap(), g(3)),
            Rational::zero()
        );
        // c = N: gcd(δ, N)² = δ²
        let wide = EtaExponentMap::new([(1, 2), (2, 4), (4, 8)]).unwrap();
        assert_eq!(p_prime(&wide, g(4)), rational(2 + 4 * 2 + 8 * 4, 24));
        let single =
            RaduTuple::new(1, 2, 2, 0, EtaExponentMap::new([(1, 3), (2, -1)]).unwrap()).unwrap();
        // m = 1 leaves λ = 0 only: (3 - 1/2) / 24
        assert_eq!(p_lower(&single, g(1)), rational(5, 48));
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_gamma0(4).unwrap(), 6);
        assert_eq!(index_gamma0(1).unwrap(), 1);
        // 768 = 2^8 · 3, so 768 · (3/2) · (4/3)
        assert_eq!(index_gamma0(768).unwrap(), 1536);
        assert!(index_gamma0(0).is_err());
        // the index counts points of the projective line over Z/N
        for n in 1..=60u64 {
            let mut points = BTreeSet::new();
            for c in 0..n {
                for d in 0..n {
                    if c.gcd(&d).gcd(&n) != 1 {
                        continue;
                    }
                    let class: BTreeSet<(u64, u64)> = (1..=n)
                        .filter(|u| u.gcd(&n) == 1)
                        .map(|u| (u * c % n, u * d % n))
                        .collect();
                    points.insert(class.into_iter().next().unwrap());
                }
            }
            assert_eq!(index_gamma0(n).unwrap(), points.len() as u64, "N = {n}");
        }
    }

    #[test]
    fn nu_examples() {
        let (tuple, rp) = family(1, 1, 2);
        // (1/24)(12·6 - 12 - 0) - 2/8
        assert_eq!(nu_bound(&tuple, &rp).unwrap(), rational(9, 4));
        assert_eq!(nu_family_closed_form(&tuple, &rp), Some(rational(27, 4)));
        assert_eq!(nu_effective(&tuple, &rp).unwrap(), rational(27, 4));
        for i in 1..=5 {
            for r in [1, 3, 5] {
                let (tuple, rp) = family(i, r, 4);
                let k = (1i128 << i) * r as i128;
                assert_eq!(
                    nu_bound(&tuple, &rp).unwrap(),
                    rational(5 * k, 4) - rational(1, 2)
                );
                assert_eq!(
                    nu_family_closed_form(&tuple, &rp).unwrap(),
                    rational(14 * k, 4) - rational(1, 2)
                );
            }
        }
        // Σ r_δ = 0 and r' = 0 leave -(1/24m) Σ δ r_δ
        let zero = EtaExponentMap::auxiliary([(1, 0)]).unwrap();
        let flat =
            RaduTuple::new(3, 2, 6, 0, EtaExponentMap::new([(1, 2), (2, -2)]).unwrap()).unwrap();
        assert_eq!(p_set(&flat).unwrap()[0], 0);
        assert_eq!(nu_bound(&flat, &zero).unwrap(), rational(2, 24 * 3));
        assert_eq!(nu_family_closed_form(&flat, &zero), None);
    }

    #[test]
    fn family_certificates_pass() {
        for i in 1..=3 {
            for r in [1, 3] {
                for t in [2, 4, 6] {
                    let (tuple, rp) = family(i, r, t);
                    let cert = radu_verify(&tuple, &rp, opt_family_modulus(i, t).unwrap()).unwrap();
                    assert!(cert.passed(), "i={i} r={r} t={t}: {:?}", cert.status);
                    assert!(recheck_certificate(&cert).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn stronger_modulus_fails() {
        let (tuple, rp) = family(1, 1, 2);
        let cert = radu_verify(&tuple, &rp, 16).unwrap();
        assert!(matches!(cert.status, RaduStatus::Fail { t_prime: 2, .. }));
    }

    #[test]
    fn inapplicable_tuples() {
        let r = EtaExponentMap::new([(1, -4), (2, 6), (4, -2)]).unwrap();
        let bad = RaduTuple::new(5, 4, 4, 2, r.clone()).unwrap();
        let cert = radu_verify(&bad, &opt_family_r_prime(1, 1).unwrap(), 8).unwrap();
        assert!(
            matches!(&cert.status, RaduStatus::Inapplicable { reason } if reason.contains("prime_support"))
        );
        let wide = RaduTuple::new(8, 4, 16, 2, r).unwrap();
        let cert = radu_verify(&wide, &opt_family_r_prime(1, 1).unwrap(), 8).unwrap();
        assert!(
            matches!(&cert.status, RaduStatus::Inapplicable { reason } if reason.contains("square-free"))
        );
        let (tuple, _) = family(1, 1, 2);
        let negative = EtaExponentMap::new([(1, -12)]).unwrap();
        let cert = radu_verify(&tuple, &negative, 8).unwrap();
        assert!(
            matches!(&cert.status, RaduStatus::Inapplicable { reason } if reason.contains("p + p'"))
        );
    }

    #[test]
    fn provider_and_exact_paths_agree() {
        let (tuple, rp) = family(2, 1, 6);
        let needed = required_trunc(&tuple, &rp).unwrap();
        let exact = opt_series(8, needed).unwrap();
        let a = radu_verify_with(&tuple, &rp, 128, &exact).unwrap();
        let b = radu_verify(&tuple, &rp, 128).unwrap();
        assert_eq!(a, b);
        let short = opt_series(8, needed - 1).unwrap();
        assert!(matches!(
            radu_verify_with(&tuple, &rp, 128, &short),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn certificate_json_round_trip_and_tamper() {
        let (tuple, rp) = family(2, 3, 4);
        let cert = radu_verify(&tuple, &rp, 128).unwrap();
        let json = serde_json::to_string_pretty(&cert).unwrap();
        assert_eq!(
            json,
            serde_json::to_string_pretty(&radu_verify(&tuple, &rp, 128).unwrap()).unwrap()
        );
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        // K = 12: 7·12/2 - 4/8
        assert_eq!(value["nu_eff"], "83/2");
        assert_eq!(value["tuple"]["M"], 4);
        let back: RaduCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(recheck_certificate(&back).unwrap().is_empty());
        let mut tampered = back;
        tampered.prefix_residues.get_mut(&4).unwrap()[0] = 1;
        assert_eq!(
            recheck_certificate(&tampered).unwrap(),
            vec!["prefix_residues"]
        );
    }

    proptest! {
        #[test]
        fn p_lower_ignores_entry_order(a in -6i64..6, b in -6i64..6, c in -6i64..6, delta in prop::sample::select(vec![1i64, 2, 4])) {
            prop_assume!(a != 0 || b != 0 || c != 0);
            let fwd = EtaExponentMap::new([(1, a), (2, b), (4, c)]).unwrap();
            let rev = EtaExponentMap::new([(4, c), (2, b), (1, a)]).unwrap();
            let g = Gamma { a: 1, b: 0, c: delta, d: 1 };
            let t1 = RaduTuple::new(8, 4, 4, 2, fwd).unwrap();
            let t2 = RaduTuple::new(8, 4, 4, 2, rev).unwrap();
            prop_assert_eq!(p_lower(&t1, g), p_lower(&t2, g));
        }

        #[test]
        fn p_set_contains_t_when_weight_divisible(t in 0u64..8, k in 1i64..6) {
            let r = EtaExponentMap::new([(1, -2 * k), (2, 3 * k), (4, -k)]).unwrap();
            let tuple = RaduTuple::new(8, 4, 4, t, r).unwrap();
            prop_assert!(p_set(&tuple).unwrap().contains(&t));
        }
    }
}
