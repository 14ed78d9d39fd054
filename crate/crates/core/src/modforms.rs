//! Eta-quotients as modular forms: weight, Nebentypus character, orders at
//! cusps, the forms used for the density results, Hecke operators and
//! divisibility counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    divisors, factorize, is_prime, kronecker, lcm_u, rational, rational_str, Rational,
};
use crate::congruence::Coefficients;
use crate::series::{eta_quotient_mod, eta_quotient_series, EtaExponentMap, TruncatedSeries};
use crate::{Error, Result};

/// `Π_{δ | N} η(δz)^{r_δ}` on `Γ_0(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientForm {
    pub level: u64,
    pub exponents: EtaExponentMap,
}

impl EtaQuotientForm {
    pub fn new(level: u64, exponents: EtaExponentMap) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        if !exponents.all_divide(level) {
            return Err(Error::invalid(format!(
                "exponent map {exponents} has a key not dividing N = {level}"
            )));
        }
        Ok(EtaQuotientForm { level, exponents })
    }

    /// `(1/24) Σ δ r_δ`, the power of `q` the eta prefactors contribute.
    pub fn leading_exponent(&self) -> Rational {
        rational(self.exponents.weighted_sum() as i128, 24)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    #[serde(with = "rational_str")]
    pub weight: Rational,
    /// `Σ δ r_δ ≡ 0 (mod 24)`.
    pub sum_delta: bool,
    /// `Σ (N/δ) r_δ ≡ 0 (mod 24)`.
    pub sum_level: bool,
}

impl WeightReport {
    pub fn all(&self) -> bool {
        self.weight.is_integer() && self.sum_delta && self.sum_level
    }
}

pub fn weight_and_conditions(form: &EtaQuotientForm) -> Result<WeightReport> {
    let e = &form.exponents;
    Ok(WeightReport {
        weight: rational(e.exponent_sum() as i128, 2),
        sum_delta: e.weighted_sum() % 24 == 0,
        sum_level: e.dual_weighted_sum(form.level)? % 24 == 0,
    })
}

/// `(-1)^ℓ Π δ^{r_δ}` kept in factored form; it is rational in general.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discriminant {
    pub negative: bool,
    pub factors: BTreeMap<u64, i64>,
}

impl Discriminant {
    /// The integer with the same Kronecker symbol at every `d` coprime to it:
    /// squares drop out, so each prime keeps its exponent's parity.
    pub fn squarefree_kernel(&self) -> Result<i64> {
        let mut out: i64 = if self.negative { -1 } else { 1 };
        for (&p, &e) in &self.factors {
            if e.rem_euclid(2) == 1 {
                out = out
                    .checked_mul(i64::try_from(p).map_err(|_| Error::invalid("prime too large"))?)
                    .ok_or_else(|| Error::invalid("discriminant kernel overflows i64"))?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, e)| **e != 0)
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        };
        write!(f, "{}{body}", if self.negative { "-" } else { "" })
    }
}

pub fn character_discriminant(form: &EtaQuotientForm) -> Result<Discriminant> {
    let weight = rational(form.exponents.exponent_sum() as i128, 2);
    if !weight.is_integer() {
        return Err(Error::invalid(format!("weight {weight} is not an integer")));
    }
    let mut factors = BTreeMap::new();
    for (delta, r) in form.exponents.iter() {
        for (p, v) in factorize(delta) {
            *factors.entry(p).or_insert(0) += v as i64 * r;
        }
    }
    factors.retain(|_, e| *e != 0);
    Ok(Discriminant {
        negative: weight.to_integer().rem_euclid(2) == 1,
        factors,
    })
}

/// `χ(d)` for `d` coprime to the level.
pub fn character(form: &EtaQuotientForm, d: i64) -> Result<i8> {
    if d == 0 || (d.unsigned_abs()).gcd(&form.level) != 1 {
        return Err(Error::invalid(format!(
            "χ({d}) needs d coprime to N = {}",
            form.level
        )));
    }
    Ok(kronecker(
        character_discriminant(form)?.squarefree_kernel()?,
        d,
    ))
}

/// Order of vanishing at the cusp `c/d`, which depends on `d` only:
/// `(N/24) Σ gcd(d, δ)² r_δ / (gcd(d, N/d) d δ)`.
pub fn cusp_order(form: &EtaQuotientForm, d: u64) -> Result<Rational> {
    let n = form.level;
    if d == 0 || n % d != 0 {
        return Err(Error::invalid(format!("{d} does not divide N = {n}")));
    }
    let (n, d) = (n as i128, d as i128);
    let sum = form
        .exponents
        .iter()
        .fold(Rational::zero(), |acc, (delta, r)| {
            let delta = delta as i128;
            let g = d.gcd(&delta);
            acc + rational(g * g * r as i128, d.gcd(&(n / d)) * d * delta)
        });
    Ok(sum * rational(n, 24))
}

/// Cusp orders keyed by the denominator `d`, with `"p/q"` values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspOrderTable(#[serde(with = "table_str")] pub BTreeMap<u64, Rational>);

mod table_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(t: &BTreeMap<u64, Rational>, s: S) -> Result<S::Ok, S::Error> {
        t.iter()
            .map(|(d, r)| (*d, r.to_string()))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<u64, Rational>, D::Error> {
        BTreeMap::<u64, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                v.parse()
                    .map(|r| (k, r))
                    .map_err(|e| D::Error::custom(format!("`{v}`: {e}")))
            })
            .collect()
    }
}

impl CuspOrderTable {
    pub fn min(&self) -> Option<Rational> {
        self.0.values().min().copied()
    }
}

pub fn is_holomorphic(form: &EtaQuotientForm) -> Result<(bool, CuspOrderTable)> {
    let mut table = BTreeMap::new();
    for d in divisors(form.level) {
        table.insert(d, cusp_order(form, d)?);
    }
    let table = CuspOrderTable(table);
    Ok((table.min().is_none_or(|m| !m.is_negative()), table))
}

/// Everything the CLI reports about a form.
#[derive(Clone, Debug, Serialize)]
pub struct FormAnalysis {
    pub form: EtaQuotientForm,
    pub conditions: WeightReport,
    pub character_discriminant: Option<String>,
    pub cusp_orders: CuspOrderTable,
    pub holomorphic: bool,
}

pub fn analyze(form: &EtaQuotientForm) -> Result<FormAnalysis> {
    let (holomorphic, cusp_orders) = is_holomorphic(form)?;
    Ok(FormAnalysis {
        form: form.clone(),
        conditions: weight_and_conditions(form)?,
        character_discriminant: character_discriminant(form).ok().map(|d| d.to_string()),
        cusp_orders,
        holomorphic,
    })
}

/// `η^{2^{k+1}-6}(24z) η^{9-2^k}(48z) η^{-3}(96z)` on `Γ_0(768)`.
pub fn ck_form(k: u32) -> Result<EtaQuotientForm> {
    if !(1..=40).contains(&k) {
        return Err(Error::invalid(format!("k = {k} outside 1..=40")));
    }
    let two_k = 1i64 << k;
    EtaQuotientForm::new(
        768,
        EtaExponentMap::new([(24, 2 * two_k - 6), (48, 9 - two_k), (96, -3)])?,
    )
}

/// `Σ_δ r_δ gcd(d, δ)² / δ`, which has the sign of the cusp order at `c/d`.
pub fn cusp_inequality_lhs(exponents: &EtaExponentMap, d: u64) -> Rational {
    exponents.iter().fold(Rational::zero(), |acc, (delta, r)| {
        let g = d.gcd(&delta) as i128;
        acc + rational(r as i128 * g * g, delta as i128)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BpkReport {
    pub form: EtaQuotientForm,
    #[serde(with = "rational_str")]
    pub weight: Rational,
    /// Inequality values over the divisors of 768.
    pub divisors_768: CuspOrderTable,
    pub holds_768: bool,
    /// Inequality values over every divisor of the form's level.
    pub divisors_full: CuspOrderTable,
    pub holds_full: bool,
}

/// `η^{p^{a+k}-6}(24z) η^9(48z) η^{-3}(96z) η^{-p^k}(24p^a z)` with the
/// holomorphy inequality evaluated on two divisor sets.
///
/// The level is `lcm(768, 24 p^a)`, the least multiple of 768 that every
/// `δ` divides.
pub fn bpk_form(p: u64, a: u32, k: u32) -> Result<BpkReport> {
    if !is_prime(p) || p == 2 || p == 3 {
        return Err(Error::hypothesis(format!(
            "p = {p} must be a prime other than 2 and 3"
        )));
    }
    if a == 0 || k == 0 {
        return Err(Error::invalid("a and k must be >= 1"));
    }
    let overflow = || Error::invalid("p-power overflows");
    let pa = p.checked_pow(a).ok_or_else(overflow)?;
    let pk = i64::try_from(p.checked_pow(k).ok_or_else(overflow)?).map_err(|_| overflow())?;
    let pak = pk
        .checked_mul(i64::try_from(pa).map_err(|_| overflow())?)
        .ok_or_else(overflow)?;
    let top = 24u64.checked_mul(pa).ok_or_else(overflow)?;
    let exponents = EtaExponentMap::new([(24, pak - 6), (48, 9), (96, -3), (top, -pk)])?;
    let level = lcm_u(768, top);
    let form = EtaQuotientForm::new(level, exponents)?;
    let table = |ds: Vec<u64>| {
        CuspOrderTable(
            ds.into_iter()
                .map(|d| (d, cusp_inequality_lhs(&form.exponents, d)))
                .collect(),
        )
    };
    let divisors_768 = table(divisors(768));
    let divisors_full = table(divisors(level));
    let nonneg = |t: &CuspOrderTable| t.0.values().all(|v| !v.is_negative());
    Ok(BpkReport {
        weight: rational(form.exponents.exponent_sum() as i128, 2),
        holds_768: nonneg(&divisors_768),
        holds_full: nonneg(&divisors_full),
        divisors_768,
        divisors_full,
        form,
    })
}

/// Least `u >= 1` with `(4 p^{k-a} (p^{2a} - 1) - 9) u` an integer `≡ 0 (mod 24)`.
/// When `k < a` the bracket is a fraction and `u` absorbs its denominator.
pub fn min_level_multiplier(p: u64, a: u32, k: u32) -> Result<u64> {
    if !is_prime(p) || p == 3 {
        return Err(Error::hypothesis(format!(
            "p = {p} must be a prime other than 3"
        )));
    }
    let overflow = || Error::invalid("p-power overflows");
    let p = p as i128;
    let p2a = p.checked_pow(2 * a).ok_or_else(overflow)? - 1;
    let scale = if k >= a {
        Rational::from(p.checked_pow(k - a).ok_or_else(overflow)?)
    } else {
        Rational::new(1, p.checked_pow(a - k).ok_or_else(overflow)?)
    };
    let bracket = p2a.checked_mul(4).ok_or_else(overflow)?;
    let value = Rational::new(
        scale.numer().checked_mul(bracket).ok_or_else(overflow)?,
        *scale.denom(),
    ) - 9;
    let (num, den) = (*value.numer(), *value.denom());
    let w = 24 / num.gcd(&24);
    u64::try_from(den * w).map_err(|_| overflow())
}

/// `(f_1² / f_2)^{2^k} ≡ 1 (mod 2^{k+1})` to `trunc`.
pub fn b_unit_check(k: u32, trunc: usize) -> Result<bool> {
    if k > 60 {
        return Err(Error::invalid("k too large"));
    }
    let e = 1i64 << k;
    let s = eta_quotient_mod(
        &EtaExponentMap::new([(1, 2 * e), (2, -e)])?,
        trunc,
        1 << (k + 1),
    )?;
    Ok(is_one(s.coeffs()))
}

/// `f_1^{p^{a+k}} / f_{p^a}^{p^k} ≡ 1 (mod p^{k+1})` to `trunc`.
pub fn a_unit_check(p: u64, a: u32, k: u32, trunc: usize) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let overflow = || Error::invalid("p-power overflows");
    let pa = p.checked_pow(a).ok_or_else(overflow)?;
    let pk = p.checked_pow(k).ok_or_else(overflow)?;
    let modulus = p.checked_pow(k + 1).ok_or_else(overflow)?;
    let pak = i64::try_from(pa.checked_mul(pk).ok_or_else(overflow)?).map_err(|_| overflow())?;
    let map = if pa == 1 {
        EtaExponentMap::auxiliary([(1, pak - pk as i64)])?
    } else {
        EtaExponentMap::new([(1, pak), (pa, -(pk as i64))])?
    };
    if map.is_all_zero() {
        return Ok(true);
    }
    Ok(is_one(eta_quotient_mod(&map, trunc, modulus)?.coeffs()))
}

fn is_one(coeffs: &[u64]) -> bool {
    coeffs.first() == Some(&1) && coeffs[1..].iter().all(|&c| c == 0)
}

/// The default grid of unit reductions: `k <= 6` for the 2-power unit and
/// `(p, a, k)` in `{5, 7, 11} × {1, 2} × {1, 2}` for the odd one.
pub fn unit_power_reduction_check(trunc: usize) -> Result<bool> {
    for k in 0..=6 {
        if !b_unit_check(k, trunc)? {
            return Ok(false);
        }
    }
    for p in [5, 7, 11] {
        for a in 1..=2 {
            for k in 1..=2 {
                if !a_unit_check(p, a, k, trunc)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `b(n) = a(pn) + χ(p) p^{ℓ-1} a(n/p)` for `0 <= n < out_trunc`, with
/// `a(n/p) = 0` when `p ∤ n`.
pub fn hecke_tp(
    series: &TruncatedSeries,
    p: u64,
    weight: u32,
    chi_p: i8,
    out_trunc: usize,
) -> Result<TruncatedSeries> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if weight == 0 {
        return Err(Error::invalid("weight must be >= 1"));
    }
    let p = p as usize;
    let needed = p
        .checked_mul(out_trunc.saturating_sub(1))
        .map(|x| x + 1)
        .ok_or_else(|| Error::invalid("overflow"))?;
    if series.trunc() < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            available: series.trunc(),
        });
    }
    let factor = BigInt::from(chi_p) * BigInt::from(p).pow(weight - 1);
    let a = series.coeffs();
    let out = (0..out_trunc)
        .map(|n| {
            let mut b = a[p * n].clone();
            if n % p == 0 {
                b += &factor * &a[n / p];
            }
            b
        })
        .collect();
    TruncatedSeries::new(out)
}

/// The q-expansion of `η(8z) η(16z) = q f_8 f_16`.
pub fn eta8_16_series(trunc: usize) -> Result<TruncatedSeries> {
    Ok(eta_quotient_series(&EtaExponentMap::new([(8, 1), (16, 1)])?, trunc)?.shift(1))
}

/// The form `η(8z) η(16z)` on `Γ_0(128)`.
pub fn eta8_16_form() -> EtaQuotientForm {
    EtaQuotientForm::new(
        128,
        EtaExponentMap::new([(8, 1), (16, 1)]).expect("fixed map"),
    )
    .expect("fixed form")
}

/// `a(n) = 0` for every `n < trunc` with `n ≢ 1 (mod 8)`.
pub fn eta8_16_support_check(trunc: usize) -> Result<bool> {
    let s = eta8_16_series(trunc)?;
    Ok(s.coeffs()
        .iter()
        .enumerate()
        .all(|(n, c)| n % 8 == 1 || c.is_zero()))
}

/// First `n <= n_max` with `a(pn) + χ_1(p) a(n/p) != 0`, for the coefficients
/// of `η(8z) η(16z)`.
pub fn hecke_eigen_check(p: u64, n_max: u64) -> Result<Option<u64>> {
    let form = eta8_16_form();
    let chi = character(&form, p as i64)?;
    let out = usize::try_from(n_max + 1).map_err(|_| Error::invalid("range too large"))?;
    let series = eta8_16_series(p as usize * n_max as usize + 1)?;
    let image = hecke_tp(&series, p, 1, chi, out)?;
    Ok(image
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .map(|n| n as u64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub modulus: u64,
    pub x: u64,
    /// `|{1 <= n <= X : a(n) ≡ 0 (mod modulus)}|`.
    pub divisible: u64,
    pub non_divisible: u64,
    pub proportion: f64,
}

/// Counts `1 <= n <= X` with `a(n) ≡ 0 (mod modulus)`.
pub fn density_scan<S: Coefficients + ?Sized>(
    series: &S,
    modulus: u64,
    x: u64,
) -> Result<DensityReport> {
    if modulus == 0 || x == 0 {
        return Err(Error::invalid("modulus and X must be positive"));
    }
    if (series.trunc() as u64) <= x {
        return Err(Error::InsufficientTruncation {
            needed: x as usize + 1,
            available: series.trunc(),
        });
    }
    let mut divisible = 0;
    for n in 1..=x {
        if modulus == 1 || series.residue(n as usize, modulus)? == 0 {
            divisible += 1;
        }
    }
    Ok(DensityReport {
        modulus,
        x,
        divisible,
        non_divisible: x - divisible,
        proportion: divisible as f64 / x as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::isqrt;
    use crate::optk::{opt_series, opt_series_mod};

    fn form(level: u64, pairs: &[(u64, i64)]) -> EtaQuotientForm {
        EtaQuotientForm::new(level, EtaExponentMap::new(pairs.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn weight_examples() {
        let w = weight_and_conditions(&eta8_16_form()).unwrap();
        assert_eq!(w.weight, Rational::from(1));
        assert!(w.sum_delta && w.sum_level && w.all());
        let opt3 = form(768, &[(24, -6), (48, 9), (96, -3)]);
        let w = weight_and_conditions(&opt3).unwrap();
        assert_eq!(w.weight, Rational::zero());
        assert!(w.sum_delta);
        assert!(EtaExponentMap::new([(24, 0)]).is_err());
        assert!(EtaQuotientForm::new(100, EtaExponentMap::new([(24, 1)]).unwrap()).is_err());
    }

    #[test]
    fn character_examples() {
        let f = eta8_16_form();
        let disc = character_discriminant(&f).unwrap();
        assert_eq!(disc.to_string(), "-2^7");
        assert_eq!(disc.squarefree_kernel().unwrap(), -2);
        assert_eq!(character(&f, 3).unwrap(), 1);
        assert_eq!(character(&f, 1).unwrap(), 1);
        assert!(character(&f, 2).is_err());
        assert!(character(&f, 0).is_err());
        // the kernel only drops squares: compare with the full integer -2^7
        for d in (1..200i64).step_by(2) {
            assert_eq!(character(&f, d).unwrap(), kronecker(-128, d), "d = {d}");
        }
        let odd: Vec<i64> = (1..60).step_by(2).collect();
        for &a in &odd {
            for &b in &odd {
                assert_eq!(
                    character(&f, a * b).unwrap(),
                    character(&f, a).unwrap() * character(&f, b).unwrap()
                );
            }
        }
        let half = form(4, &[(1, 1)]);
        assert!(character_discriminant(&half).is_err());
    }

    #[test]
    fn cusp_examples() {
        let opt3 = form(768, &[(24, -6), (48, 9), (96, -3)]);
        assert_eq!(cusp_order(&opt3, 768).unwrap(), Rational::zero());
        let f = eta8_16_form();
        assert_eq!(cusp_order(&f, 128).unwrap(), Rational::from(1));
        assert!(cusp_order(&f, 3).is_err());
        for g in [
            &opt3,
            &f,
            &ck_form(3).unwrap(),
            &form(12, &[(1, 2), (2, -3), (4, 5), (6, 1)]),
        ] {
            assert_eq!(cusp_order(g, g.level).unwrap(), g.leading_exponent());
        }
        let reordered = form(768, &[(96, -3), (24, -6), (48, 9)]);
        assert_eq!(
            is_holomorphic(&reordered).unwrap(),
            is_holomorphic(&opt3).unwrap()
        );
    }

    #[test]
    fn holomorphy_examples() {
        let (ok, table) = is_holomorphic(&ck_form(2).unwrap()).unwrap();
        assert!(ok);
        assert_eq!(table.0.len(), 18);
        let (ok, table) = is_holomorphic(&form(1, &[(1, -1)])).unwrap();
        assert!(!ok);
        assert_eq!(table.min(), Some(rational(-1, 24)));
        let (ok, table) = is_holomorphic(&ck_form(1).unwrap()).unwrap();
        assert_eq!(ok, !table.min().unwrap().is_negative());
    }

    #[test]
    fn ck_forms() {
        assert_eq!(
            ck_form(1).unwrap().exponents,
            EtaExponentMap::new([(24, -2), (48, 7), (96, -3)]).unwrap()
        );
        for k in 1..=10 {
            let f = ck_form(k).unwrap();
            let w = weight_and_conditions(&f).unwrap();
            assert_eq!(w.weight, Rational::from(1i128 << (k - 1)));
            assert!(w.sum_delta && w.sum_level, "k = {k}");
            let (ok, table) = is_holomorphic(&f).unwrap();
            assert!(ok, "k = {k}");
            // the inequality has the sign of each order
            for (d, order) in &table.0 {
                assert_eq!(
                    order.is_negative(),
                    cusp_inequality_lhs(&f.exponents, *d).is_negative()
                );
            }
        }
        assert!(ck_form(0).is_err());
    }

    #[test]
    fn bpk_examples() {
        for (p, a, k) in [(5, 1, 1), (7, 1, 2)] {
            let r = bpk_form(p, a, k).unwrap();
            assert!(r.holds_768, "({p},{a},{k})");
            assert_eq!(r.divisors_768.0.len(), 18);
            assert_eq!(r.form.level, 768 * p);
            let pk = p.pow(k) as i128;
            assert_eq!(r.weight, rational(pk * (p.pow(a) as i128 - 1), 2));
        }
        assert!(bpk_form(3, 1, 1).is_err());
        assert!(bpk_form(2, 1, 1).is_err());
    }

    #[test]
    fn level_multiplier() {
        assert_eq!(min_level_multiplier(5, 1, 1).unwrap(), 8);
        assert_eq!(min_level_multiplier(7, 1, 1).unwrap(), 8);
        assert!(min_level_multiplier(3, 1, 1).is_err());
        for p in [5u64, 7, 11, 13, 17] {
            for a in 1..=3 {
                for k in a..=4 {
                    let u = min_level_multiplier(p, a, k).unwrap();
                    assert_eq!(24 % u, 0);
                    // brute force over u = 1..24 with the integer bracket
                    let bracket = 4 * (p as i128).pow(k - a) * ((p as i128).pow(2 * a) - 1) - 9;
                    let brute = (1..=24).find(|u| (bracket * u) % 24 == 0).unwrap();
                    assert_eq!(u as i128, brute);
                }
            }
        }
        // k < a: the bracket has denominator p
        assert_eq!(min_level_multiplier(5, 2, 1).unwrap() % 5, 0);
    }

    #[test]
    fn unit_reductions() {
        assert!(b_unit_check(1, 500).unwrap());
        assert!(b_unit_check(0, 500).unwrap());
        assert!(a_unit_check(5, 1, 1, 300).unwrap());
        assert!(unit_power_reduction_check(300).unwrap());
        // one power short fails
        let e = EtaExponentMap::new([(1, 4), (2, -2)]).unwrap();
        assert!(!is_one(eta_quotient_mod(&e, 50, 8).unwrap().coeffs()));
    }

    #[test]
    fn hecke_examples() {
        let s = eta8_16_series(3001).unwrap();
        let f = eta8_16_form();
        let t3 = hecke_tp(&s, 3, 1, character(&f, 3).unwrap(), 1000).unwrap();
        assert!(t3.is_zero());
        let zero = TruncatedSeries::zero(100).unwrap();
        assert!(hecke_tp(&zero, 5, 2, 1, 20).unwrap().is_zero());
        assert!(hecke_tp(&s, 3, 1, 1, 1001).is_ok());
        assert!(hecke_tp(&s, 3, 1, 1, 1002).is_err());
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(hecke_eigen_check(p, 1000).unwrap(), None, "p = {p}");
        }
        // p ≡ 1 (mod 8) has a nonzero eigenvalue a(p)
        assert_eq!(hecke_eigen_check(17, 10).unwrap(), Some(1));
    }

    #[test]
    fn support() {
        let s = eta8_16_series(20).unwrap();
        assert_eq!(s.coeffs()[1], BigInt::from(1));
        assert_eq!(s.coeffs()[2], BigInt::from(0));
        assert!(eta8_16_support_check(8000).unwrap());
    }

    #[test]
    fn mod8_relation_to_opt3() {
        // OPT_3(8n+1) ≡ 6 a(8n+1) (mod 8)
        let o = opt_series(3, 8 * 300 + 2).unwrap();
        let a = eta8_16_series(8 * 300 + 2).unwrap();
        let eight = BigInt::from(8);
        for n in 0..=300 {
            let i = 8 * n + 1;
            let diff = &o.coeffs()[i] - BigInt::from(6) * &a.coeffs()[i];
            assert!((diff % &eight).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn density_examples() {
        for x in [1_000u64, 10_000, 50_000] {
            let s = opt_series_mod(3, x as usize + 1, 4).unwrap();
            let r = density_scan(&s, 4, x).unwrap();
            assert_eq!(r.non_divisible, isqrt(x) + isqrt(x / 2), "X = {x}");
        }
        let s = opt_series_mod(3, 10_001, 16).unwrap();
        assert_eq!(density_scan(&s, 4, 10_000).unwrap().non_divisible, 170);
        assert_eq!(density_scan(&s, 2, 10_000).unwrap().non_divisible, 0);
        // regression floor frozen from the first run
        assert!(density_scan(&s, 16, 10_000).unwrap().divisible >= 6089);
        assert!(density_scan(&s, 2, 10_001).is_err());
    }
}
