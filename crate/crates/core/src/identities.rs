//! Catalog of exact q-series identities: classical 2- and 3-dissections of
//! powers of `f_1`, the cubic theta forms, and the identities relating
//! `OPT_4` to `OPT_8`.
//!
//! Each side is a sum of terms `c · q^s · a(q^3)^e · Π f_δ^{r_δ}`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::series::{eta_quotient_series, EtaExponentMap, TruncatedSeries};
use crate::special::borwein_a;
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub shift: usize,
    /// Power of `a(q^3)`.
    pub borwein3: u32,
    pub factors: EtaExponentMap,
}

impl Term {
    fn new(coeff: i64, shift: usize, factors: &[(u64, i64)]) -> Self {
        Term {
            coeff,
            shift,
            borwein3: 0,
            factors: EtaExponentMap::auxiliary(factors.iter().copied())
                .expect("catalog entries are well formed"),
        }
    }

    fn with_a3(mut self, power: u32) -> Self {
        self.borwein3 = power;
        self
    }

    pub fn expand(&self, trunc: usize) -> Result<TruncatedSeries> {
        let mut s = eta_quotient_series(&self.factors, trunc)?;
        if self.borwein3 > 0 {
            let a3 = borwein_a(3, trunc)?;
            for _ in 0..self.borwein3 {
                s = &s * &a3;
            }
        }
        Ok(s.scale(&BigInt::from(self.coeff)).shift(self.shift))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: &'static str,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

fn expand_side(terms: &[Term], trunc: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(trunc)?;
    for t in terms {
        acc = &acc + &t.expand(trunc)?;
    }
    Ok(acc)
}

impl Identity {
    pub fn sides(&self, trunc: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        Ok((
            expand_side(&self.lhs, trunc)?,
            expand_side(&self.rhs, trunc)?,
        ))
    }

    /// First exponent where the two sides differ, if any.
    pub fn first_mismatch(&self, trunc: usize) -> Result<Option<usize>> {
        let (l, r) = self.sides(trunc)?;
        Ok(l.coeffs().iter().zip(r.coeffs()).position(|(a, b)| a != b))
    }

    pub fn holds(&self, trunc: usize) -> Result<bool> {
        Ok(self.first_mismatch(trunc)?.is_none())
    }
}

fn id(name: &'static str, lhs: Vec<Term>, rhs: Vec<Term>) -> Identity {
    Identity { name, lhs, rhs }
}

/// The two- and three-dissections of `f_1^2`, `1/f_1^2`, `f_1^4`, `1/f_1^4`,
/// `f_1 f_2`, `f_1^3` (twice) and `1/f_1^3`.
pub fn dissection_identities() -> Vec<Identity> {
    let t = Term::new;
    vec![
        id(
            "f1^2 2-dissection",
            vec![t(1, 0, &[(1, 2)])],
            vec![
                t(1, 0, &[(2, 1), (8, 5), (4, -2), (16, -2)]),
                t(-2, 1, &[(2, 1), (16, 2), (8, -1)]),
            ],
        ),
        id(
            "1/f1^2 2-dissection",
            vec![t(1, 0, &[(1, -2)])],
            vec![
                t(1, 0, &[(8, 5), (2, -5), (16, -2)]),
                t(2, 1, &[(4, 2), (16, 2), (2, -5), (8, -1)]),
            ],
        ),
        id(
            "f1^4 2-dissection",
            vec![t(1, 0, &[(1, 4)])],
            vec![
                t(1, 0, &[(4, 10), (2, -2), (8, -4)]),
                t(-4, 1, &[(2, 2), (8, 4), (4, -2)]),
            ],
        ),
        id(
            "1/f1^4 2-dissection",
            vec![t(1, 0, &[(1, -4)])],
            vec![
                t(1, 0, &[(4, 14), (2, -14), (8, -4)]),
                t(4, 1, &[(4, 2), (8, 4), (2, -10)]),
            ],
        ),
        id(
            "f1 f2 3-dissection",
            vec![t(1, 0, &[(1, 1), (2, 1)])],
            vec![
                t(1, 0, &[(6, 1), (9, 4), (3, -1), (18, -2)]),
                t(-1, 1, &[(9, 1), (18, 1)]),
                t(-2, 2, &[(3, 1), (18, 4), (6, -1), (9, -2)]),
            ],
        ),
        id(
            "f1^3 3-dissection",
            vec![t(1, 0, &[(1, 3)])],
            vec![
                t(1, 0, &[(6, 1), (9, 6), (3, -1), (18, -3)]),
                t(-3, 1, &[(9, 3)]),
                t(4, 3, &[(3, 2), (18, 6), (6, -2), (9, -3)]),
            ],
        ),
        id(
            "f1^3 via cubic theta",
            vec![t(1, 0, &[(1, 3)])],
            vec![t(1, 0, &[(3, 1)]).with_a3(1), t(-3, 1, &[(9, 3)])],
        ),
        id(
            "1/f1^3 via cubic theta",
            vec![t(1, 0, &[(1, -3)])],
            vec![
                t(1, 0, &[(9, 3), (3, -10)]).with_a3(2),
                t(3, 1, &[(9, 6), (3, -11)]).with_a3(1),
                t(9, 2, &[(9, 9), (3, -12)]),
            ],
        ),
    ]
}

/// Identities linking the generating functions of `OPT_4` and `OPT_8`.
pub fn opt4_opt8_identities() -> Vec<Identity> {
    let t = Term::new;
    vec![
        id(
            "OPT_4 2-dissection",
            vec![t(1, 0, &[(2, 12), (1, -8), (4, -4)])],
            vec![
                t(1, 0, &[(4, 24), (2, -16), (8, -8)]),
                t(8, 1, &[(4, 12), (2, -12)]),
                t(16, 2, &[(8, 8), (2, -8)]),
            ],
        ),
        id(
            "1/f1^8 2-dissection",
            vec![t(1, 0, &[(1, -8)])],
            vec![
                t(1, 0, &[(4, 28), (2, -28), (8, -8)]),
                t(8, 1, &[(4, 16), (2, -24)]),
                t(16, 2, &[(8, 8), (4, 4), (2, -20)]),
            ],
        ),
        id(
            "f1^8 f4^8 / f2^24 2-dissection",
            vec![t(1, 0, &[(1, 8), (4, 8), (2, -24)])],
            vec![
                t(1, 0, &[(4, 28), (2, -28), (8, -8)]),
                t(-8, 1, &[(4, 16), (2, -24)]),
                t(16, 2, &[(8, 8), (4, 4), (2, -20)]),
            ],
        ),
        id(
            "OPT_8 = 1 + 16q f4^8/f1^8",
            vec![t(1, 0, &[(2, 24), (1, -16), (4, -8)])],
            vec![t(1, 0, &[]), t(16, 1, &[(4, 8), (1, -8)])],
        ),
        id(
            "even part of OPT_4",
            vec![
                t(1, 0, &[(2, 24), (1, -16), (4, -8)]),
                t(16, 1, &[(4, 8), (1, -8)]),
            ],
            vec![t(2, 0, &[(2, 24), (1, -16), (4, -8)]), t(-1, 0, &[])],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optk::opt_series;

    #[test]
    fn dissections_hold() {
        let ids = dissection_identities();
        assert_eq!(ids.len(), 8);
        for identity in &ids {
            assert_eq!(
                identity.first_mismatch(400).unwrap(),
                None,
                "{}",
                identity.name
            );
        }
    }

    #[test]
    fn opt4_opt8_identities_hold() {
        for identity in opt4_opt8_identities() {
            assert_eq!(
                identity.first_mismatch(400).unwrap(),
                None,
                "{}",
                identity.name
            );
        }
    }

    #[test]
    fn even_part_of_opt4_matches_extraction() {
        let t = 600;
        let even = opt_series(4, t).unwrap().extract_ap(2, 0).unwrap();
        let (lhs, _) = opt4_opt8_identities()[4].sides(t / 2).unwrap();
        assert_eq!(even, lhs);
    }

    #[test]
    fn perturbed_identity_is_rejected() {
        let mut broken = dissection_identities().remove(1);
        broken.rhs[1].coeff = 3;
        assert_eq!(broken.first_mismatch(50).unwrap(), Some(1));
    }
}
