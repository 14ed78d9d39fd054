//! The counting functions `OPT_k(n)` (overpartition k-tuples with odd parts),
//! overpartitions, and an enumeration oracle independent of the series path.

use std::sync::OnceLock;

use crate::series::{
    eta_quotient_mod, eta_quotient_series, EtaExponentMap, ModSeries, TruncatedSeries,
};
use crate::special::{classify_square_type, SquareTypeClass};
use crate::{Error, Result};

/// Largest `n` accepted by [`opt_oracle`].
pub const ORACLE_MAX_N: u64 = 20;
/// Largest `k` accepted by [`opt_oracle`].
pub const ORACLE_MAX_K: u64 = 8;

/// Exponents of `f_2^{3k} / (f_1^{2k} f_4^k)`.
pub fn opt_exponents(k: u64) -> Result<EtaExponentMap> {
    if k == 0 {
        return Err(Error::invalid("OPT_k needs k >= 1"));
    }
    let k = i64::try_from(k).map_err(|_| Error::invalid("k too large"))?;
    EtaExponentMap::new([(1, -2 * k), (2, 3 * k), (4, -k)])
}

/// `Σ OPT_k(n) q^n` to truncation `trunc`.
pub fn opt_series(k: u64, trunc: usize) -> Result<TruncatedSeries> {
    eta_quotient_series(&opt_exponents(k)?, trunc)
}

/// `Σ OPT_k(n) q^n` reduced modulo `modulus`.
pub fn opt_series_mod(k: u64, trunc: usize, modulus: u64) -> Result<ModSeries> {
    eta_quotient_mod(&opt_exponents(k)?, trunc, modulus)
}

/// `Σ p̄(n) q^n = f_2 / f_1²`.
pub fn overpartition_series(trunc: usize) -> Result<TruncatedSeries> {
    eta_quotient_series(&EtaExponentMap::new([(1, -2), (2, 1)])?, trunc)
}

/// Overpartitions of `n` into odd parts, for `n <= ORACLE_MAX_N`.
fn single_coordinate_counts() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Each partition into odd parts contributes 2^(number of distinct parts).
        fn go(rest: u64, largest: u64, distinct: u32, table: &mut [u64], total: u64) {
            if largest == 0 {
                table[total as usize] += 1 << distinct;
                return;
            }
            go(rest, largest.saturating_sub(2), distinct, table, total);
            let mut used = largest;
            while used <= rest {
                go(
                    rest - used,
                    largest.saturating_sub(2),
                    distinct + 1,
                    table,
                    total + used,
                );
                used += largest;
            }
        }
        let n = ORACLE_MAX_N;
        let mut table = vec![0u64; n as usize + 1];
        let top = if n % 2 == 1 { n } else { n - 1 };
        go(n, top, 0, &mut table, 0);
        table
    })
}

/// `OPT_k(n)` by enumerating k-tuples of odd-part overpartitions.
pub fn opt_oracle(k: u64, n: u64) -> Result<u64> {
    if k == 0 || k > ORACLE_MAX_K {
        return Err(Error::invalid(format!(
            "oracle supports 1 <= k <= {ORACLE_MAX_K}, got {k}"
        )));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::invalid(format!(
            "oracle supports n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let single = single_coordinate_counts();
    let n = n as usize;
    // tuples[s] = number of j-tuples with coordinate sum s
    let mut tuples = vec![0u64; n + 1];
    tuples[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; n + 1];
        for (s, &ways) in tuples.iter().enumerate() {
            for (extra, &c) in single.iter().enumerate().take(n + 1 - s) {
                next[s + extra] += ways * c;
            }
        }
        tuples = next;
    }
    Ok(tuples[n])
}

/// `OPT_1(n) mod 4` as predicted by the square / twice-square dichotomy.
pub fn opt1_mod4_class(n: u64) -> Result<u8> {
    Ok(match classify_square_type(n)? {
        SquareTypeClass::Square | SquareTypeClass::TwiceSquare => 2,
        _ => 0,
    })
}

/// The two residues mod 8 allowed for `OPT_1(n)`.
pub fn opt1_mod8_class(n: u64) -> Result<[u8; 2]> {
    Ok(if opt1_mod4_class(n)? == 2 {
        [2, 6]
    } else {
        [0, 4]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn series_examples() {
        for k in 1..=6 {
            assert_eq!(opt_series(k, 5).unwrap().coeffs()[0], BigInt::from(1));
        }
        let o1 = opt_series(1, 6).unwrap();
        assert_eq!(o1, TruncatedSeries::from_i64s(&[1, 2, 2, 4, 6, 8]).unwrap());
        let o3 = opt_series(3, 3).unwrap();
        assert_eq!(o3, TruncatedSeries::from_i64s(&[1, 6, 18]).unwrap());
        assert_eq!(
            opt_series(3, 30)
                .unwrap()
                .extract_ap(3, 2)
                .unwrap()
                .coeffs()[0],
            BigInt::from(18)
        );
        assert!(opt_series(0, 5).is_err());
    }

    #[test]
    fn oracle_examples() {
        for k in 1..=8 {
            assert_eq!(opt_oracle(k, 0).unwrap(), 1);
        }
        assert_eq!(opt_oracle(1, 3).unwrap(), 4);
        assert_eq!(opt_oracle(2, 1).unwrap(), 4);
        assert!(opt_oracle(9, 1).is_err());
        assert!(opt_oracle(1, 21).is_err());
        assert!(opt_oracle(0, 1).is_err());
    }

    #[test]
    fn oracle_matches_series() {
        for k in 1..=4 {
            let s = opt_series(k, 13).unwrap();
            for n in 0..=12 {
                assert_eq!(
                    s.coeffs()[n as usize],
                    BigInt::from(opt_oracle(k, n).unwrap()),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn oracle_is_thread_safe() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| opt_oracle(3, 20).unwrap()))
            .collect();
        let values: Vec<u64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn overpartitions() {
        let s = overpartition_series(300).unwrap();
        assert_eq!(s.coeffs()[0], BigInt::from(1));
        assert_eq!(s.coeffs()[3], BigInt::from(8));
        let two = BigInt::from(2);
        assert!(s.coeffs()[1..]
            .iter()
            .all(|c| (c % &two) == BigInt::from(0)));
    }

    #[test]
    fn opt1_residue_classes() {
        assert_eq!(opt1_mod4_class(1).unwrap(), 2);
        assert_eq!(opt1_mod4_class(2).unwrap(), 2);
        assert_eq!(opt1_mod4_class(3).unwrap(), 0);
        assert_eq!(opt1_mod8_class(4).unwrap(), [2, 6]);
        assert_eq!(opt1_mod8_class(6).unwrap(), [0, 4]);
        assert!(opt1_mod4_class(0).is_err());
        let s = opt_series_mod(1, 2000, 8).unwrap();
        for n in 1..2000u64 {
            let r = s.coeffs()[n as usize] as u8;
            assert!(opt1_mod8_class(n).unwrap().contains(&r), "n = {n}");
            assert_eq!(r % 4, opt1_mod4_class(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn tuple_sizes_multiply() {
        let t = 200;
        for (a, b) in [(1, 2), (3, 4), (2, 6)] {
            let prod = &opt_series(a, t).unwrap() * &opt_series(b, t).unwrap();
            assert_eq!(prod, opt_series(a + b, t).unwrap());
        }
    }

    #[test]
    fn opt4_even_terms_are_twice_opt8() {
        let t = 1000;
        let o4 = opt_series(4, t).unwrap();
        let o8 = opt_series(8, t / 2).unwrap();
        for n in 1..t / 2 {
            assert_eq!(o4.coeffs()[2 * n], &o8.coeffs()[n] * 2, "n = {n}");
        }
    }
}
