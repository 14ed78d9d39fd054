//! Coefficient-ring kernels shared by the exact and residue series types.
//!
//! Every kernel works on plain coefficient slices; the truncation is the
//! slice length. Accumulators let the residue ring defer reductions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::par::{self, Exec};

pub(crate) trait Ring: Sync {
    type Elem: Clone + Send + Sync + PartialEq;
    type Acc;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `Some(+1)` / `Some(-1)` when `x` is `±1`, `None` otherwise.
    fn unit_sign(&self, x: &Self::Elem) -> Option<i8>;

    fn acc(&self, init: &Self::Elem) -> Self::Acc;
    fn acc_zero(&self) -> Self::Acc;
    /// `acc += c * x` for a small integer `c`.
    fn acc_small(&self, acc: &mut Self::Acc, x: &Self::Elem, c: i64);
    /// `acc += x * y`.
    fn acc_prod(&self, acc: &mut Self::Acc, x: &Self::Elem, y: &Self::Elem);
    fn finish(&self, acc: Self::Acc) -> Self::Elem;
}

pub(crate) struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    type Acc = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn unit_sign(&self, x: &BigInt) -> Option<i8> {
        if x.is_one() {
            Some(1)
        } else if x.abs().is_one() {
            Some(-1)
        } else {
            None
        }
    }
    fn acc(&self, init: &BigInt) -> BigInt {
        init.clone()
    }
    fn acc_zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn acc_small(&self, acc: &mut BigInt, x: &BigInt, c: i64) {
        match c {
            0 => {}
            1 => *acc += x,
            -1 => *acc -= x,
            _ => *acc += x * c,
        }
    }
    fn acc_prod(&self, acc: &mut BigInt, x: &BigInt, y: &BigInt) {
        *acc += x * y;
    }
    fn finish(&self, acc: BigInt) -> BigInt {
        acc
    }
}

/// Integers modulo `m`, elements kept canonical in `[0, m)`.
pub(crate) struct Residues {
    pub m: u64,
}

/// Sums of small multiples and of products before a single reduction.
pub(crate) enum ResidueAcc {
    Signed(i128),
    Wide(u128),
}

impl Residues {
    pub fn new(m: u64) -> Self {
        Residues { m }
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.m as i128) as u64
    }

    /// Products of two residues fit in 64 bits, so a u128 sum never overflows.
    fn small_modulus(&self) -> bool {
        self.m <= u32::MAX as u64
    }
}

impl Ring for Residues {
    type Elem = u64;
    type Acc = ResidueAcc;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn unit_sign(&self, x: &u64) -> Option<i8> {
        if *x == 1 % self.m {
            Some(1)
        } else if *x == self.m - 1 {
            Some(-1)
        } else {
            None
        }
    }
    fn acc(&self, init: &u64) -> ResidueAcc {
        ResidueAcc::Signed(*init as i128)
    }
    fn acc_zero(&self) -> ResidueAcc {
        ResidueAcc::Wide(0)
    }
    fn acc_small(&self, acc: &mut ResidueAcc, x: &u64, c: i64) {
        match acc {
            ResidueAcc::Signed(v) => *v += (*x as i128) * (c as i128),
            ResidueAcc::Wide(v) => {
                let s = (c as i128).rem_euclid(self.m as i128) as u128;
                *v += (*x as u128) * s % self.m as u128;
            }
        }
    }
    fn acc_prod(&self, acc: &mut ResidueAcc, x: &u64, y: &u64) {
        let p = (*x as u128) * (*y as u128);
        let p = if self.small_modulus() {
            p
        } else {
            p % self.m as u128
        };
        match acc {
            ResidueAcc::Wide(v) => *v += p,
            ResidueAcc::Signed(v) => *v += p as i128,
        }
    }
    fn finish(&self, acc: ResidueAcc) -> u64 {
        match acc {
            ResidueAcc::Signed(v) => self.reduce_i128(v),
            ResidueAcc::Wide(v) => (v % self.m as u128) as u64,
        }
    }
}

/// A unit-constant sparse series `1 + Σ c_j q^{e_j}` with small coefficients.
#[derive(Debug, Clone)]
pub(crate) struct SparseFactor {
    /// `(exponent, coefficient)` sorted by exponent; the leading `(0, 1)` is omitted.
    pub tail: Vec<(usize, i64)>,
}

impl SparseFactor {
    /// Pentagonal expansion of `f_k = Π (1 - q^{kn})` below `trunc`.
    pub fn euler(k: usize, trunc: usize) -> Self {
        let mut tail = Vec::new();
        let mut j: usize = 1;
        loop {
            let sign = if j % 2 == 1 { -1 } else { 1 };
            let lo = k * (j * (3 * j - 1) / 2);
            if lo >= trunc {
                break;
            }
            tail.push((lo, sign));
            let hi = k * (j * (3 * j + 1) / 2);
            if hi < trunc {
                tail.push((hi, sign));
            }
            j += 1;
        }
        SparseFactor { tail }
    }

    /// Jacobi's expansion of `f_k^3 = Σ_{n≥0} (-1)^n (2n+1) q^{k n(n+1)/2}`.
    pub fn euler_cubed(k: usize, trunc: usize) -> Self {
        let mut tail = Vec::new();
        let mut n: usize = 1;
        loop {
            let e = k * (n * (n + 1) / 2);
            if e >= trunc {
                break;
            }
            let c = (2 * n + 1) as i64;
            tail.push((e, if n % 2 == 1 { -c } else { c }));
            n += 1;
        }
        SparseFactor { tail }
    }

    pub fn dense<R: Ring>(&self, ring: &R, trunc: usize) -> Vec<R::Elem> {
        let mut out = vec![ring.zero(); trunc];
        out[0] = ring.one();
        for &(e, c) in &self.tail {
            if e < trunc {
                let mut acc = ring.acc_zero();
                ring.acc_small(&mut acc, &ring.one(), c);
                out[e] = ring.finish(acc);
            }
        }
        out
    }
}

/// `a <- a * factor`, in place (descending sweep reads only untouched entries).
pub(crate) fn sparse_mul_in_place<R: Ring>(ring: &R, a: &mut [R::Elem], factor: &SparseFactor) {
    for n in (1..a.len()).rev() {
        let (lower, upper) = a.split_at_mut(n);
        let mut acc = ring.acc(&upper[0]);
        for &(e, c) in &factor.tail {
            if e > n {
                break;
            }
            ring.acc_small(&mut acc, &lower[n - e], c);
        }
        upper[0] = ring.finish(acc);
    }
}

/// `a <- a / factor`, in place (ascending sweep reads finished entries).
pub(crate) fn sparse_div_in_place<R: Ring>(ring: &R, a: &mut [R::Elem], factor: &SparseFactor) {
    for n in 1..a.len() {
        let (lower, upper) = a.split_at_mut(n);
        let mut acc = ring.acc(&upper[0]);
        for &(e, c) in &factor.tail {
            if e > n {
                break;
            }
            ring.acc_small(&mut acc, &lower[n - e], -c);
        }
        upper[0] = ring.finish(acc);
    }
}

/// Multiplies in place by `f_k^r` (division when `r < 0`), batching by cubes.
pub(crate) fn apply_euler_power<R: Ring>(ring: &R, a: &mut [R::Elem], k: usize, r: i64) {
    if r == 0 || a.len() < 2 {
        return;
    }
    let trunc = a.len();
    let count = r.unsigned_abs();
    let cubes = count / 3;
    let singles = count % 3;
    let step = |f: &SparseFactor, a: &mut [R::Elem]| {
        if r > 0 {
            sparse_mul_in_place(ring, a, f)
        } else {
            sparse_div_in_place(ring, a, f)
        }
    };
    if cubes > 0 {
        let f3 = SparseFactor::euler_cubed(k, trunc);
        for _ in 0..cubes {
            step(&f3, a);
        }
    }
    if singles > 0 {
        let f1 = SparseFactor::euler(k, trunc);
        for _ in 0..singles {
            step(&f1, a);
        }
    }
}

/// Truncated Cauchy product of equal-length slices.
pub(crate) fn convolve<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], exec: Exec) -> Vec<R::Elem>
where
    R::Elem: Send + Sync,
{
    let trunc = a.len().min(b.len());
    let a = &a[..trunc];
    let b = &b[..trunc];
    // Skipping zero entries of the sparser operand pays off for eta products.
    let nz_a = a.iter().filter(|x| !ring.is_zero(x)).count();
    let nz_b = b.iter().filter(|x| !ring.is_zero(x)).count();
    let (sparse, dense) = if nz_a <= nz_b { (a, b) } else { (b, a) };
    let support: Vec<usize> = (0..trunc).filter(|&i| !ring.is_zero(&sparse[i])).collect();

    let mut out = vec![ring.zero(); trunc];
    par::fill_indexed(exec, &mut out, |n| {
        let mut acc = ring.acc_zero();
        for &i in &support {
            if i > n {
                break;
            }
            ring.acc_prod(&mut acc, &sparse[i], &dense[n - i]);
        }
        ring.finish(acc)
    });
    out
}

/// Inverse of a series whose constant term is `±1`.
pub(crate) fn invert<R: Ring>(ring: &R, a: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let sign = ring.unit_sign(&a[0])?;
    let trunc = a.len();
    let support: Vec<usize> = (1..trunc).filter(|&j| !ring.is_zero(&a[j])).collect();
    let mut b: Vec<R::Elem> = Vec::with_capacity(trunc);
    b.push(a[0].clone());
    for n in 1..trunc {
        let mut acc = ring.acc_zero();
        for &j in &support {
            if j > n {
                break;
            }
            ring.acc_prod(&mut acc, &a[j], &b[n - j]);
        }
        // b[n] = -a0 * acc with a0 = ±1 its own inverse.
        let s = ring.finish(acc);
        let mut neg = ring.acc_zero();
        ring.acc_small(&mut neg, &s, -(sign as i64));
        b.push(ring.finish(neg));
    }
    Some(b)
}

/// Binary exponentiation for `e >= 0`.
pub(crate) fn power<R: Ring>(ring: &R, a: &[R::Elem], mut e: u64, exec: Exec) -> Vec<R::Elem>
where
    R::Elem: Send + Sync,
{
    let trunc = a.len();
    let mut result = vec![ring.zero(); trunc];
    result[0] = ring.one();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = convolve(ring, &result, &base, exec);
        }
        e >>= 1;
        if e > 0 {
            base = convolve(ring, &base, &base, exec);
        }
    }
    result
}
