//! Congruence claims as data, and the engine that checks them.
//!
//! A [`CongruenceClaim`] asserts `OPT_k(m n + t) ≡ 0 (mod u)` for all `n >= 0`.
//! Verification is always over a finite range `0 <= n <= n_max`, and the
//! series is always computed far enough to cover that range exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm_u, pow_mod};
use crate::optk::{opt_series, opt_series_mod};
use crate::par::{self, Exec};
use crate::series::{ModSeries, TruncatedSeries};
use crate::special::classify_square_type;
use crate::{Error, Result};

/// Anything that can report coefficients modulo `u`.
pub trait Coefficients: Sync {
    fn trunc(&self) -> usize;
    /// `a(n) mod u`, or an error when `u` is not representable.
    fn residue(&self, n: usize, u: u64) -> Result<u64>;
}

impl Coefficients for TruncatedSeries {
    fn trunc(&self) -> usize {
        TruncatedSeries::trunc(self)
    }
    fn residue(&self, n: usize, u: u64) -> Result<u64> {
        let r = self.coeffs()[n].mod_floor(&BigInt::from(u));
        Ok(u64::try_from(r).expect("reduced below u"))
    }
}

impl Coefficients for ModSeries {
    fn trunc(&self) -> usize {
        ModSeries::trunc(self)
    }
    fn residue(&self, n: usize, u: u64) -> Result<u64> {
        if self.modulus() % u != 0 {
            return Err(Error::invalid(format!(
                "series is known modulo {}, which {u} does not divide",
                self.modulus()
            )));
        }
        Ok(self.coeffs()[n] % u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// Proved; a failure is a bug.
    Theorem,
    /// Open; scanned and reported, never asserted.
    Conjecture,
    /// A commonly quoted form that is known to be off; reported, never asserted.
    Erratum,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimKind::Theorem => "theorem",
            ClaimKind::Conjecture => "conjecture",
            ClaimKind::Erratum => "erratum",
        })
    }
}

/// The coefficient family a claim is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `OPT_k`.
    Opt { k: u64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Opt { k } => write!(f, "OPT_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub id: String,
    pub family: Family,
    /// Parameter values the family was instantiated with (`i`, `r`, ...).
    pub params: BTreeMap<String, u64>,
    pub m: u64,
    pub t: u64,
    pub u: u64,
    pub kind: ClaimKind,
    /// How the claim is known (or why it is only scanned).
    pub source: String,
    pub default_n_max: u64,
}

impl CongruenceClaim {
    pub fn statement(&self) -> String {
        format!(
            "{}({}n+{}) ≡ 0 (mod {})",
            self.family, self.m, self.t, self.u
        )
    }

    fn k(&self) -> u64 {
        match self.family {
            Family::Opt { k } => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// First failure: progression variable `n`, series index, residue mod `u`.
    Counterexample {
        n: u64,
        index: u64,
        residue: u64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<ClaimKind>,
    /// Largest `n` checked; every `0 <= n <= checked_range` was examined.
    pub checked_range: u64,
    #[serde(flatten)]
    pub status: Status,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Tab-separated: id, kind, checked range, status, n, index, residue, ms.
    pub fn to_tsv(&self) -> String {
        let kind = self
            .kind
            .map(|k| k.to_string())
            .unwrap_or_else(|| "-".into());
        let tail = match &self.status {
            Status::Pass => "pass\t-\t-\t-".to_string(),
            Status::Counterexample { n, index, residue } => {
                format!("counterexample\t{n}\t{index}\t{residue}")
            }
        };
        format!(
            "{}\t{kind}\t{}\t{tail}\t{:.1}",
            self.claim_id, self.checked_range, self.wall_time_ms
        )
    }

    pub const TSV_HEADER: &'static str =
        "claim_id\tkind\tchecked_range\tstatus\tn\tindex\tresidue\twall_time_ms";
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn check_progression<S: Coefficients + ?Sized>(
    series: &S,
    m: u64,
    t: u64,
    u: u64,
    n_max: u64,
) -> Result<Status> {
    if m == 0 || t >= m {
        return Err(Error::invalid(format!(
            "progression needs 0 <= t < m, got m={m}, t={t}"
        )));
    }
    if u < 2 {
        return Err(Error::invalid(format!("modulus must be >= 2, got {u}")));
    }
    let last = m
        .checked_mul(n_max)
        .and_then(|x| x.checked_add(t))
        .ok_or_else(|| Error::invalid("progression index overflows"))?;
    if last as u128 >= series.trunc() as u128 {
        return Err(Error::InsufficientTruncation {
            needed: last as usize + 1,
            available: series.trunc(),
        });
    }
    for n in 0..=n_max {
        let index = m * n + t;
        let residue = series.residue(index as usize, u)?;
        if residue != 0 {
            return Ok(Status::Counterexample { n, index, residue });
        }
    }
    Ok(Status::Pass)
}

/// Checks `a(m n + t) ≡ 0 (mod u)` for `0 <= n <= n_max`.
pub fn verify_ap_congruence<S: Coefficients + ?Sized>(
    series: &S,
    m: u64,
    t: u64,
    u: u64,
    n_max: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let status = check_progression(series, m, t, u, n_max)?;
    Ok(VerificationReport {
        claim_id: format!("{m}n+{t}/mod{u}"),
        kind: None,
        checked_range: n_max,
        status,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Coefficientwise equality to the common truncation.
pub fn verify_identity(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> bool {
    lhs.coeffs().iter().zip(rhs.coeffs()).all(|(a, b)| a == b)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Overrides every claim's default range.
    pub n_max: Option<u64>,
    pub exec: Exec,
}

/// Verifies claims, computing each `OPT_k` once per distinct `k`.
///
/// Groups run in parallel under [`Exec::Parallel`]; the reports come back in
/// the order of `claims` either way.
pub fn verify_claims(
    claims: &[CongruenceClaim],
    opts: EngineOptions,
) -> Result<Vec<VerificationReport>> {
    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, c) in claims.iter().enumerate() {
        groups.entry(c.k()).or_default().push(i);
    }
    let groups: Vec<(u64, Vec<usize>)> = groups.into_iter().collect();
    let results = par::map(opts.exec, &groups, |(k, members)| {
        verify_group(*k, members, claims, opts)
    });
    let mut slots: Vec<Option<VerificationReport>> = vec![None; claims.len()];
    for group in results {
        for (i, report) in group? {
            slots[i] = Some(report);
        }
    }
    Ok(slots
        .into_iter()
        .map(|r| r.expect("every claim belongs to a group"))
        .collect())
}

fn verify_group(
    k: u64,
    members: &[usize],
    claims: &[CongruenceClaim],
    opts: EngineOptions,
) -> Result<Vec<(usize, VerificationReport)>> {
    let start = Instant::now();
    let n_max = |c: &CongruenceClaim| opts.n_max.unwrap_or(c.default_n_max);
    let mut trunc: u64 = 1;
    let mut modulus: u64 = 1;
    let mut fits = true;
    for &i in members {
        let c = &claims[i];
        let last =
            c.m.checked_mul(n_max(c))
                .and_then(|x| x.checked_add(c.t + 1));
        trunc = trunc.max(last.ok_or_else(|| Error::invalid("progression index overflows"))?);
        match modulus.checked_mul(c.u / crate::arith::gcd_u(modulus, c.u)) {
            Some(l) if l <= crate::series::MAX_MODULUS => modulus = l,
            _ => fits = false,
        }
    }
    let trunc = usize::try_from(trunc).map_err(|_| Error::invalid("truncation overflows"))?;
    let series: Box<dyn Coefficients> = if fits && modulus >= 2 {
        Box::new(opt_series_mod(k, trunc, modulus)?)
    } else {
        Box::new(opt_series(k, trunc)?)
    };
    let setup_ms = elapsed_ms(start);
    members
        .iter()
        .map(|&i| {
            let c = &claims[i];
            let t0 = Instant::now();
            let status = check_progression(series.as_ref(), c.m, c.t, c.u, n_max(c))?;
            let report = VerificationReport {
                claim_id: c.id.clone(),
                kind: Some(c.kind),
                checked_range: n_max(c),
                status,
                wall_time_ms: setup_ms + elapsed_ms(t0),
            };
            Ok((i, report))
        })
        .collect()
}

/// Parameter grid for [`theorem_registry`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryGrid {
    /// Truncation target for the fixed-`k` `OPT_3` claims.
    pub opt3_trunc: u64,
    /// `i` range and odd `r` values for the 8n+1 / 4n+3 / 8n+5 family.
    pub even_i_max: u32,
    pub even_r: Vec<u64>,
    pub even_n_max: u64,
    /// `i` range and `r` values for the 8n+2 / 8n+4 / 8n+6 family.
    pub radu_i_max: u32,
    pub radu_r: Vec<u64>,
    pub radu_n_max: u64,
    /// `i` range for `OPT_{3^i}(3n+2)`.
    pub three_i_max: u32,
    pub three_n_max: u64,
    /// Primes for the quadratic non-residue family.
    pub qnr_primes: Vec<u64>,
    /// Prime lists and `j` values for the mod-8 family.
    pub hecke_primes: Vec<Vec<u64>>,
    pub hecke_j: Vec<u64>,
    /// Conjecture grid: `i, j` ranges and the coprime-to-6 multipliers.
    pub conj_i_max: u32,
    pub conj_j_max: u32,
    pub conj_k: Vec<u64>,
    pub conj_n_max: u64,
    /// `i` and `r` values for the strengthened 8n+4 power.
    pub remark_i: Vec<u32>,
    pub remark_r: Vec<u64>,
}

impl Default for RegistryGrid {
    fn default() -> Self {
        RegistryGrid {
            opt3_trunc: 50_000,
            even_i_max: 3,
            even_r: vec![1, 3, 5],
            even_n_max: 2000,
            radu_i_max: 5,
            radu_r: vec![1, 3, 5],
            radu_n_max: 500,
            three_i_max: 3,
            three_n_max: 2000,
            qnr_primes: vec![5, 7, 11, 13],
            hecke_primes: vec![vec![3], vec![5], vec![7], vec![3, 5]],
            hecke_j: vec![1, 2],
            conj_i_max: 2,
            conj_j_max: 2,
            conj_k: vec![1, 5, 7],
            conj_n_max: 500,
            remark_i: vec![2, 4],
            remark_r: vec![1, 3, 5, 7],
        }
    }
}

struct ClaimBuilder<'a> {
    tag: &'a str,
    kind: ClaimKind,
    source: &'a str,
}

impl ClaimBuilder<'_> {
    fn claim(
        &self,
        k: u64,
        m: u64,
        t: u64,
        u: u64,
        n_max: u64,
        params: &[(&str, u64)],
    ) -> CongruenceClaim {
        CongruenceClaim {
            id: format!("{}/opt{k}/{m}n+{t}/mod{u}", self.tag),
            family: Family::Opt { k },
            params: params.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
            m,
            t,
            u,
            kind: self.kind,
            source: self.source.to_string(),
            default_n_max: n_max,
        }
    }
}

fn full_range(trunc: u64, m: u64, t: u64) -> u64 {
    (trunc - 1 - t) / m
}

/// Every congruence of the catalog, parameterised families expanded over
/// `grid`. Ids are unique.
pub fn theorem_registry(grid: &RegistryGrid) -> Vec<CongruenceClaim> {
    let mut out = Vec::new();

    let b = ClaimBuilder {
        tag: "opt3",
        kind: ClaimKind::Theorem,
        source: "proved by 2- and 3-dissection",
    };
    for (m, t, u) in [
        (3, 1, 6),
        (12, 7, 12),
        (12, 10, 12),
        (3, 2, 18),
        (6, 5, 36),
        (24, 23, 144),
    ] {
        out.push(b.claim(3, m, t, u, full_range(grid.opt3_trunc, m, t), &[]));
    }

    let b = ClaimBuilder {
        tag: "opt3-nonresidue",
        kind: ClaimKind::Theorem,
        source: "3pn+R is never a square or twice a square",
    };
    for &p in &grid.qnr_primes {
        for (r, a, big_r) in singlemod_family_members(p).unwrap_or_default() {
            let m = 3 * p;
            let mut c = b.claim(
                3,
                m,
                big_r,
                4,
                full_range(grid.opt3_trunc, m, big_r),
                &[("p", p), ("r", r), ("A", a)],
            );
            c.id = format!("opt3-nonresidue/p{p}-r{r}-A{a}/{m}n+{big_r}/mod4");
            out.push(c);
        }
    }

    let b = ClaimBuilder {
        tag: "even-k",
        kind: ClaimKind::Theorem,
        source: "proved by 2-dissection and binomial bounds",
    };
    for i in 1..=grid.even_i_max {
        for &r in &grid.even_r {
            let k = (1u64 << i) * r;
            let params = [("i", i as u64), ("r", r)];
            out.push(b.claim(k, 8, 1, 1 << (i + 1), grid.even_n_max, &params));
            out.push(b.claim(k, 4, 3, 1 << (i + 3), grid.even_n_max, &params));
            out.push(b.claim(k, 8, 5, 1 << (i + 2), grid.even_n_max, &params));
        }
    }

    let b = ClaimBuilder {
        tag: "even-k-radu",
        kind: ClaimKind::Theorem,
        source: "proved by Radu's finite check",
    };
    for i in 1..=grid.radu_i_max {
        for &r in &grid.radu_r {
            let k = (1u64 << i) * r;
            let params = [("i", i as u64), ("r", r)];
            out.push(b.claim(k, 8, 2, 1 << (2 * i + 1), grid.radu_n_max, &params));
            out.push(b.claim(k, 8, 4, 1 << (2 * i + 3), grid.radu_n_max, &params));
            out.push(b.claim(k, 8, 6, 1 << (2 * i + 3), grid.radu_n_max, &params));
        }
    }

    let b = ClaimBuilder {
        tag: "three-power",
        kind: ClaimKind::Theorem,
        source: "proved by 3-dissection and binomial bounds",
    };
    for i in 1..=grid.three_i_max {
        out.push(b.claim(
            3u64.pow(i),
            3,
            2,
            3u64.pow(i + 1),
            grid.three_n_max,
            &[("i", i as u64)],
        ));
    }

    for (convention, tag, kind, source) in [
        (
            IndexConvention::Derived,
            "opt3-mod8",
            ClaimKind::Theorem,
            "Hecke eigenform eta(8z)eta(16z)",
        ),
        (
            IndexConvention::Stated,
            "opt3-mod8-stated",
            ClaimKind::Erratum,
            "index one larger than the eigenform derivation gives",
        ),
    ] {
        for primes in &grid.hecke_primes {
            for &j in &grid.hecke_j {
                let Ok((m, t)) = mf1_progression(primes, j, convention) else {
                    continue;
                };
                if t >= m {
                    continue;
                }
                let plist = primes
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join("x");
                let mut c = ClaimBuilder { tag, kind, source }.claim(
                    3,
                    m,
                    t,
                    8,
                    full_range(grid.opt3_trunc, m, t),
                    &[("j", j)],
                );
                c.id = format!("{tag}/p{plist}-j{j}/{m}n+{t}/mod8");
                for (idx, p) in primes.iter().enumerate() {
                    c.params.insert(format!("p{}", idx + 1), *p);
                }
                out.push(c);
            }
        }
    }

    let b = ClaimBuilder {
        tag: "conj-8n",
        kind: ClaimKind::Conjecture,
        source: "open conjecture on OPT_{2^i r}",
    };
    for i in 1..=grid.conj_i_max {
        for &r in grid.conj_k.iter().filter(|r| *r % 2 == 1) {
            let k = (1u64 << i) * r;
            let params = [("i", i as u64), ("r", r)];
            out.push(b.claim(k, 8, 2, 1 << (2 * i + 1), grid.conj_n_max, &params));
            out.push(b.claim(k, 8, 4, 1 << (2 * i + 4), grid.conj_n_max, &params));
            out.push(b.claim(k, 8, 6, 1 << (2 * i + 3), grid.conj_n_max, &params));
            out.push(b.claim(k, 8, 7, 1 << (i + 4), grid.conj_n_max, &params));
        }
    }
    let b = ClaimBuilder {
        tag: "conj-8n+4-sharp",
        kind: ClaimKind::Conjecture,
        source: "numerical observation for i a power of 2",
    };
    for &i in &grid.remark_i {
        for &r in &grid.remark_r {
            out.push(b.claim(
                (1u64 << i) * r,
                8,
                4,
                1 << (2 * i + 4),
                grid.conj_n_max,
                &[("i", i as u64), ("r", r)],
            ));
        }
    }

    let coprime6 = |k: &&u64| **k % 2 == 1 && **k % 3 != 0;
    for i in 1..=grid.conj_i_max {
        let p3 = 3u64.pow(i);
        for j in 1..=grid.conj_j_max {
            for &k in grid.conj_k.iter().filter(coprime6) {
                let kk = p3 * (1 << j) * k;
                let params = [("i", i as u64), ("j", j as u64), ("k", k)];
                let src = "open conjecture";
                let u2 = p3 * 3 * (1 << (j + 2));
                out.push(
                    ClaimBuilder {
                        tag: "conj-3n+2-even",
                        kind: ClaimKind::Conjecture,
                        source: src,
                    }
                    .claim(kk, 3, 2, u2, grid.conj_n_max, &params),
                );
                let u1 = p3 * (1 << (j + 1));
                out.push(
                    ClaimBuilder {
                        tag: "conj-3n+1-even",
                        kind: ClaimKind::Conjecture,
                        source: src,
                    }
                    .claim(kk, 3, 1, u1, grid.conj_n_max, &params),
                );
            }
        }
        // multipliers that are odd, prime to 3 and not a power of 2 (so not 1)
        for &j in grid.conj_k.iter().filter(coprime6).filter(|j| **j > 1) {
            let kk = p3 * j;
            let params = [("i", i as u64), ("j", j)];
            let src = "open conjecture";
            out.push(
                ClaimBuilder {
                    tag: "conj-3n+2-odd",
                    kind: ClaimKind::Conjecture,
                    source: src,
                }
                .claim(kk, 3, 2, p3 * 3 * 2, grid.conj_n_max, &params),
            );
            out.push(
                ClaimBuilder {
                    tag: "conj-3n+1-odd",
                    kind: ClaimKind::Conjecture,
                    source: src,
                }
                .claim(kk, 3, 1, p3 * 2, grid.conj_n_max, &params),
            );
        }
    }
    out
}

pub fn find_claim<'a>(registry: &'a [CongruenceClaim], id: &str) -> Result<&'a CongruenceClaim> {
    registry
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// `{r in [1, p-1] : r^((p-1)/2) ≡ -1 (mod p)}` for an odd prime `p`.
pub fn quadratic_nonresidues(p: u64) -> Result<Vec<u64>> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok((1..p)
        .filter(|&r| pow_mod(r, (p - 1) / 2, p) == p - 1)
        .collect())
}

/// The residue `R` of the mod-4 family `OPT_3(3pn + R)`.
///
/// Each violated hypothesis yields its own message.
pub fn singlemod_family_residue(p: u64, r: u64, a: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::hypothesis(format!("p = {p} is not prime")));
    }
    if p < 5 {
        return Err(Error::hypothesis(format!("p = {p} is below 5")));
    }
    if !(1..p).contains(&r) {
        return Err(Error::hypothesis(format!(
            "r = {r} is not a residue in [1, p-1]"
        )));
    }
    if pow_mod(r, (p - 1) / 2, p) != p - 1 {
        return Err(Error::hypothesis(format!(
            "r = {r} is a quadratic residue mod {p}"
        )));
    }
    if a > 2 {
        return Err(Error::hypothesis(format!("A = {a} is not in {{0, 1, 2}}")));
    }
    if (a * p) % 3 != (2 * r + 1) % 3 {
        return Err(Error::hypothesis(format!(
            "A p = {} is not ≡ 2r + 1 = {} (mod 3)",
            a * p,
            2 * r + 1
        )));
    }
    let twice = 2 * (a * p + r);
    Ok(if twice < 3 * p { twice } else { twice - 3 * p })
}

/// All admissible `(r, A, R)` for the prime `p`.
pub fn singlemod_family_members(p: u64) -> Result<Vec<(u64, u64, u64)>> {
    let mut out = Vec::new();
    for r in quadratic_nonresidues(p)? {
        for a in 0..=2 {
            if let Ok(big_r) = singlemod_family_residue(p, r, a) {
                out.push((r, a, big_r));
            }
        }
    }
    Ok(out)
}

/// Predicted `OPT_3(n) mod 4` for `n >= 1`: 2 on squares and twice squares.
pub fn classify_opt3_mod4(n: u64) -> Result<u8> {
    crate::optk::opt1_mod4_class(n)
}

/// Which `n` the mod-`2^{m+2}` structure of `OPT_{2^m r}` singles out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    /// Squares, twice squares and four times squares.
    SquareTypes,
    /// Odd squares only. Twice squares pick up `4 + 4` and even squares pick
    /// up `4 + 4` from the four-times-square term, both `≡ 0 (mod 8)`.
    OddSquares,
}

impl StructureClass {
    fn contains(self, n: u64) -> Result<bool> {
        Ok(match self {
            StructureClass::SquareTypes => classify_square_type(n)?.is_some(),
            StructureClass::OddSquares => n % 2 == 1 && crate::arith::is_square(n),
        })
    }
}

/// Checks `OPT_{2^m r}(n) ≡ 2^{m+1} [n is a square, twice or four times a
/// square] (mod 2^{m+2})` for `1 <= n <= n_max`.
pub fn verify_lemma_structure(m: u32, r: u64, n_max: u64) -> Result<VerificationReport> {
    verify_structure(m, r, n_max, StructureClass::SquareTypes)
}

/// Checks `OPT_{2^m r}(n) ≡ 2^{m+1} [n ∈ class] (mod 2^{m+2})` for
/// `1 <= n <= n_max`.
pub fn verify_structure(
    m: u32,
    r: u64,
    n_max: u64,
    class: StructureClass,
) -> Result<VerificationReport> {
    if m == 0 || m > 60 {
        return Err(Error::invalid(format!("m = {m} outside 1..=60")));
    }
    if r % 2 == 0 {
        return Err(Error::invalid(format!("r = {r} must be odd")));
    }
    let start = Instant::now();
    let k = (1u64 << m)
        .checked_mul(r)
        .ok_or_else(|| Error::invalid("2^m r overflows"))?;
    let u = 1u64 << (m + 2);
    let trunc = usize::try_from(n_max + 1).map_err(|_| Error::invalid("range too large"))?;
    let series = opt_series_mod(k, trunc, u)?;
    let mut status = Status::Pass;
    for n in 1..=n_max {
        let expected = if class.contains(n)? {
            1u64 << (m + 1)
        } else {
            0
        };
        let residue = series.coeffs()[n as usize];
        if residue != expected {
            status = Status::Counterexample {
                n,
                index: n,
                residue,
            };
            break;
        }
    }
    let tag = match class {
        StructureClass::SquareTypes => "structure",
        StructureClass::OddSquares => "structure-odd-squares",
    };
    Ok(VerificationReport {
        claim_id: format!("{tag}/opt{k}/mod{u}"),
        kind: Some(match class {
            StructureClass::SquareTypes => ClaimKind::Erratum,
            StructureClass::OddSquares => ClaimKind::Theorem,
        }),
        checked_range: n_max,
        status,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Which index formula to use for the mod-8 family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexConvention {
    /// `8 P² n + Q p (8j + p) + 1`.
    Stated,
    /// `8 P² n + Q p (8j + p)`, what the eigenform argument yields.
    Derived,
}

fn mf1_hypotheses(primes: &[u64], j: u64) -> Result<()> {
    let Some(&last) = primes.last() else {
        return Err(Error::hypothesis("at least one prime is required"));
    };
    for &p in primes {
        if p < 3 || !is_prime(p) {
            return Err(Error::hypothesis(format!("{p} is not a prime >= 3")));
        }
        if p % 8 == 1 {
            return Err(Error::hypothesis(format!("{p} ≡ 1 (mod 8)")));
        }
    }
    if j % last == 0 {
        return Err(Error::hypothesis(format!("j = {j} is divisible by {last}")));
    }
    Ok(())
}

/// `(m, t)` such that the family's indices are `m n + t`.
///
/// `P` is the product of all primes, `Q` the product of the squares of all
/// but the last one, `p` the last one.
pub fn mf1_progression(primes: &[u64], j: u64, convention: IndexConvention) -> Result<(u64, u64)> {
    mf1_hypotheses(primes, j)?;
    let overflow = || Error::invalid("index overflows u64");
    let p = *primes.last().expect("checked non-empty");
    let q = primes[..primes.len() - 1]
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x * x))
        .ok_or_else(overflow)?;
    let m = q
        .checked_mul(p * p)
        .and_then(|x| x.checked_mul(8))
        .ok_or_else(overflow)?;
    let t = j
        .checked_mul(8)
        .and_then(|x| x.checked_add(p))
        .and_then(|x| x.checked_mul(p))
        .and_then(|x| x.checked_mul(q))
        .ok_or_else(overflow)?;
    let t = match convention {
        IndexConvention::Stated => t + 1,
        IndexConvention::Derived => t,
    };
    Ok((m, t))
}

/// Checks `OPT_3` at the mod-8 family's indices for `0 <= n <= n_max`.
pub fn verify_thm_mf1(
    primes: &[u64],
    j: u64,
    n_max: u64,
    convention: IndexConvention,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let (m, t) = mf1_progression(primes, j, convention)?;
    let last = m
        .checked_mul(n_max)
        .and_then(|x| x.checked_add(t))
        .ok_or_else(|| Error::invalid("index overflows"))?;
    let trunc = usize::try_from(last + 1).map_err(|_| Error::invalid("range too large"))?;
    let series = opt_series_mod(3, trunc, 8)?;
    let mut status = Status::Pass;
    for n in 0..=n_max {
        let index = m * n + t;
        let residue = series.coeffs()[index as usize];
        if residue != 0 {
            status = Status::Counterexample { n, index, residue };
            break;
        }
    }
    let plist = primes
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("x");
    let tag = match convention {
        IndexConvention::Stated => "opt3-mod8-stated",
        IndexConvention::Derived => "opt3-mod8",
    };
    Ok(VerificationReport {
        claim_id: format!("{tag}/p{plist}-j{j}/{m}n+{t}/mod8"),
        kind: Some(match convention {
            IndexConvention::Stated => ClaimKind::Erratum,
            IndexConvention::Derived => ClaimKind::Theorem,
        }),
        checked_range: n_max,
        status,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Lowest common multiple of the moduli of `claims`.
pub fn combined_modulus(claims: &[CongruenceClaim]) -> u64 {
    claims.iter().fold(1, |acc, c| lcm_u(acc, c.u))
}
