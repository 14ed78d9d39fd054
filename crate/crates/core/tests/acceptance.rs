//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is evaluated as written. Three of them cannot hold as
//! written (see `EXPECTED_RED`); the run fails if the set of failing
//! criteria differs from that list in either direction.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use qlab_core::arith::isqrt;
use qlab_core::congruence::{
    theorem_registry, verify_ap_congruence, verify_claims, verify_lemma_structure,
    verify_structure, verify_thm_mf1, ClaimKind, EngineOptions, IndexConvention, RegistryGrid,
    StructureClass,
};
use qlab_core::identities::dissection_identities;
use qlab_core::modforms::{
    ck_form, density_scan, eta8_16_support_check, hecke_eigen_check, is_holomorphic,
    min_level_multiplier, weight_and_conditions,
};
use qlab_core::optk::{opt_oracle, opt_series, opt_series_mod};
use qlab_core::par::Exec;
use qlab_core::radu::{
    delta_star_check, opt_family_modulus, opt_family_r_prime, p_set, radu_verify,
    recheck_certificate, RaduCertificate, RaduTuple,
};
use qlab_core::special::binom_padic_valuation;

/// 7: the square-type structure fails at n = 2.
/// 11: the quoted mod-8 index is one too large.
/// 12: the 8n+4 power 2^{2i+4} fails at i = 1.
const EXPECTED_RED: [u32; 3] = [7, 11, 12];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let spent = start.elapsed();
    if spent > limit {
        out.pass = false;
    }
    out.detail = format!("{} [{:.1}s]", out.detail, spent.as_secs_f64());
    out
}

fn c1() -> Outcome {
    timed(Duration::from_secs(60), || {
        let o4 = opt_series(4, 4000).unwrap();
        let o8 = opt_series(8, 4000).unwrap();
        let bad = (1..=1999).find(|&n| o4.coeffs()[2 * n] != &o8.coeffs()[n] * 2);
        let small = o4.coeffs()[2] == BigInt::from(32) && o8.coeffs()[1] == BigInt::from(16);
        outcome(
            bad.is_none() && small,
            format!("first mismatch {bad:?}; OPT_4(2) = {}", o4.coeffs()[2]),
        )
    })
}

fn c2() -> Outcome {
    timed(Duration::from_secs(600), || {
        let trunc = 50_000u64;
        let s = opt_series(3, trunc as usize).unwrap();
        let mut failed = Vec::new();
        for (m, t, u) in [
            (3, 1, 6),
            (12, 7, 12),
            (12, 10, 12),
            (3, 2, 18),
            (6, 5, 36),
            (24, 23, 144),
        ] {
            let n_max = (trunc - 1 - t) / m;
            if !verify_ap_congruence(&s, m, t, u, n_max).unwrap().passed() {
                failed.push(format!("{m}n+{t} mod {u}"));
            }
        }
        outcome(
            failed.is_empty(),
            format!("six congruences to T = {trunc}, failing: {failed:?}"),
        )
    })
}

fn c3() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=4u64 {
        let s = opt_series(k, 13).unwrap();
        for n in 0..=12u64 {
            if s.coeffs()[n as usize] != BigInt::from(opt_oracle(k, n).unwrap()) {
                bad.push((k, n));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("series vs enumeration, mismatches {bad:?}"),
    )
}

fn c4() -> Outcome {
    let ids = dissection_identities();
    let failing: Vec<&str> = ids
        .iter()
        .filter(|i| !i.holds(300).unwrap())
        .map(|i| i.name)
        .collect();
    outcome(
        ids.len() == 8 && failing.is_empty(),
        format!("{} identities at T = 300, failing {failing:?}", ids.len()),
    )
}

/// `v_p(C(p^m, n) p^n)` from the integer itself.
fn direct_valuation(p: u64, m: u32, n: u64) -> u64 {
    let pm = p.pow(m);
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * (pm - i) / (i + 1);
    }
    let mut v = n;
    let big_p = BigUint::from(p);
    while (&c % &big_p).is_zero() {
        c /= &big_p;
        v += 1;
    }
    v
}

fn c5() -> Outcome {
    let mut bad = Vec::new();
    for (p, m_max) in [(2u64, 10u32), (3, 6)] {
        for m in 0..=m_max {
            for n in 1..=p.pow(m) {
                let need = u64::from(m) + (n - 1) / p + 1;
                let carries = u64::from(binom_padic_valuation(p.pow(m), n, p).unwrap()) + n;
                if carries < need || direct_valuation(p, m, n) < need {
                    bad.push((p, m, n));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("exhaustive p = 2 (m <= 10), p = 3 (m <= 6), violations {bad:?}"),
    )
}

fn c6() -> Outcome {
    let x = 10_000u64;
    let s = opt_series_mod(3, x as usize + 1, 4).unwrap();
    let r = density_scan(&s, 4, x).unwrap();
    let expected = isqrt(x) + isqrt(x / 2);
    outcome(
        r.non_divisible == expected && expected == 170,
        format!("non-divisible {} (expected {expected})", r.non_divisible),
    )
}

fn c7() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (m, r) in [(1, 1), (1, 3), (2, 1)] {
        let rep = verify_lemma_structure(m, r, 10_000).unwrap();
        pass &= rep.passed();
        details.push(format!("(m={m},r={r}) {:?}", rep.status));
    }
    outcome(pass, details.join("; "))
}

fn c8() -> Outcome {
    let grid = RegistryGrid {
        even_i_max: 3,
        even_r: vec![1, 3],
        three_i_max: 3,
        ..RegistryGrid::default()
    };
    let claims: Vec<_> = theorem_registry(&grid)
        .into_iter()
        .filter(|c| c.id.starts_with("even-k/") || c.id.starts_with("three-power/"))
        .collect();
    let reports = verify_claims(
        &claims,
        EngineOptions {
            n_max: Some(2000),
            exec: Exec::auto(),
        },
    )
    .unwrap();
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.claim_id.as_str())
        .collect();
    outcome(
        claims.len() == 21 && failing.is_empty(),
        format!("{} claims to n = 2000, failing {failing:?}", claims.len()),
    )
}

fn c9() -> Outcome {
    timed(Duration::from_secs(300), || {
        let dir = tempfile::tempdir().unwrap();
        let mut problems = Vec::new();
        let mut count = 0;
        for i in 1..=3 {
            for r in [1, 3] {
                for t in [2, 4, 6] {
                    count += 1;
                    let tuple = RaduTuple::opt_family(i, r, t).unwrap();
                    let rp = opt_family_r_prime(i, r).unwrap();
                    let label = format!("i={i},r={r},t={t}");
                    if !delta_star_check(&tuple).all() {
                        problems.push(format!("{label}: Δ*"));
                    }
                    if p_set(&tuple).unwrap() != vec![t] {
                        problems.push(format!("{label}: P(t)"));
                    }
                    let cert = radu_verify(&tuple, &rp, opt_family_modulus(i, t).unwrap()).unwrap();
                    if !cert.passed() {
                        problems.push(format!("{label}: {:?}", cert.status));
                    }
                    let path = dir.path().join(format!("cert-{i}-{r}-{t}.json"));
                    std::fs::write(&path, serde_json::to_string_pretty(&cert).unwrap()).unwrap();
                    let back: RaduCertificate =
                        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
                    if back != cert || !recheck_certificate(&back).unwrap().is_empty() {
                        problems.push(format!("{label}: re-check"));
                    }
                }
            }
        }
        outcome(
            problems.is_empty(),
            format!("{count} certificates, problems {problems:?}"),
        )
    })
}

fn c10() -> Outcome {
    let mut problems = Vec::new();
    for k in 1..=10 {
        let f = ck_form(k).unwrap();
        let w = weight_and_conditions(&f).unwrap();
        let (holo, table) = is_holomorphic(&f).unwrap();
        if w.weight != (1i128 << (k - 1)).into()
            || !w.sum_delta
            || !w.sum_level
            || !holo
            || table.0.len() != 18
        {
            problems.push(format!("C_{k}"));
        }
    }
    if min_level_multiplier(5, 1, 1).unwrap() != 8 {
        problems.push("u(5,1,1)".into());
    }
    for p in [3, 5, 7, 11, 13] {
        if let Some(n) = hecke_eigen_check(p, 1000).unwrap() {
            problems.push(format!("T_{p} at n = {n}"));
        }
    }
    if !eta8_16_support_check(8000).unwrap() {
        problems.push("support".into());
    }
    outcome(problems.is_empty(), format!("problems {problems:?}"))
}

fn c11() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for j in [1, 2] {
        let rep = verify_thm_mf1(&[3], j, 300, IndexConvention::Stated).unwrap();
        pass &= rep.passed();
        details.push(format!("{} {:?}", rep.claim_id, rep.status));
    }
    outcome(pass, details.join("; "))
}

fn c12() -> Outcome {
    timed(Duration::from_secs(600), || {
        let claims: Vec<_> = theorem_registry(&RegistryGrid::default())
            .into_iter()
            .filter(|c| c.kind == ClaimKind::Conjecture)
            .collect();
        let reports = verify_claims(
            &claims,
            EngineOptions {
                n_max: Some(500),
                exec: Exec::auto(),
            },
        )
        .unwrap();
        let failing: Vec<String> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{} {:?}", r.claim_id, r.status))
            .collect();
        outcome(
            failing.is_empty(),
            format!(
                "{} conjecture claims, counterexamples: {failing:?}",
                claims.len()
            ),
        )
    })
}

/// Lines that accompany the red criteria with the corrected statements.
fn informational() -> Vec<(String, Outcome)> {
    let mut out = Vec::new();
    let mut pass = true;
    for (m, r) in [(1, 1), (1, 3), (2, 1)] {
        pass &= verify_structure(m, r, 10_000, StructureClass::OddSquares)
            .unwrap()
            .passed();
    }
    out.push((
        "7'".into(),
        outcome(pass, "odd-square structure, same (m, r) and range"),
    ));
    let mut pass = true;
    for j in [1, 2] {
        pass &= verify_thm_mf1(&[3], j, 300, IndexConvention::Derived)
            .unwrap()
            .passed();
    }
    out.push((
        "11'".into(),
        outcome(pass, "derived index 72n + 24j + 9, n <= 300"),
    ));
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "OPT_4(2n) = 2 OPT_8(n)", c1),
        (2, "six OPT_3 congruences", c2),
        (3, "oracle equivalence", c3),
        (4, "dissection identities", c4),
        (5, "binomial valuation bounds", c5),
        (6, "OPT_3 mod 4 exceptional count", c6),
        (7, "structure of OPT_{2^m r} mod 2^{m+2}", c7),
        (8, "even-k and 3-power families", c8),
        (9, "Radu certificates", c9),
        (10, "modular forms checks", c10),
        (11, "mod-8 family, quoted index", c11),
        (12, "conjecture scans", c12),
    ];
    let mut red = BTreeSet::new();
    for (id, name, run) in criteria {
        let o = run();
        if !o.pass {
            red.insert(id);
        }
        println!(
            "{} criterion {id:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    for (id, o) in informational() {
        println!(
            "{} info {id:>3}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let expected: BTreeSet<u32> = EXPECTED_RED.into_iter().collect();
    println!("failing criteria {red:?}, expected {expected:?}");
    if red == expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
