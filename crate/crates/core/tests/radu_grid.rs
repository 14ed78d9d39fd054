//! The full 8n+2 / 8n+4 / 8n+6 family through the finite-check engine, and
//! agreement with the direct congruence scan over a longer range.

use qlab_core::congruence::verify_ap_congruence;
use qlab_core::optk::opt_series_mod;
use qlab_core::radu::{
    delta_star_check, nu_effective, opt_family_modulus, opt_family_r_prime, p_set, radu_verify,
    required_trunc, RaduStatus, RaduTuple,
};

#[test]
fn family_grid_passes() {
    for i in 1..=5 {
        for r in [1, 3, 5] {
            for t in [2, 4, 6] {
                let tuple = RaduTuple::opt_family(i, r, t).unwrap();
                let rp = opt_family_r_prime(i, r).unwrap();
                assert!(delta_star_check(&tuple).all(), "i={i} r={r} t={t}");
                assert_eq!(p_set(&tuple).unwrap(), vec![t]);
                let u = opt_family_modulus(i, t).unwrap();
                let cert = radu_verify(&tuple, &rp, u).unwrap();
                assert_eq!(cert.status, RaduStatus::Pass, "i={i} r={r} t={t}");
                assert_eq!(cert.nu_eff, nu_effective(&tuple, &rp).unwrap());
            }
        }
    }
}

#[test]
fn certificate_agrees_with_long_scan() {
    for (i, r) in [(1, 1), (2, 3), (3, 1)] {
        let k = (1u64 << i) * r;
        let u = opt_family_modulus(i, 4).unwrap();
        let s = opt_series_mod(k, 8 * 400 + 8, u).unwrap();
        for t in [2, 4, 6] {
            let u = opt_family_modulus(i, t).unwrap();
            assert!(
                verify_ap_congruence(&s, 8, t, u, 400).unwrap().passed(),
                "k={k} t={t}"
            );
        }
    }
}

#[test]
fn wrong_modulus_fails_at_a_small_index() {
    let tuple = RaduTuple::opt_family(1, 1, 2).unwrap();
    let rp = opt_family_r_prime(1, 1).unwrap();
    let u = 2 * opt_family_modulus(1, 2).unwrap();
    let cert = radu_verify(&tuple, &rp, u).unwrap();
    match cert.status {
        RaduStatus::Fail { n, .. } => assert!((n as usize) < required_trunc(&tuple, &rp).unwrap()),
        other => panic!("expected failure, got {other:?}"),
    }
}
