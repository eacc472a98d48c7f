//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `cargo test -- --nocapture` and on failure).

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use donoghue::channel::{chi1_coefficients, chi2_coefficients, chi_coefficients, im_a_factor, USign};
use donoghue::classify::{a_from_kappa, Family};
use donoghue::entropy::{
    class_m_entropy_limit, dissipation_class_m_q, dissipation_from_entropy,
    dissipation_mkappa_inv_q, dissipation_mkappa_q, entropy_class_m_q, entropy_from_kappa,
    entropy_mkappa_inv_q, entropy_mkappa_q, unperturbed_limits, Entropy,
};
use donoghue::perturbation::{
    kappa_mkappa, kappa_mkappa_inv, kappa_slope_class_m, perturb_class_m, u_of_q,
};
use donoghue::transfer::{entropy_oracle, kappa_oracle};

const GRID_A: [f64; 9] = [0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.5, 2.0, 5.0];
const GRID_Q: [f64; 12] = [
    -20.0, -5.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0,
];

fn report(number: u8, label: &str, outcome: Result<(), String>) {
    match &outcome {
        Ok(()) => println!("criterion {number:02} PASS {label}"),
        Err(reason) => println!("criterion {number:02} FAIL {label}: {reason}"),
    }
    if let Err(reason) = outcome {
        panic!("criterion {number:02} {label}: {reason}");
    }
}

fn ensure(condition: bool, message: impl Into<String>) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn close(actual: f64, expected: f64, tolerance: f64, what: &str) -> Result<(), String> {
    ensure(
        (actual - expected).abs() <= tolerance,
        format!("{what}: got {actual}, want {expected} within {tolerance:e}"),
    )
}

/// Closed-form (kappa, S, D) with the family picked by the value of a.
fn closed_forms(a: f64, q: f64) -> Result<(f64, f64, f64), String> {
    let fallible = || -> donoghue::Result<(f64, f64, f64)> {
        if a == 1.0 {
            Ok((
                perturb_class_m(q)?.kappa,
                entropy_class_m_q(q)?.to_f64(),
                dissipation_class_m_q(q).value,
            ))
        } else if a < 1.0 {
            let s0 = Entropy::Finite(2.0 * a.atanh());
            Ok((
                kappa_mkappa(a, q)?,
                entropy_mkappa_q(s0, q)?.to_f64(),
                dissipation_mkappa_q(s0, q)?.value,
            ))
        } else {
            let s0 = Entropy::Finite(2.0 * (1.0 / a).atanh());
            Ok((
                kappa_mkappa_inv(a, q)?,
                entropy_mkappa_inv_q(s0, q)?.to_f64(),
                dissipation_mkappa_inv_q(s0, q)?.value,
            ))
        }
    };
    fallible().map_err(|e| format!("closed form failed at a={a}, q={q}: {e}"))
}

fn run_cli(args: &[&str]) -> Result<Output, String> {
    Command::new(env!("CARGO_BIN_EXE_donoghue"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))
}

#[test]
fn criterion_01_reference_table_reproduction() {
    report(1, "reference table computed from scratch", (|| {
        let start = Instant::now();

        let s_m = class_m_entropy_limit();
        ensure(s_m.is_infinite(), "unperturbed class M entropy must be infinite")?;
        close(
            dissipation_from_entropy(s_m).value,
            1.0,
            0.0,
            "unperturbed class M dissipation",
        )?;

        let s_m1 = entropy_class_m_q(1.0).map_err(|e| e.to_string())?.to_f64();
        close(s_m1, 0.5 * 5f64.ln(), 1e-12, "shifted class M entropy")?;
        close(s_m1, 0.8047, 5e-5, "shifted class M entropy, 4-digit print")?;
        let d_m1 = dissipation_class_m_q(1.0).value;
        close(d_m1, 4.0 / 5.0, 1e-12, "shifted class M dissipation")?;
        close(d_m1, 0.8000, 5e-5, "shifted class M dissipation, 4-digit print")?;

        let a = a_from_kappa(Family::MKappa, 1.0 / 3.0).map_err(|e| e.to_string())?;
        let (s_third, d_third) = unperturbed_limits(a).map_err(|e| e.to_string())?;
        close(s_third.to_f64(), 3f64.ln(), 1e-12, "unperturbed one-third entropy")?;
        close(s_third.to_f64(), 1.0986, 5e-5, "unperturbed one-third entropy, 4-digit print")?;
        close(d_third.value, 8.0 / 9.0, 1e-12, "unperturbed one-third dissipation")?;
        close(d_third.value, 0.8889, 5e-5, "unperturbed one-third dissipation, 4-digit print")?;

        let s0 = entropy_from_kappa(1.0 / 3.0).map_err(|e| e.to_string())?;
        let s_shifted = entropy_mkappa_q(s0, 1.0).map_err(|e| e.to_string())?.to_f64();
        close(s_shifted, 0.5 * (13f64 / 5.0).ln(), 1e-12, "shifted one-third entropy")?;
        close(s_shifted, 0.4778, 5e-5, "shifted one-third entropy, 4-digit print")?;
        let d_shifted = dissipation_mkappa_q(s0, 1.0).map_err(|e| e.to_string())?.value;
        close(d_shifted, 104.0 / 169.0, 1e-12, "shifted one-third dissipation")?;
        close(d_shifted, 0.6154, 5e-5, "shifted one-third dissipation, 4-digit print")?;

        ensure(
            start.elapsed() < Duration::from_secs(1),
            "table computation exceeded 1 second",
        )
    })());
}

#[test]
fn criterion_02_class_m_example_parameters() {
    report(2, "class M example at Q = 1", (|| {
        let pair = perturb_class_m(1.0).map_err(|e| e.to_string())?;
        let root5 = 5f64.sqrt();
        close(pair.kappa, 1.0 / root5, 1e-14, "kappa(1)")?;
        close(pair.u.re, -1.0 / root5, 1e-14, "Re U(1)")?;
        close(pair.u.im, 2.0 / root5, 1e-14, "Im U(1)")
    })());
}

#[test]
fn criterion_03_one_half_example_parameters() {
    report(3, "a = 1/2 example at Q = 1", (|| {
        let kappa = kappa_mkappa(0.5, 1.0).map_err(|e| e.to_string())?;
        let root65 = 65f64.sqrt();
        close(kappa, root65 / 13.0, 1e-12, "kappa(1)")?;
        let u = u_of_q(0.5, 1.0, kappa).map_err(|e| e.to_string())?;
        close(u.re, -7.0 / root65, 1e-12, "Re U(1)")?;
        close(u.im, 4.0 / root65, 1e-12, "Im U(1)")
    })());
}

#[test]
fn criterion_04_oracle_equivalence_on_the_grid() {
    report(4, "closed forms match the oracle on the grid", (|| {
        let start = Instant::now();
        for a in GRID_A {
            for q in GRID_Q {
                let (kappa, s, d) = closed_forms(a, q)?;
                let kappa_ref = kappa_oracle(a, q).map_err(|e| e.to_string())?;
                let s_ref = entropy_oracle(a, q).map_err(|e| e.to_string())?.to_f64();
                let d_ref = 1.0 - kappa_ref * kappa_ref;
                close(kappa, kappa_ref, 1e-10, &format!("kappa at a={a}, q={q}"))?;
                close(s, s_ref, 1e-10, &format!("entropy at a={a}, q={q}"))?;
                close(d, d_ref, 1e-10, &format!("dissipation at a={a}, q={q}"))?;
            }
        }
        ensure(
            start.elapsed() < Duration::from_secs(1),
            "grid sweep exceeded 1 second",
        )
    })());
}

#[test]
fn criterion_05_bridge_identity_on_the_grid() {
    report(5, "D = 1 - e^(-2S) on the grid", (|| {
        for a in GRID_A {
            for q in GRID_Q {
                let (_, s, d) = closed_forms(a, q)?;
                let bridged = dissipation_from_entropy(Entropy::Finite(s)).value;
                close(d, bridged, 1e-12, &format!("bridge at a={a}, q={q}"))?;
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_06_entropy_maximality_and_decay() {
    report(6, "entropy maximal at Q = 0 and decaying beyond", (|| {
        for a in GRID_A {
            let vertex = if a == 1.0 {
                f64::INFINITY
            } else {
                unperturbed_limits(a).map_err(|e| e.to_string())?.0.to_f64()
            };
            let mut previous = vertex;
            for q in [0.25, 0.5, 1.0, 2.0, 5.0, 20.0] {
                let (_, s, _) = closed_forms(a, q)?;
                ensure(
                    s < vertex,
                    format!("S({q}) = {s} is not below the vertex value {vertex} at a={a}"),
                )?;
                ensure(
                    s < previous,
                    format!("S({q}) = {s} does not decrease monotonically at a={a}"),
                )?;
                previous = s;
            }
        }
        let tail = entropy_class_m_q(1e6).map_err(|e| e.to_string())?.to_f64();
        ensure(tail < 1e-5, format!("class M S(1e6) = {tail} is not below 1e-5"))
    })());
}

#[test]
fn criterion_07_slope_of_kappa_at_small_q() {
    report(7, "slope of kappa matches the closed form", (|| {
        let q = 1e-4;
        let h = 1e-6;
        let plus = perturb_class_m(q + h).map_err(|e| e.to_string())?.kappa;
        let minus = perturb_class_m(q - h).map_err(|e| e.to_string())?.kappa;
        let finite_difference = (plus - minus) / (2.0 * h);
        let analytic = kappa_slope_class_m(q).map_err(|e| e.to_string())?;
        close(finite_difference, analytic, 1e-6, "central difference vs closed form")?;
        close(analytic, 0.5, 1e-6, "slope limit at Q -> 0+")
    })());
}

#[test]
fn criterion_08_channel_coefficient_identities() {
    report(8, "channel specializations over 100 kappa values", (|| {
        for j in 0..100 {
            let kappa = 0.0098 * j as f64;
            let minus = chi_coefficients(kappa, (-1.0).into()).map_err(|e| e.to_string())?;
            let chi1 = chi1_coefficients(kappa).map_err(|e| e.to_string())?;
            close(
                (minus.c_phi - chi1.c_phi).norm(),
                0.0,
                1e-13,
                &format!("c_phi at U=-1, kappa={kappa}"),
            )?;
            close(
                (minus.c_psi - chi1.c_psi).norm(),
                0.0,
                1e-13,
                &format!("c_psi at U=-1, kappa={kappa}"),
            )?;
            let plus = chi_coefficients(kappa, 1.0.into()).map_err(|e| e.to_string())?;
            let chi2 = chi2_coefficients(kappa).map_err(|e| e.to_string())?;
            close(
                (plus.c_phi - chi2.c_phi).norm(),
                0.0,
                1e-13,
                &format!("c_phi at U=+1, kappa={kappa}"),
            )?;
            close(
                (plus.c_psi - chi2.c_psi).norm(),
                0.0,
                1e-13,
                &format!("c_psi at U=+1, kappa={kappa}"),
            )?;
            let factor_minus = im_a_factor(kappa, USign::Minus).map_err(|e| e.to_string())?;
            close(
                factor_minus,
                chi1.c_phi.norm_sqr(),
                1e-13,
                &format!("Im A factor at U=-1, kappa={kappa}"),
            )?;
            let factor_plus = im_a_factor(kappa, USign::Plus).map_err(|e| e.to_string())?;
            close(
                factor_plus,
                chi2.c_phi.norm_sqr(),
                1e-13,
                &format!("Im A factor at U=+1, kappa={kappa}"),
            )?;
        }
        Ok(())
    })());
}

#[test]
fn criterion_09_cancellation_stress() {
    report(9, "stable radicals survive a = 0.9, Q = 1000", (|| {
        let stable = kappa_mkappa(0.9, 1000.0).map_err(|e| e.to_string())?;
        let reference = kappa_oracle(0.9, 1000.0).map_err(|e| e.to_string())?;
        close(stable, reference, 1e-10, "kappa against the oracle")?;
        let out = run_cli(&["verify"])?;
        ensure(
            out.status.code() == Some(0),
            format!("verify exited with {:?}", out.status.code()),
        )
    })());
}

#[test]
fn criterion_10_cli_behaviour() {
    report(10, "CLI table, verify and curve contracts", (|| {
        let table = run_cli(&["table2"])?;
        ensure(table.status.code() == Some(0), "table2 must exit 0")?;
        let text = String::from_utf8(table.stdout).map_err(|e| e.to_string())?;
        let values: Vec<&str> = text.split_whitespace().collect();
        for token in ["inf", "1.0000", "0.8047", "0.8000", "1.0986", "0.8889", "0.4778", "0.6154"] {
            ensure(
                values.contains(&token),
                format!("table2 output is missing the value {token}"),
            )?;
        }

        let verify = run_cli(&["verify"])?;
        ensure(
            verify.status.code() == Some(0),
            format!("verify exited with {:?}", verify.status.code()),
        )?;
        let fault = run_cli(&["verify", "--perturb-formula"])?;
        ensure(
            fault.status.code() == Some(1),
            format!("faulted verify exited with {:?}", fault.status.code()),
        )?;

        let curve = run_cli(&[
            "curve", "--family", "m", "--q-min", "-1", "--q-max", "1", "--steps", "3",
        ])?;
        ensure(curve.status.code() == Some(0), "curve must exit 0")?;
        let text = String::from_utf8(curve.stdout).map_err(|e| e.to_string())?;
        ensure(
            text.lines().any(|line| line == "0,0,inf,1"),
            "curve row at Q = 0 must carry the literal inf token",
        )
    })());
}
