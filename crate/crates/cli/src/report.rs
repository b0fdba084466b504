use std::time::Instant;

use balanced_lines::sliding::Route;
use balanced_lines::{
    check_lemmas, enumerate_naive, enumerate_sweep_with, find_balanced_halving, verify_lower_bound, BalancedLine,
    Certificate, Exec, Instance, LemmaReport,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize, Default)]
pub struct Timings {
    pub enumerate_ms: f64,
    pub certificate_ms: f64,
    pub lemmas_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub r: usize,
    pub b: usize,
    pub delta: i64,
    pub balanced: usize,
    pub total: Option<usize>,
    pub route: Option<Route>,
    pub halving_line: Option<BalancedLine>,
    pub lemmas: LemmaReport,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    pub timings: Timings,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Everything the verifier checks on one instance. Per-instance work is sequential.
pub fn run(inst: &Instance, seed: Option<u64>) -> (RunReport, Option<Certificate>) {
    let mut failures = Vec::new();

    let t = Instant::now();
    let naive = enumerate_naive(inst);
    let sweep = enumerate_sweep_with(inst, Exec::Sequential);
    let enumerate_ms = ms(t);
    if naive != sweep {
        failures.push("naive and sweep enumerations differ".to_string());
    }
    if naive.len() < inst.r() {
        failures.push(format!("only {} balanced lines for r = {}", naive.len(), inst.r()));
    }

    let t = Instant::now();
    let cert = match verify_lower_bound(inst) {
        Ok(c) => Some(c),
        Err(e) => {
            failures.push(format!("certificate: {e}"));
            None
        }
    };
    let certificate_ms = ms(t);
    if let Some(c) = &cert {
        if c.total > naive.len() {
            failures.push(format!("certificate total {} exceeds the balanced count {}", c.total, naive.len()));
        }
    }

    let t = Instant::now();
    let lemmas = check_lemmas(inst);
    let lemmas_ms = ms(t);
    failures.extend(lemmas.failures().into_iter().map(|f| format!("lemma check failed: {f}")));

    let report = RunReport {
        seed,
        r: inst.r(),
        b: inst.b(),
        delta: inst.delta(),
        balanced: naive.len(),
        total: cert.as_ref().map(|c| c.total),
        route: cert.as_ref().map(|c| c.route),
        halving_line: find_balanced_halving(inst).ok(),
        lemmas,
        pass: failures.is_empty(),
        failures,
        timings: Timings { enumerate_ms, certificate_ms, lemmas_ms },
    };
    (report, cert)
}
