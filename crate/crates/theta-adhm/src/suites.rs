//! Named verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::adhm::{self, AdhmError, Mode, MonadConfig, MonadData, DEFAULT_MAX_DEGREE, DEFAULT_TERM_CAP};
use crate::geom::{self, Geometry};
use crate::qsym::{self, QuantumGroup};
use crate::report::{timed, Check, Report};
use crate::scalar::{GaussRat, Rat};

pub const SUITES: [&str; 9] = ["basic", "twistor", "asd", "monad", "qgroup", "charge-one-family", "gauge", "count", "all"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite {0}")]
    Unknown(String),
    #[error(transparent)]
    Adhm(#[from] AdhmError),
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Charge; `None` picks the suite default (1 for monad, 2 for gauge).
    pub k: Option<usize>,
    /// `None` picks tautological at k = 1 and symbolic otherwise.
    pub mode: Option<Mode>,
    pub max_degree: u32,
    pub theta_zero: bool,
    pub term_cap: usize,
    /// Run only the Sp(2)-quotient part of the quantum-group suite.
    pub sp: bool,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { k: None, mode: None, max_degree: DEFAULT_MAX_DEGREE, theta_zero: false, term_cap: DEFAULT_TERM_CAP, sp: false }
    }
}

impl SuiteConfig {
    fn monad(&self, default_k: usize) -> MonadConfig {
        let k = self.k.unwrap_or(default_k);
        let mode = self.mode.unwrap_or(if k == 1 { Mode::Tautological } else { Mode::Symbolic });
        MonadConfig { k, mode, theta_zero: self.theta_zero, max_degree: Some(self.max_degree), term_cap: self.term_cap }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let mut rep = Report::new(name);
    let echo = &mut rep.config_echo;
    echo.insert("maxDegree".into(), cfg.max_degree.to_string());
    echo.insert("thetaZero".into(), cfg.theta_zero.to_string());
    echo.insert("termCap".into(), cfg.term_cap.to_string());
    match name {
        "monad" | "gauge" => {
            let mc = cfg.monad(if name == "monad" { 1 } else { 2 });
            echo.insert("k".into(), mc.k.to_string());
            echo.insert("mode".into(), mc.mode.to_string());
        }
        "qgroup" => {
            echo.insert("sp".into(), cfg.sp.to_string());
        }
        _ => {}
    }
    if name == "all" {
        for s in &SUITES[..SUITES.len() - 1] {
            let sub = run_one(s, cfg)?;
            rep.budget_exhausted |= sub.budget_exhausted;
            rep.extend(sub.checks.into_iter().map(|mut c| {
                c.name = format!("[{s}] {}", c.name);
                c
            }));
        }
    } else {
        let sub = run_one(name, cfg)?;
        rep.budget_exhausted = sub.budget_exhausted;
        rep.checks = sub.checks;
    }
    rep.budget_exhausted |= rep.checks.iter().any(|c| !c.passed() && is_budget(&c.detail));
    Ok(rep)
}

fn is_budget(detail: &str) -> bool {
    detail.contains("not certified at degree bound") || detail.contains("degree budget") || detail.contains("term cap")
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let mut rep = Report::new(name);
    match name {
        "basic" => rep.extend(geom::basic_checks(&Geometry::new(cfg.theta_zero))),
        "twistor" => {
            let g = Geometry::new(cfg.theta_zero);
            rep.extend(geom::twistor_checks(&g));
            if cfg.theta_zero {
                rep.push(timed("alpha beta = beta alpha", || {
                    let c = &g.el("alpha") * &g.el("beta") - &g.el("beta") * &g.el("alpha");
                    (c.is_zero(), crate::report::brief(&c))
                }));
            }
        }
        "asd" => rep.extend(geom::asd_checks(&Geometry::new(cfg.theta_zero))),
        "monad" => monad_suite(&mut rep, &cfg.monad(1)),
        "gauge" => gauge_suite(&mut rep, &cfg.monad(2))?,
        "qgroup" => {
            let qg = QuantumGroup::new(cfg.theta_zero);
            if !cfg.sp {
                rep.extend(qsym::check_bialgebra(&qg));
                rep.extend(qsym::check_comodule_algebra(&qg));
                rep.extend(qsym::coacted_projector(&qg, cfg.max_degree));
            }
            rep.extend(qsym::check_sp_invariance(&qg, cfg.max_degree));
        }
        "charge-one-family" => rep.extend(qsym::charge_one_family(&QuantumGroup::new(cfg.theta_zero))),
        "count" => {
            for k in 1..=10u64 {
                rep.push(timed(&format!("parameter count k={k}"), || {
                    let n = 4 * k * (2 * k + 2) - 5 * k * (k - 1) - ((k + 1) * (2 * k + 3) + k * k);
                    let ok = n as i64 == 8 * k as i64 - 3 && adhm::parameter_count(k) == n as i64;
                    (ok, format!("{n} = 8k - 3"))
                }));
            }
            rep.push(timed("constraint rank at k=2 from distinct column pairs", || {
                match adhm::build_monad(&MonadConfig::new(2, Mode::Symbolic)) {
                    Ok(md) => {
                        let c = adhm::check_monad_conditions(&md);
                        let r = c.iter().find(|c| c.name.starts_with("independent constraints"));
                        r.map_or((false, "missing".into()), |c| (c.passed(), c.detail.clone()))
                    }
                    Err(e) => (false, e.to_string()),
                }
            }));
        }
        _ => return Err(SuiteError::Unknown(name.into())),
    }
    Ok(rep)
}

fn build(rep: &mut Report, mc: &MonadConfig) -> Option<MonadData> {
    match adhm::build_monad(mc) {
        Ok(md) => Some(md),
        Err(e) => {
            rep.budget_exhausted |= matches!(e, AdhmError::Budget(_));
            rep.push(Check::new("monad construction", false, e.to_string()));
            None
        }
    }
}

fn monad_suite(rep: &mut Report, mc: &MonadConfig) {
    let Some(md) = build(rep, mc) else { return };
    rep.extend(adhm::check_monad_conditions(&md));
    match adhm::adhm_projector(&md) {
        Ok(pr) => {
            rep.budget_exhausted |= pr.budget_exhausted;
            rep.extend(pr.checks.iter().cloned());
            rep.extend(adhm::charge_decomposition(&md, &pr));
        }
        Err(e) => {
            rep.budget_exhausted |= matches!(e, AdhmError::Budget(_));
            rep.push(Check::new("ADHM projector", false, e.to_string()));
        }
    }
}

/// Seeded random invertible integer matrix with small entries.
pub fn random_invertible(k: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let b: Vec<Vec<Rat>> = (0..k).map(|_| (0..k).map(|_| Rat::int(rng.gen_range(-3..=3))).collect()).collect();
        if adhm::rat_inverse(&b).is_ok() {
            return b;
        }
    }
}

fn gauge_suite(rep: &mut Report, mc: &MonadConfig) -> Result<(), SuiteError> {
    let Some(md) = build(rep, mc) else { return Ok(()) };
    let k = md.k;
    let pr = match adhm::adhm_projector(&md) {
        Ok(pr) => pr,
        Err(e) => {
            rep.budget_exhausted |= matches!(e, AdhmError::Budget(_));
            rep.push(Check::new("ADHM projector", false, e.to_string()));
            return Ok(());
        }
    };
    let diag: Vec<Vec<Rat>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Rat::int(i as i64 + 2) } else { Rat::int(0) }).collect()).collect();
    rep.extend(adhm::gauge_b(&md, &pr, &diag, "B diagonal")?);
    for s in 1..=3u64 {
        let b = random_invertible(k, s);
        rep.extend(adhm::gauge_b(&md, &pr, &b, &format!("B random seed {s}"))?);
    }
    let n = k + 1;
    let swap: Vec<usize> = (0..n).map(|p| if p < 2 { 1 - p } else { p }).collect();
    rep.extend(adhm::gauge_a(&md, &pr, &adhm::quaternionic_permutation(&swap, &vec![0; n]), "A pair swap")?);
    let units: Vec<u8> = (0..n).map(|p| [2, 1, 0][p % 3]).collect();
    let id: Vec<usize> = (0..n).collect();
    rep.extend(adhm::gauge_a(&md, &pr, &adhm::quaternionic_permutation(&id, &units), "A signed j-units")?);
    rep.push(timed("non-symplectic A is rejected", || {
        let mut a = adhm::quaternionic_permutation(&id, &vec![0; n]);
        a[0][0] = GaussRat::int(2);
        match adhm::gauge_a(&md, &pr, &a, "bad A") {
            Err(AdhmError::NotSymplectic(d)) => (true, d),
            _ => (false, "accepted".into()),
        }
    }));
    rep.push(timed("singular B is rejected", || {
        let sing = vec![vec![Rat::int(0); k]; k];
        match adhm::gauge_b(&md, &pr, &sing, "bad B") {
            Err(AdhmError::Singular) => (true, "B singular".into()),
            _ => (false, "accepted".into()),
        }
    }));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", &SuiteConfig::default()).err(), Some(SuiteError::Unknown("nope".into())));
    }

    #[test]
    fn count_suite_passes() {
        let r = run_suite("count", &SuiteConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 11);
    }

    #[test]
    fn random_b_is_deterministic() {
        assert_eq!(random_invertible(2, 7), random_invertible(2, 7));
    }
}
