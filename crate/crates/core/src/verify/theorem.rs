use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::populations::THRESHOLD_SLACK;
use super::VerifyError;
use crate::bigraph::{BipartiteGraph, EdgeJson};
use crate::hamilton::{find_hamilton_cycle_with, recognize_gnn, HamiltonCycle, HamiltonOptions};
use crate::spectral::{rho_gnn_exact, spectral_radius, DEFAULT_TOLERANCE};
use crate::toughness::{is_one_tough_with, ToughnessLimits};

/// Smallest `n` for which `G_{n,n}` and its threshold exist.
const MIN_THRESHOLD_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// At least one hypothesis fails, so the theorem says nothing.
    NotApplicable,
    Hamiltonian,
    Extremal,
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotApplicable => "NotApplicable",
            Verdict::Hamiltonian => "Hamiltonian",
            Verdict::Extremal => "Extremal",
            Verdict::Counterexample => "Counterexample",
        })
    }
}

/// Everything needed to reproduce a counterexample report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleDump {
    pub graph: EdgeJson,
    pub rho: f64,
    pub threshold: f64,
    /// The 1-toughness search found no violating set.
    pub toughness_witness: Option<String>,
    pub search_steps: u64,
    /// Digest of the graph together with the search's step count.
    pub transcript: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub hash: String,
    pub n: usize,
    pub e: usize,
    pub rho: f64,
    /// `ρ(G_{n,n})`; absent for `n < 5`.
    pub threshold: Option<f64>,
    pub one_tough: bool,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<HamiltonCycle>,
    #[serde(default)]
    pub certificate_path: Option<String>,
    pub micros: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump: Option<CounterexampleDump>,
}

impl VerificationRecord {
    /// Whether `ρ`, `1-toughness` and the edge count put the graph inside the
    /// theorem's hypotheses.
    pub fn in_hypothesis_region(&self) -> bool {
        self.one_tough
            && self.threshold.is_some_and(|t| self.rho >= t - THRESHOLD_SLACK)
            && self.e > self.n * self.n.saturating_sub(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremOptions {
    pub tol: f64,
    pub toughness: ToughnessLimits,
    pub hamilton: HamiltonOptions,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            toughness: ToughnessLimits::default(),
            hamilton: HamiltonOptions::default(),
        }
    }
}

/// Classifies `g` against the main theorem with default options.
pub fn verify_main_theorem(g: &BipartiteGraph) -> Result<VerificationRecord, VerifyError> {
    verify_main_theorem_with(g, &TheoremOptions::default())
}

/// Computes `ρ`, the threshold and 1-toughness; if the hypotheses hold,
/// looks for a Hamilton cycle and then for the extremal shape.
///
/// The threshold test is one-sided (`ρ >= threshold - 1e-9`) and is backed by
/// the exact necessary condition `e > n(n - 3)`.
pub fn verify_main_theorem_with(
    g: &BipartiteGraph,
    opts: &TheoremOptions,
) -> Result<VerificationRecord, VerifyError> {
    let start = Instant::now();
    let n = g.balanced_n()?;
    let e = g.edge_count();
    let rho = if g.order() == 0 {
        0.0
    } else {
        spectral_radius(g, opts.tol)?.rho
    };
    let threshold = if n >= MIN_THRESHOLD_N {
        Some(rho_gnn_exact(n, 1e-13)?)
    } else {
        None
    };
    let one_tough = is_one_tough_with(g, opts.toughness)?.tough;
    let mut record = VerificationRecord {
        hash: format!("{:016x}", g.digest()),
        n,
        e,
        rho,
        threshold,
        one_tough,
        verdict: Verdict::NotApplicable,
        certificate: None,
        certificate_path: None,
        micros: 0,
        dump: None,
    };
    if record.in_hypothesis_region() {
        let search = find_hamilton_cycle_with(g, opts.hamilton)?;
        if let Some(cycle) = search.cycle {
            record.verdict = Verdict::Hamiltonian;
            record.certificate = Some(cycle);
        } else if recognize_gnn(g)? {
            record.verdict = Verdict::Extremal;
        } else {
            record.verdict = Verdict::Counterexample;
            let transcript = g.digest() ^ search.steps.wrapping_mul(0x0000_0100_0000_01b3);
            record.dump = Some(CounterexampleDump {
                graph: EdgeJson::from(g),
                rho,
                threshold: threshold.expect("region implies a threshold"),
                toughness_witness: None,
                search_steps: search.steps,
                transcript: format!("{transcript:016x}"),
            });
        }
    }
    record.micros = start.elapsed().as_micros() as u64;
    Ok(record)
}
