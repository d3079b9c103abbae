//! Replays the case analysis of the main theorem on a concrete graph.
//!
//! The replay works on the bipartite closure `H`. It records `e(H)` against
//! `n(n - 3)`, the high-degree classes `X0`, `Y0` and their sizes `s`, `t`,
//! checks the two structural claims on `H`, and then follows the case split on
//! `t` and `s`. Every branch ends in one of three ways: a Hamilton cycle (lifted
//! back to the input graph), the extremal shape, or a case that cannot occur,
//! reported with the concrete inequality or cut set that rules it out.

use serde::Serialize;

use super::VerifyError;
use crate::bigraph::{bits, BipartiteGraph, Part, Vertex, VertexSet};
use crate::hamilton::{
    bipartite_closure_logged, find_good_linear_forest, forest_to_hamilton, lift_cycle,
    recognize_gnn, thread_paths, ClosureLog, HamiltonCycle,
};
use crate::toughness::count_components;

/// Smallest part size covered by the theorem.
pub const THEOREM_MIN_N: usize = 16;

/// One fired step of the replay. After a `Swapped` step the roles of `X` and
/// `Y` are exchanged for every later step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// `e(H) > n(n - 3)`.
    EdgeThreshold { edges: usize, bound: usize },
    /// `δ(H) >= 2`.
    MinDegree { min: usize },
    /// `s, t >= (n + 1) / 2`, with `needed` the least integer meeting it.
    DegreeClasses { s: usize, t: usize, needed: usize },
    Swapped,
    /// Largest degree outside the high-degree class of `part`, against
    /// `n - s` (or `n - t`).
    Claim1 { part: Part, worst: Option<usize>, bound: usize },
    /// `s, t >= n - 3` and `s, t != n - 1`.
    Claim2 { n: usize, s: usize, t: usize },
    CompleteCase,
    Case { id: u8, t: usize },
    Subcase { id: String },
    /// Degrees of the low-degree `Y`-vertices, each in `2..=max`.
    LowDegrees { degrees: Vec<usize>, max: usize },
    /// A derived upper bound `e(H) <= bound`; the case is impossible when
    /// `bound <= threshold`.
    EdgeUpperBound {
        formula: String,
        bound: usize,
        edges: usize,
        threshold: usize,
    },
    CommonNeighbour { vertex: Option<Vertex> },
    /// Outcome of the good-linear-forest search; `None` means the claim that
    /// none exists holds.
    Claim3 { forest: Option<String> },
    /// Every designated vertex has degree exactly 2.
    Claim4 { degrees: Vec<usize> },
    SharedNeighbour { vertex: Option<Vertex> },
    DistinctSecondNeighbours { holds: bool },
    /// A one-sided set leaving more than `max(|S|, 1)` components of `H`.
    ToughnessViolation { part: Part, set: Vec<usize>, components: usize },
}

impl TraceStep {
    /// Re-evaluates the recorded inequality from its stored numbers. Purely
    /// structural steps always hold.
    pub fn holds(&self) -> bool {
        match self {
            TraceStep::EdgeThreshold { edges, bound } => edges > bound,
            TraceStep::MinDegree { min } => *min >= 2,
            TraceStep::DegreeClasses { s, t, needed } => s >= needed && t >= needed,
            TraceStep::Claim1 { worst, bound, .. } => worst.is_none_or(|w| w <= *bound),
            TraceStep::Claim2 { n, s, t } => {
                let low = n.saturating_sub(3);
                *s >= low && *t >= low && *s + 1 != *n && *t + 1 != *n
            }
            TraceStep::LowDegrees { degrees, max } => degrees.iter().all(|d| (2..=*max).contains(d)),
            TraceStep::EdgeUpperBound { bound, edges, .. } => edges <= bound,
            TraceStep::Claim3 { forest } => forest.is_none(),
            TraceStep::Claim4 { degrees } => degrees.iter().all(|&d| d == 2),
            TraceStep::SharedNeighbour { vertex } => vertex.is_some(),
            TraceStep::DistinctSecondNeighbours { holds } => *holds,
            TraceStep::ToughnessViolation { set, components, .. } => *components > set.len().max(1),
            TraceStep::Swapped
            | TraceStep::CompleteCase
            | TraceStep::Case { .. }
            | TraceStep::Subcase { .. }
            | TraceStep::CommonNeighbour { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum TraceVerdict {
    /// A Hamilton cycle of the input graph.
    HamiltonCycleFound { cycle: HamiltonCycle },
    IsGnn,
    InfeasibleCase { step: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub n: usize,
    pub in_theorem_range: bool,
    /// Edges the closure added to the input.
    pub closure_added: usize,
    pub edge_count: usize,
    pub threshold_pass: bool,
    /// `X`- and `Y`-indices of degree at least `(n + 1) / 2` in `H`, in the
    /// input orientation.
    pub x0: Vec<usize>,
    pub y0: Vec<usize>,
    pub s: usize,
    pub t: usize,
    pub case_path: Vec<TraceStep>,
    pub verdict: TraceVerdict,
}

pub fn proof_trace(g: &BipartiteGraph) -> Result<ProofTrace, VerifyError> {
    let n = g.balanced_n()?;
    let (h, log) = bipartite_closure_logged(g)?;
    let needed = n / 2 + 1;
    let x0: Vec<usize> = (0..n).filter(|&x| h.x_degree(x) >= needed).collect();
    let y0: Vec<usize> = (0..n).filter(|&y| h.y_degree(y) >= needed).collect();
    let threshold = n * n.saturating_sub(3);
    let mut replay = Replay {
        g,
        log: &log,
        swapped: false,
        n,
        edges: h.edge_count(),
        threshold,
        steps: Vec::new(),
        h,
    };
    let verdict = replay.run(x0.len(), y0.len())?;
    Ok(ProofTrace {
        n,
        in_theorem_range: n >= THEOREM_MIN_N,
        closure_added: log.len(),
        edge_count: replay.edges,
        threshold_pass: replay.edges > threshold,
        s: x0.len(),
        t: y0.len(),
        x0,
        y0,
        case_path: replay.steps,
        verdict,
    })
}

struct Replay<'a> {
    g: &'a BipartiteGraph,
    log: &'a ClosureLog,
    /// The closure, transposed after a swap.
    h: BipartiteGraph,
    swapped: bool,
    n: usize,
    edges: usize,
    threshold: usize,
    steps: Vec<TraceStep>,
}

fn infeasible(step: &str, detail: impl Into<String>) -> TraceVerdict {
    TraceVerdict::InfeasibleCase {
        step: step.to_string(),
        detail: detail.into(),
    }
}

impl Replay<'_> {
    fn push(&mut self, step: TraceStep) -> bool {
        let holds = step.holds();
        self.steps.push(step);
        holds
    }

    fn run(&mut self, s: usize, t: usize) -> Result<TraceVerdict, VerifyError> {
        let n = self.n;
        if !self.push(TraceStep::EdgeThreshold {
            edges: self.edges,
            bound: self.threshold,
        }) {
            return Ok(infeasible(
                "edge threshold",
                format!("e(H) = {} <= n(n-3) = {}", self.edges, self.threshold),
            ));
        }
        let min = self.h.min_degree().unwrap_or(0);
        if !self.push(TraceStep::MinDegree { min }) {
            return Ok(infeasible("minimum degree", format!("δ(H) = {min} < 2")));
        }
        let needed = n / 2 + 1;
        if !self.push(TraceStep::DegreeClasses { s, t, needed }) {
            let small = s.min(t);
            let bound = n * small + (n / 2) * (n - small);
            return Ok(self.bounded("degree classes", "n*s + (n/2)*(n-s)", bound));
        }
        let (s, t) = if s < t {
            self.h = self.h.transpose();
            self.swapped = true;
            self.push(TraceStep::Swapped);
            (t, s)
        } else {
            (s, t)
        };

        let high = n / 2 + 1;
        let x_low: Vec<usize> = (0..n).filter(|&x| self.h.x_degree(x) < high).collect();
        let y_low: Vec<usize> = (0..n).filter(|&y| self.h.y_degree(y) < high).collect();
        let worst_x = x_low.iter().map(|&x| self.h.x_degree(x)).max();
        let worst_y = y_low.iter().map(|&y| self.h.y_degree(y)).max();
        let c1x = self.push(TraceStep::Claim1 {
            part: Part::X,
            worst: worst_x,
            bound: n - s,
        });
        let c1y = self.push(TraceStep::Claim1 {
            part: Part::Y,
            worst: worst_y,
            bound: n - t,
        });
        if !(c1x && c1y) {
            return Ok(infeasible(
                "Claim 1",
                "a low-degree vertex exceeds its bound although X0 is joined to Y0",
            ));
        }

        if !self.push(TraceStep::Claim2 { n, s, t }) {
            if t + 4 <= n {
                let bound = n * t + (n - t) * (n - t);
                return Ok(self.bounded("Claim 2", "n*t + (n-t)^2", bound));
            }
            return Ok(infeasible(
                "Claim 2",
                format!("s = {s}, t = {t}: the single vertex outside has degree <= 1"),
            ));
        }

        if t == n {
            self.push(TraceStep::CompleteCase);
            let order = (0..n).flat_map(|i| [Vertex::x(i), Vertex::y(i)]).collect();
            return self.found(HamiltonCycle::new(order));
        }
        let case = if t + 2 == n { 1 } else { 2 };
        self.push(TraceStep::Case { id: case, t });
        match (case, n - s) {
            (1, 2) => {
                self.subcase("1.1");
                self.low_degrees(&x_low, &y_low, 2);
                Ok(self.bounded("Subcase 1.1", "(n-2)^2 + 2*4", (n - 2) * (n - 2) + 8))
            }
            (1, 0) => {
                self.subcase("1.2");
                self.subcase_1_2(&y_low)
            }
            (2, 3) => {
                self.subcase("2.1");
                self.low_degrees(&x_low, &y_low, 3);
                Ok(self.bounded("Subcase 2.1", "(n-3)^2 + 3*6", (n - 3) * (n - 3) + 18))
            }
            (2, 2) => {
                self.subcase("2.2");
                self.low_degrees(&x_low, &[], 2);
                self.low_degrees(&[], &y_low, 3);
                Ok(self.bounded(
                    "Subcase 2.2",
                    "(n-3)(n-2) + 2*2 + 3*3",
                    (n - 3) * (n - 2) + 13,
                ))
            }
            (2, 0) => {
                self.subcase("2.3");
                self.subcase_2_3(&y_low)
            }
            _ => unreachable!("Claim 2 leaves only these combinations"),
        }
    }

    fn subcase(&mut self, id: &str) {
        self.push(TraceStep::Subcase { id: id.to_string() });
    }

    fn low_degrees(&mut self, xs: &[usize], ys: &[usize], max: usize) -> bool {
        let degrees = xs
            .iter()
            .map(|&x| self.h.x_degree(x))
            .chain(ys.iter().map(|&y| self.h.y_degree(y)))
            .collect();
        self.push(TraceStep::LowDegrees { degrees, max })
    }

    /// Records `e(H) <= bound` and closes the branch.
    fn bounded(&mut self, step: &str, formula: &str, bound: usize) -> TraceVerdict {
        self.push(TraceStep::EdgeUpperBound {
            formula: formula.to_string(),
            bound,
            edges: self.edges,
            threshold: self.threshold,
        });
        let relation = if bound <= self.threshold { "<=" } else { ">" };
        infeasible(
            step,
            format!(
                "e(H) = {} <= {formula} = {bound} {relation} n(n-3) = {}",
                self.edges, self.threshold
            ),
        )
    }

    fn found(&self, cycle: HamiltonCycle) -> Result<TraceVerdict, VerifyError> {
        let cycle = if self.swapped {
            HamiltonCycle::new(
                cycle
                    .order
                    .iter()
                    .map(|v| Vertex {
                        part: v.part.other(),
                        index: v.index,
                    })
                    .collect(),
            )
        } else {
            cycle
        };
        let cycle = lift_cycle(self.g, self.log, &cycle)?;
        Ok(TraceVerdict::HamiltonCycleFound { cycle })
    }

    /// Smallest set inside `candidates` (an `X`-mask of `H`) that leaves more
    /// than `max(|S|, 1)` components, recorded as a step.
    fn local_violation(&mut self, candidates: u64) -> Option<String> {
        let members: Vec<usize> = bits(candidates).collect();
        let mut subsets: Vec<u64> = (0..1u64 << members.len())
            .map(|m| bits(m).fold(0, |acc, i| acc | 1 << members[i]))
            .collect();
        subsets.sort_by_key(|m| m.count_ones());
        let (mask, components) = subsets.into_iter().find_map(|mask| {
            let c = count_components(&self.h, &VertexSet::from_x_mask(mask));
            (c > (mask.count_ones() as usize).max(1)).then_some((mask, c))
        })?;
        let set: Vec<usize> = bits(mask).collect();
        let part = if self.swapped { Part::Y } else { Part::X };
        let text = format!(
            "{} leaves {components} components",
            set.iter()
                .map(|&i| Vertex { part, index: i }.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        self.push(TraceStep::ToughnessViolation {
            part,
            set,
            components,
        });
        Some(text)
    }

    fn not_tough(&mut self, step: &str, what: &str, candidates: u64) -> TraceVerdict {
        match self.local_violation(candidates) {
            Some(w) => infeasible(step, format!("{what}; H is not 1-tough: {w}")),
            None => infeasible(step, format!("{what}, but no violating set was found")),
        }
    }

    fn subcase_1_2(&mut self, specials: &[usize]) -> Result<TraceVerdict, VerifyError> {
        let &[a, b] = specials else {
            unreachable!("t = n - 2 leaves two low-degree vertices")
        };
        if !self.low_degrees(&[], specials, 2) {
            return Ok(infeasible("Subcase 1.2", "designated degrees outside 2..=2"));
        }
        let (na, nb) = (self.h.y_neighbors(a), self.h.y_neighbors(b));
        if na == nb {
            return Ok(self.not_tough("Subcase 1.2", "both designated vertices share N", na));
        }
        let common = na & nb;
        let paths = if common != 0 {
            let c = common.trailing_zeros() as usize;
            self.push(TraceStep::CommonNeighbour {
                vertex: Some(Vertex::x(c)),
            });
            let a2 = (na & !common).trailing_zeros() as usize;
            let b2 = (nb & !common).trailing_zeros() as usize;
            vec![vec![
                Vertex::x(a2),
                Vertex::y(a),
                Vertex::x(c),
                Vertex::y(b),
                Vertex::x(b2),
            ]]
        } else {
            self.push(TraceStep::CommonNeighbour { vertex: None });
            let ends = |m: u64| {
                let mut it = bits(m);
                (it.next().unwrap(), it.next().unwrap())
            };
            let ((p, q), (r, s)) = (ends(na), ends(nb));
            vec![
                vec![Vertex::x(p), Vertex::y(a), Vertex::x(q)],
                vec![Vertex::x(r), Vertex::y(b), Vertex::x(s)],
            ]
        };
        let cycle = thread_paths(&self.h, &paths, specials)?;
        self.found(cycle)
    }

    fn subcase_2_3(&mut self, specials: &[usize]) -> Result<TraceVerdict, VerifyError> {
        let &[a, b, c] = specials else {
            unreachable!("t = n - 3 leaves three low-degree vertices")
        };
        if !self.low_degrees(&[], specials, 3) {
            return Ok(infeasible("Subcase 2.3", "designated degrees outside 2..=3"));
        }
        let neighbourhoods = [a, b, c].map(|y| self.h.y_neighbors(y));
        let union = neighbourhoods.iter().fold(0, |acc, m| acc | m);

        if let Some(forest) = find_good_linear_forest(&self.h, specials)? {
            self.push(TraceStep::Claim3 {
                forest: Some(forest.to_string()),
            });
            let cycle = forest_to_hamilton(&self.h, &forest)?;
            return self.found(cycle);
        }
        self.push(TraceStep::Claim3 { forest: None });

        let degrees: Vec<usize> = neighbourhoods.iter().map(|m| m.count_ones() as usize).collect();
        if !self.push(TraceStep::Claim4 { degrees }) {
            return Ok(self.not_tough("Claim 4", "a degree-3 designated vertex and no forest", union));
        }

        let common = neighbourhoods[0] & neighbourhoods[1] & neighbourhoods[2];
        let shared = (common != 0).then(|| Vertex::x(common.trailing_zeros() as usize));
        if !self.push(TraceStep::SharedNeighbour { vertex: shared }) {
            return Ok(self.not_tough("H0", "no vertex is joined to all three", union));
        }
        let seconds = neighbourhoods.map(|m| m & !common);
        let distinct = seconds.iter().all(|m| m.count_ones() == 1)
            && (seconds[0] | seconds[1] | seconds[2]).count_ones() == 3;
        if !self.push(TraceStep::DistinctSecondNeighbours { holds: distinct }) {
            return Ok(self.not_tough("H0", "second neighbours coincide", union));
        }
        if recognize_gnn(&self.h)? {
            Ok(TraceVerdict::IsGnn)
        } else {
            Ok(infeasible("H0", "shape checks passed but H is not G(n,n)"))
        }
    }
}
