//! Decides whether the sum-of-squares hierarchy for a simplex-constrained
//! quadratic program from the graph family reaches the true optimum at some
//! finite level. The decisions are purely combinatorial — critical edges and
//! twin pairs — and never consult the numeric solver; the test suites
//! cross-validate the two sides against each other.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::msform::QuadForm;
use crate::scalar::brat;
use crate::stability::{contract_all_twins, critical_edges, is_critical_edge, twin_pairs};

#[derive(Debug, Error)]
pub enum ConvergenceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has twin pairs {pairs:?}; this decision rule requires a twin-free graph")]
    TwinPairsPresent { pairs: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    /// Some finite level attains the true optimum.
    FiniteConvergence,
    /// Every level stays strictly below the true optimum.
    NoFiniteConvergence,
    /// Outside the proven cases; no verdict either way.
    UnknownByTheorem,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Critical edge blocking convergence (labels of the graph handed in).
    CriticalEdge { edge: (usize, usize) },
    /// Critical edge of the twin-contracted graph.
    CriticalEdgeOfContraction { edge: (usize, usize), contracted_n: usize, deletions: usize },
    /// Critical edge whose matrix entry sits at the unit floor.
    CriticalEdgeValue { edge: (usize, usize), value: f64 },
    /// The twin-free contraction certifying convergence.
    ContractedGraph { n: usize, edges: Vec<(usize, usize)>, deletions: usize },
    Reason { text: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Which decision rule produced the verdict.
    #[serde(rename = "theorem")]
    pub rule: String,
}

const RULE_MS: &str = "twin-contracted-criticality";
const RULE_MS_E: &str = "edge-criticality";
const RULE_MS_B: &str = "critical-edge-values";
const RULE_MS_B_TWIN: &str = "unit-form-twin-reduction,twin-contracted-criticality";
const RULE_NONE: &str = "none-applicable";

/// Unit form `x^T (A_G + I) x`: finite convergence holds exactly when the
/// twin-contracted graph has no critical edges.
pub fn decide_ms(g: &Graph) -> Verdict {
    let contraction = contract_all_twins(g);
    let h = &contraction.graph;
    let crit = critical_edges(h);
    match crit.first() {
        Some(&edge) => Verdict {
            status: Status::NoFiniteConvergence,
            witness: Some(Witness::CriticalEdgeOfContraction {
                edge,
                contracted_n: h.n(),
                deletions: contraction.deletions,
            }),
            rule: RULE_MS.into(),
        },
        None => Verdict {
            status: Status::FiniteConvergence,
            witness: Some(Witness::ContractedGraph {
                n: h.n(),
                edges: h.edges().collect(),
                deletions: contraction.deletions,
            }),
            rule: RULE_MS.into(),
        },
    }
}

/// Distinguished-edge form (unit entry on `e`, 2 elsewhere), proven only for
/// twin-free graphs: finite convergence exactly when `e` is not critical.
pub fn decide_ms_e(g: &Graph, e: (usize, usize)) -> Result<Verdict, ConvergenceError> {
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(a, b) {
        return Err(GraphError::MissingEdge { i: a, j: b }.into());
    }
    let pairs = twin_pairs(g);
    if !pairs.is_empty() {
        return Err(ConvergenceError::TwinPairsPresent { pairs });
    }
    if is_critical_edge(g, (a, b)).expect("edge presence checked above") {
        Ok(Verdict {
            status: Status::NoFiniteConvergence,
            witness: Some(Witness::CriticalEdge { edge: (a, b) }),
            rule: RULE_MS_E.into(),
        })
    } else {
        Ok(Verdict {
            status: Status::FiniteConvergence,
            witness: Some(Witness::Reason {
                text: format!("edge {{{a},{b}}} is not critical"),
            }),
            rule: RULE_MS_E.into(),
        })
    }
}

/// General form in the family. Twin-free graphs: finite convergence exactly
/// when every critical edge carries a value above 1. With twin pairs the
/// characterization is only proven for the unit form, which reduces to
/// [`decide_ms`]; anything else is undecided here.
pub fn decide_ms_b(q: &QuadForm) -> Verdict {
    let g = q.graph();
    let pairs = twin_pairs(g);
    if pairs.is_empty() {
        let crit = critical_edges(g);
        let offender = crit.iter().find(|&&(i, j)| q.entry(i, j) == brat(1));
        match offender {
            Some(&edge) => Verdict {
                status: Status::NoFiniteConvergence,
                witness: Some(Witness::CriticalEdgeValue { edge, value: 1.0 }),
                rule: RULE_MS_B.into(),
            },
            None => Verdict {
                status: Status::FiniteConvergence,
                witness: Some(Witness::Reason {
                    text: format!(
                        "all {} critical edges carry values above 1",
                        crit.len()
                    ),
                }),
                rule: RULE_MS_B.into(),
            },
        }
    } else if q.is_unit() {
        let mut v = decide_ms(g);
        v.rule = RULE_MS_B_TWIN.into();
        v
    } else {
        Verdict {
            status: Status::UnknownByTheorem,
            witness: Some(Witness::Reason {
                text: format!(
                    "graph has twin pairs (first: {:?}) and the form is not the unit one; \
                     no proven rule applies",
                    pairs[0]
                ),
            }),
            rule: RULE_NONE.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::bratio;

    #[test]
    fn unit_form_cycles_and_cliques() {
        let v = decide_ms(&Graph::cycle(5));
        assert_eq!(v.status, Status::NoFiniteConvergence);
        assert!(matches!(
            v.witness,
            Some(Witness::CriticalEdgeOfContraction { edge: (1, 2), .. })
        ));

        assert_eq!(decide_ms(&Graph::cycle(4)).status, Status::FiniteConvergence);
        assert_eq!(decide_ms(&Graph::cycle(6)).status, Status::FiniteConvergence);
        assert_eq!(decide_ms(&Graph::cycle(7)).status, Status::NoFiniteConvergence);

        for n in 1..=6 {
            let v = decide_ms(&Graph::complete(n));
            assert_eq!(v.status, Status::FiniteConvergence, "K{n}");
            if n >= 1 {
                assert!(matches!(
                    v.witness,
                    Some(Witness::ContractedGraph { n: 1, deletions, .. }) if deletions == n - 1
                ));
            }
        }
    }

    #[test]
    fn edge_form_requires_twin_free() {
        let c5 = Graph::cycle(5);
        let v = decide_ms_e(&c5, (1, 2)).unwrap();
        assert_eq!(v.status, Status::NoFiniteConvergence);
        assert!(matches!(v.witness, Some(Witness::CriticalEdge { edge: (1, 2) })));

        let v = decide_ms_e(&Graph::cycle(4), (1, 2)).unwrap();
        assert_eq!(v.status, Status::FiniteConvergence);

        assert!(matches!(
            decide_ms_e(&Graph::complete(3), (1, 2)),
            Err(ConvergenceError::TwinPairsPresent { .. })
        ));
        assert!(matches!(
            decide_ms_e(&c5, (1, 3)),
            Err(ConvergenceError::Graph(GraphError::MissingEdge { i: 1, j: 3 }))
        ));
    }

    #[test]
    fn general_form_twin_free_rules() {
        let c5 = Graph::cycle(5);
        let all_two = QuadForm::make_b(&c5, c5.edges().map(|e| (e, brat(2)))).unwrap();
        assert_eq!(decide_ms_b(&all_two).status, Status::FiniteConvergence);

        let qe = QuadForm::ms_e_matrix(&c5, (1, 2)).unwrap();
        let v = decide_ms_b(&qe);
        assert_eq!(v.status, Status::NoFiniteConvergence);
        assert!(matches!(
            v.witness,
            Some(Witness::CriticalEdgeValue { edge: (1, 2), value }) if value == 1.0
        ));

        // Even with generous values elsewhere, one unit critical edge blocks.
        let mixed = QuadForm::make_b(
            &c5,
            [((3, 4), brat(1)), ((1, 2), bratio(7, 2)), ((2, 3), brat(5))],
        )
        .unwrap();
        let v = decide_ms_b(&mixed);
        assert_eq!(v.status, Status::NoFiniteConvergence);
        // (1,5) defaults to 1 and precedes (3,4) lexicographically.
        assert!(matches!(
            v.witness,
            Some(Witness::CriticalEdgeValue { edge: (1, 5), .. })
        ));
    }

    #[test]
    fn general_form_twin_cases() {
        // Unit form on a twin-pair graph reduces to the contraction rule.
        let v = decide_ms_b(&QuadForm::ms_matrix(&Graph::complete(3)));
        assert_eq!(v.status, Status::FiniteConvergence);
        assert_eq!(v.rule, RULE_MS_B_TWIN);

        // Non-unit form on a twin-pair graph: no rule applies.
        let k3 = Graph::complete(3);
        let q = QuadForm::make_b(&k3, [((1, 3), brat(2)), ((2, 3), brat(2))]).unwrap();
        let v = decide_ms_b(&q);
        assert_eq!(v.status, Status::UnknownByTheorem);
        assert_eq!(v.rule, RULE_NONE);
    }

    #[test]
    fn unit_and_general_rules_agree_through_contraction() {
        for g in [
            Graph::cycle(4),
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::cycle(7),
            Graph::complete(4),
            Graph::disjoint_union(&Graph::complete(3), &Graph::cycle(5)),
        ] {
            let direct = decide_ms(&g);
            let contracted = contract_all_twins(&g).graph;
            let via_b = decide_ms_b(&QuadForm::ms_matrix(&contracted));
            assert_eq!(direct.status, via_b.status, "{g:?}");
        }
    }

    #[test]
    fn edge_rule_specializes_general_rule() {
        for (g, e) in [
            (Graph::cycle(4), (1, 2)),
            (Graph::cycle(5), (2, 3)),
            (Graph::cycle(6), (3, 4)),
            (Graph::cycle(7), (1, 7)),
        ] {
            let lhs = decide_ms_e(&g, e).unwrap();
            let rhs = decide_ms_b(&QuadForm::ms_e_matrix(&g, e).unwrap());
            assert_eq!(lhs.status, rhs.status);
        }
    }

    #[test]
    fn verdict_serializes_with_rule_tag() {
        let v = decide_ms(&Graph::cycle(5));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "NoFiniteConvergence");
        assert_eq!(json["theorem"], RULE_MS);
        assert_eq!(json["witness"]["kind"], "CriticalEdgeOfContraction");
        assert_eq!(json["witness"]["edge"][0], 1);
    }
}
