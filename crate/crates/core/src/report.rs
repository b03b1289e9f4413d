//! Versioned, machine-readable analysis reports. Field order is fixed and
//! timings are opt-in, so identical inputs produce byte-identical JSON.

use serde::{Deserialize, Serialize};

use crate::classify::{JoinDecomposition, Verdict};
use crate::germ::{MapDocument, MonomialMap};
use crate::invariants::BoundReport;
use crate::monoid::{DeltaResult, Stability};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    pub verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    pub delta: DeltaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub le_codimension: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub text: String,
    pub n: usize,
    pub p: usize,
    pub vars: Vec<String>,
    pub components: Vec<Vec<u64>>,
}

impl InputEcho {
    pub fn new(map: &MonomialMap) -> Self {
        let doc = MapDocument::from(map);
        InputEcho {
            text: map.to_surface_syntax(),
            n: doc.n,
            p: doc.components.len(),
            vars: doc.vars,
            components: doc.components,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictReport {
    Immersion,
    Finite {
        corank: usize,
        decomposition: DecompositionReport,
    },
    NotFinite {
        reason: String,
        witness_family: String,
    },
    OutOfScope {
        p: usize,
        required: usize,
    },
}

impl VerdictReport {
    pub fn new(map: &MonomialMap, verdict: &Verdict) -> Self {
        match verdict {
            Verdict::Immersion => VerdictReport::Immersion,
            Verdict::Finite(d) => VerdictReport::Finite {
                corank: d.corank(),
                decomposition: DecompositionReport::new(map, d),
            },
            Verdict::NotFinite(reason) => VerdictReport::NotFinite {
                reason: reason.describe(map),
                witness_family: witness_family_string(map, reason),
            },
            Verdict::OutOfTheoremScope { p, required } => VerdictReport::OutOfScope {
                p: *p,
                required: *required,
            },
        }
    }
}

fn witness_family_string(map: &MonomialMap, reason: &crate::classify::NotFiniteReason) -> String {
    // show the first few members of the infinite family
    let samples: Vec<String> = (0..3)
        .map(|step| map.monomial_string(&reason.witness_exponent(map.n(), step)))
        .collect();
    format!("{}, …", samples.join(", "))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub identity_vars: Vec<String>,
    pub curves: Vec<CurveBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveBlock {
    pub var: String,
    pub exponents: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkEntry {
    pub identity_var: String,
    pub curve_var: String,
    pub lambda: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub from: String,
    pub to: String,
    pub mu: u64,
}

impl DecompositionReport {
    pub fn new(map: &MonomialMap, d: &JoinDecomposition) -> Self {
        let name = |i: usize| map.variable_names()[i].clone();
        DecompositionReport {
            identity_vars: d.identity_vars.iter().map(|&i| name(i)).collect(),
            curves: d
                .curve_vars
                .iter()
                .zip(&d.curves)
                .map(|(&j, exps)| CurveBlock {
                    var: name(j),
                    exponents: exps.clone(),
                })
                .collect(),
            links: d
                .identity_vars
                .iter()
                .enumerate()
                .flat_map(|(a, &i)| {
                    d.curve_vars
                        .iter()
                        .enumerate()
                        .map(move |(b, &j)| (a, i, b, j))
                })
                .map(|(a, i, b, j)| LinkEntry {
                    identity_var: name(i),
                    curve_var: name(j),
                    lambda: d.links[a][b],
                })
                .collect(),
            pairs: d
                .curve_vars
                .iter()
                .enumerate()
                .flat_map(|(a, &j)| {
                    d.curve_vars
                        .iter()
                        .enumerate()
                        .filter_map(move |(b, &t)| d.pairs[a][b].map(|mu| (j, t, mu)))
                })
                .map(|(j, t, mu)| PairEntry {
                    from: name(j),
                    to: name(t),
                    mu,
                })
                .collect(),
            residual: d.residual.iter().map(|r| map.monomial_string(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DeltaReport {
    Finite {
        delta: u64,
        basis_size: u64,
        /// Monomial basis, capped by the caller; `basis_truncated` records
        /// whether entries were dropped.
        basis: Vec<String>,
        basis_truncated: bool,
    },
    Infinite {
        witness: String,
    },
    Inconclusive {
        bound_reached: u64,
    },
}

impl DeltaReport {
    pub fn new(map: &MonomialMap, result: &DeltaResult, basis_cap: usize) -> Self {
        match result {
            DeltaResult::Finite { delta, basis } => {
                let shown = basis.len().min(basis_cap);
                DeltaReport::Finite {
                    delta: *delta,
                    basis_size: basis.len() as u64,
                    basis: basis[..shown]
                        .iter()
                        .map(|b| {
                            if b.is_zero() {
                                "1".to_string()
                            } else {
                                map.monomial_string(b)
                            }
                        })
                        .collect(),
                    basis_truncated: shown < basis.len(),
                }
            }
            DeltaResult::Infinite { witness } => DeltaReport::Infinite {
                witness: witness.describe(map),
            },
            DeltaResult::Inconclusive { bound_reached } => DeltaReport::Inconclusive {
                bound_reached: *bound_reached,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub caveat_low_target: bool,
}

impl From<Stability> for StabilityReport {
    fn from(s: Stability) -> Self {
        StabilityReport {
            stable: s.stable,
            caveat_low_target: s.caveat_low_target,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub classify_ms: f64,
    pub delta_ms: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::monoid::{delta, DeltaOptions};
    use crate::parse::parse_map;

    #[test]
    fn report_round_trips_through_json() {
        let map = parse_map("vars x1,x2,y; x1, x2, y^4, y^5, x1*y, x2*y, x1*x2*y^3").unwrap();
        let verdict = classify(&map);
        let d = delta(&map, DeltaOptions::default()).unwrap();
        let report = Report {
            schema_version: SCHEMA_VERSION,
            input: InputEcho::new(&map),
            diagnostics: map.diagnostics(),
            verdict: VerdictReport::new(&map, &verdict),
            normal_form: verdict.normal_form(&map),
            delta: DeltaReport::new(&map, &d, 200),
            le_codimension: Some(98),
            stability: None,
            bounds: Vec::new(),
            timings_ms: None,
        };
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        let json2 = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn basis_cap_truncates() {
        let map = parse_map("vars x,y; x^3, x^4, y^5, y^6, x^2*y, x*y^3").unwrap();
        let d = delta(&map, DeltaOptions::default()).unwrap();
        match DeltaReport::new(&map, &d, 10) {
            DeltaReport::Finite {
                delta,
                basis_size,
                basis,
                basis_truncated,
            } => {
                assert_eq!(delta, 48);
                assert_eq!(basis_size, 48);
                assert_eq!(basis.len(), 10);
                assert!(basis_truncated);
            }
            other => panic!("{other:?}"),
        }
    }
}
