//! Monomial map-germs: a source dimension, variable names, and one exponent
//! vector per target component. Components must vanish at the origin, so the
//! zero vector is never a valid component.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error("a map needs at least one variable")]
    NoVariables,
    #[error("a map needs at least one component")]
    NoComponents,
    #[error("component {index} is constant (zero exponent vector); components must vanish at 0")]
    ZeroComponent { index: usize },
    #[error("component {index} has {got} exponents, expected {expected}")]
    ComponentLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("invalid interchange document: {0}")]
    Interchange(String),
}

/// Exponent vector of a single monomial, one entry per source variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        ExponentVector(entries)
    }

    /// Unit vector e_i in `n` variables.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    /// r·e_i in `n` variables.
    pub fn pure_power(n: usize, i: usize, r: u64) -> Self {
        let mut v = vec![0; n];
        v[i] = r;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }

    pub fn total_degree(&self) -> u128 {
        self.0.iter().map(|&e| e as u128).sum()
    }

    /// Some(i) when this is the unit vector e_i.
    pub fn as_unit(&self) -> Option<usize> {
        match self.as_pure_power() {
            Some((i, 1)) => Some(i),
            _ => None,
        }
    }

    /// Some((i, r)) when this is r·e_i with r ≥ 1.
    pub fn as_pure_power(&self) -> Option<(usize, u64)> {
        let mut hit = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                if hit.is_some() {
                    return None;
                }
                hit = Some((i, e));
            }
        }
        hit
    }

    /// Componentwise ≤: the monomial with these exponents divides the other.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Degree-lexicographic order: by total degree, ties by lexicographic
/// comparison of the entries. Used to canonicalize bases and reports.
pub fn deg_lex(a: &ExponentVector, b: &ExponentVector) -> std::cmp::Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.entries().cmp(b.entries()))
}

/// A monomial map-germ: `n` named source variables and an ordered list of
/// `p` monomial components given by their exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMap {
    variable_names: Vec<String>,
    components: Vec<ExponentVector>,
}

impl MonomialMap {
    pub fn new(
        variable_names: Vec<String>,
        components: Vec<ExponentVector>,
    ) -> Result<Self, GermError> {
        if variable_names.is_empty() {
            return Err(GermError::NoVariables);
        }
        for (i, name) in variable_names.iter().enumerate() {
            if variable_names[..i].contains(name) {
                return Err(GermError::DuplicateVariable(name.clone()));
            }
        }
        if components.is_empty() {
            return Err(GermError::NoComponents);
        }
        let n = variable_names.len();
        for (index, c) in components.iter().enumerate() {
            if c.len() != n {
                return Err(GermError::ComponentLength {
                    index,
                    got: c.len(),
                    expected: n,
                });
            }
            if c.is_zero() {
                return Err(GermError::ZeroComponent { index });
            }
        }
        Ok(MonomialMap {
            variable_names,
            components,
        })
    }

    /// Convenience constructor with generated variable names for tests and
    /// programmatic use.
    pub fn from_exponents(n: usize, components: Vec<Vec<u64>>) -> Result<Self, GermError> {
        let names = default_variable_names(n);
        MonomialMap::new(
            names,
            components.into_iter().map(ExponentVector::new).collect(),
        )
    }

    /// Source dimension.
    pub fn n(&self) -> usize {
        self.variable_names.len()
    }

    /// Target dimension (number of components, duplicates included).
    pub fn p(&self) -> usize {
        self.components.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn components(&self) -> &[ExponentVector] {
        &self.components
    }

    /// Non-fatal observations about the map, e.g. duplicate components.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut notes = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            if let Some(j) = self.components[..i].iter().position(|d| d == c) {
                notes.push(format!(
                    "component {} duplicates component {}; both count toward the target dimension",
                    i + 1,
                    j + 1
                ));
            }
        }
        notes
    }

    /// n minus the rank of the differential at 0. Only degree-1 components
    /// (unit vectors) contribute rows to the differential of a monomial map.
    pub fn corank(&self) -> usize {
        let mut seen = vec![false; self.n()];
        for c in &self.components {
            if let Some(i) = c.as_unit() {
                seen[i] = true;
            }
        }
        self.n() - seen.iter().filter(|&&s| s).count()
    }

    /// For each variable, the sorted set of exponents r with r·e_i among the
    /// components (possibly empty).
    pub fn pure_power_profile(&self) -> Vec<Vec<u64>> {
        let mut profile = vec![Vec::new(); self.n()];
        for c in &self.components {
            if let Some((i, r)) = c.as_pure_power() {
                profile[i].push(r);
            }
        }
        for p in &mut profile {
            p.sort_unstable();
            p.dedup();
        }
        profile
    }

    /// Surface-syntax rendering; parses back to an equal map.
    pub fn to_surface_syntax(&self) -> String {
        let vars = self.variable_names.join(",");
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| self.monomial_string(c))
            .collect();
        format!("vars {}; {}", vars, comps.join(", "))
    }

    /// One monomial in surface syntax, e.g. `x^2*y`.
    pub fn monomial_string(&self, v: &ExponentVector) -> String {
        let terms: Vec<String> = v
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.variable_names[i].clone()
                } else {
                    format!("{}^{}", self.variable_names[i], e)
                }
            })
            .collect();
        terms.join("*")
    }

    /// Canonical JSON interchange document.
    pub fn to_interchange_json(&self) -> String {
        serde_json::to_string(&MapDocument::from(self)).expect("map serializes")
    }

    pub fn from_interchange_json(text: &str) -> Result<Self, GermError> {
        let doc: MapDocument =
            serde_json::from_str(text).map_err(|e| GermError::Interchange(e.to_string()))?;
        doc.try_into()
    }
}

pub(crate) fn default_variable_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["y".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// The canonical interchange format: `{"n":…, "vars":[…], "components":[[…]]}`.
#[derive(Serialize, Deserialize)]
pub struct MapDocument {
    pub n: usize,
    pub vars: Vec<String>,
    pub components: Vec<Vec<u64>>,
}

impl From<&MonomialMap> for MapDocument {
    fn from(m: &MonomialMap) -> Self {
        MapDocument {
            n: m.n(),
            vars: m.variable_names.clone(),
            components: m.components.iter().map(|c| c.entries().to_vec()).collect(),
        }
    }
}

impl TryFrom<MapDocument> for MonomialMap {
    type Error = GermError;

    fn try_from(doc: MapDocument) -> Result<Self, GermError> {
        if doc.n != doc.vars.len() {
            return Err(GermError::Interchange(format!(
                "n = {} but {} variables are listed",
                doc.n,
                doc.vars.len()
            )));
        }
        MonomialMap::new(
            doc.vars,
            doc.components
                .into_iter()
                .map(ExponentVector::new)
                .collect(),
        )
    }
}
