//! Finiteness classification of monomial map-germs and extraction of their
//! elementary-join normal form.
//!
//! The structural criterion is a statement about the exponent monoid M of the
//! map and is total: writing P_i for the pure-power exponents on axis i,
//! the complement N^n \ M is finite if and only if
//!
//! 1. every variable without a degree-1 component (a "curve variable") has a
//!    nonempty P_i with gcd(P_i) = 1, and
//! 2. for every identity variable x_i and curve variable y_j some component
//!    is x_i^λ·y_j (y_j-exponent exactly 1, support {i, j}), and
//! 3. for every ordered pair (j, t) of distinct curve variables some
//!    component is y_j^μ·y_t (y_t-exponent exactly 1, support {j, t}).
//!
//! Necessity: exponent 1 is a gap of every curve axis, and reaching
//! x_i^N·y_j (resp. y_j^N·y_t) uses only generators supported in {i, j}, of
//! which exactly one must contribute 1 to the last coordinate. Failure of any
//! condition therefore pins an infinite family of monomials outside M.
//! Sufficiency composes the membership arguments for the elementary joins:
//! extra components only enlarge M.
//!
//! A-finiteness verdicts are issued only for p ≥ 2n, where A-finiteness is
//! equivalent to finiteness of the delta invariant for non-immersive germs.

use std::fmt;

use crate::germ::{deg_lex, ExponentVector, MonomialMap};
use crate::semigroup::gcd_slice;

/// Why the exponent monoid has infinite complement. Each reason carries the
/// data of a monomial family that stays outside the pullback algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFiniteReason {
    /// No component is a pure power of this variable: k·e_i is unreachable
    /// for every k ≥ 1.
    MissingPurePower { var: usize },
    /// The pure powers of this variable have gcd > 1: k·e_i is unreachable
    /// for every k not divisible by the gcd.
    NonPrimitiveCurve { var: usize, gcd: u64 },
    /// No component x_i^λ·y_j with y_j-exponent 1: x_i^N·y_j is unreachable
    /// for every N ≥ 0.
    MissingLink {
        identity_var: usize,
        curve_var: usize,
    },
    /// No component y_j^μ·y_t with y_t-exponent 1: y_j^N·y_t is unreachable
    /// for every N ≥ 0.
    MissingPair { from: usize, to: usize },
}

impl NotFiniteReason {
    /// The N-th member of the witness family, as an exponent vector in `n`
    /// variables. Every member lies outside the exponent monoid.
    pub fn witness_exponent(&self, n: usize, step: u64) -> ExponentVector {
        match *self {
            NotFiniteReason::MissingPurePower { var } => {
                ExponentVector::pure_power(n, var, step + 1)
            }
            NotFiniteReason::NonPrimitiveCurve { var, gcd } => {
                // smallest non-multiples of the gcd: 1, gcd+1, 2gcd+1, …
                ExponentVector::pure_power(n, var, step * gcd + 1)
            }
            NotFiniteReason::MissingLink {
                identity_var,
                curve_var,
            } => {
                let mut v = vec![0; n];
                v[identity_var] = step;
                v[curve_var] = 1;
                ExponentVector::new(v)
            }
            NotFiniteReason::MissingPair { from, to } => {
                let mut v = vec![0; n];
                v[from] = step;
                v[to] = 1;
                ExponentVector::new(v)
            }
        }
    }

    /// Human-readable description against the map's variable names.
    pub fn describe(&self, map: &MonomialMap) -> String {
        let name = |i: usize| map.variable_names()[i].clone();
        match *self {
            NotFiniteReason::MissingPurePower { var } => format!(
                "no pure power of {v}: {v}^k stays outside the pullback algebra for all k ≥ 1",
                v = name(var)
            ),
            NotFiniteReason::NonPrimitiveCurve { var, gcd } => format!(
                "pure powers of {v} have gcd {gcd}: {v}^k stays outside the pullback algebra \
                 whenever {gcd} does not divide k",
                v = name(var)
            ),
            NotFiniteReason::MissingLink {
                identity_var,
                curve_var,
            } => format!(
                "no component with support {{{x},{y}}} and {y}-exponent 1: {x}^N*{y} stays \
                 outside the pullback algebra for all N",
                x = name(identity_var),
                y = name(curve_var)
            ),
            NotFiniteReason::MissingPair { from, to } => format!(
                "no component with support {{{a},{b}}} and {b}-exponent 1: {a}^N*{b} stays \
                 outside the pullback algebra for all N",
                a = name(from),
                b = name(to)
            ),
        }
    }
}

/// Role of one input component inside the join decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentRole {
    /// A pure power of an identity variable (the unit itself or a redundant
    /// higher power).
    Identity { var: usize },
    /// A pure power of a curve variable; part of that curve block.
    CurvePower { var: usize },
    /// The minimal link x_i^λ·y_j for its (identity, curve) pair.
    Link {
        identity_var: usize,
        curve_var: usize,
    },
    /// A minimal pair component y_j^μ·y_t (may serve both orders when μ = 1).
    Pair { from: usize, to: usize },
    /// Everything else; always vanishes on each coordinate axis.
    Residual,
}

/// The elementary-join normal form of a structurally finite map: identity
/// variables, one primitive curve block per remaining variable, minimal
/// link and pair exponents, and the residual components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    /// Indices of variables with a degree-1 component.
    pub identity_vars: Vec<usize>,
    /// Indices of the remaining (curve) variables, in declaration order.
    pub curve_vars: Vec<usize>,
    /// Per curve variable: the sorted pure-power exponents (gcd 1).
    pub curves: Vec<Vec<u64>>,
    /// links[a][b]: minimal λ with component x_i^λ·y_j, for
    /// i = identity_vars[a], j = curve_vars[b].
    pub links: Vec<Vec<u64>>,
    /// pairs[a][b]: minimal μ with component y_j^μ·y_t, for
    /// j = curve_vars[a], t = curve_vars[b], a ≠ b. Diagonal is None.
    pub pairs: Vec<Vec<Option<u64>>>,
    /// Components not consumed above; each has support size ≥ 2.
    pub residual: Vec<ExponentVector>,
    /// Role of every input component, in component order.
    pub roles: Vec<ComponentRole>,
}

/// Classification outcome for a monomial map-germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every variable carries a degree-1 component; the germ is stable.
    Immersion,
    /// A-finite, with its elementary-join decomposition.
    Finite(JoinDecomposition),
    /// Not A-finite; the reason pins the infinite monomial family.
    NotFinite(NotFiniteReason),
    /// p < 2n: no verdict is issued in this range.
    OutOfTheoremScope { p: usize, required: usize },
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Immersion | Verdict::Finite(_))
    }
}

/// Decides finiteness of the exponent-monoid complement and extracts the
/// decomposition. Total: valid for any n and p.
pub fn structural_finiteness(map: &MonomialMap) -> Result<JoinDecomposition, NotFiniteReason> {
    let n = map.n();
    let profile = map.pure_power_profile();

    let identity_vars: Vec<usize> = (0..n).filter(|&i| profile[i].contains(&1)).collect();
    let curve_vars: Vec<usize> = (0..n).filter(|&i| !profile[i].contains(&1)).collect();

    let mut curves = Vec::with_capacity(curve_vars.len());
    for &j in &curve_vars {
        if profile[j].is_empty() {
            return Err(NotFiniteReason::MissingPurePower { var: j });
        }
        let g = gcd_slice(&profile[j]);
        if g != 1 {
            return Err(NotFiniteReason::NonPrimitiveCurve { var: j, gcd: g });
        }
        curves.push(profile[j].clone());
    }

    // minimal link exponents: component x_i^λ·y_j
    let mut links = vec![vec![0u64; curve_vars.len()]; identity_vars.len()];
    let mut link_source = vec![vec![usize::MAX; curve_vars.len()]; identity_vars.len()];
    for (a, &i) in identity_vars.iter().enumerate() {
        for (b, &j) in curve_vars.iter().enumerate() {
            let mut best: Option<(u64, usize)> = None;
            for (idx, c) in map.components().iter().enumerate() {
                if is_bridge(c, i, j) {
                    let lam = c.entries()[i];
                    if best.is_none_or(|(l, _)| lam < l) {
                        best = Some((lam, idx));
                    }
                }
            }
            match best {
                Some((lam, idx)) => {
                    links[a][b] = lam;
                    link_source[a][b] = idx;
                }
                None => {
                    return Err(NotFiniteReason::MissingLink {
                        identity_var: i,
                        curve_var: j,
                    })
                }
            }
        }
    }

    // minimal pair exponents: component y_j^μ·y_t per ordered pair
    let q = curve_vars.len();
    let mut pairs = vec![vec![None; q]; q];
    let mut pair_source = vec![vec![usize::MAX; q]; q];
    for a in 0..q {
        for b in 0..q {
            if a == b {
                continue;
            }
            let (j, t) = (curve_vars[a], curve_vars[b]);
            let mut best: Option<(u64, usize)> = None;
            for (idx, c) in map.components().iter().enumerate() {
                if is_bridge(c, j, t) {
                    let mu = c.entries()[j];
                    if best.is_none_or(|(m, _)| mu < m) {
                        best = Some((mu, idx));
                    }
                }
            }
            match best {
                Some((mu, idx)) => {
                    pairs[a][b] = Some(mu);
                    pair_source[a][b] = idx;
                }
                None => {
                    return Err(NotFiniteReason::MissingPair { from: j, to: t });
                }
            }
        }
    }

    // role assignment; a pair component may back both orders
    let mut roles = vec![ComponentRole::Residual; map.p()];
    let mut residual = Vec::new();
    for (idx, c) in map.components().iter().enumerate() {
        if let Some((i, _)) = c.as_pure_power() {
            roles[idx] = if profile[i].contains(&1) {
                ComponentRole::Identity { var: i }
            } else {
                ComponentRole::CurvePower { var: i }
            };
            continue;
        }
        if let Some((a, b)) = position_in(&link_source, idx) {
            roles[idx] = ComponentRole::Link {
                identity_var: identity_vars[a],
                curve_var: curve_vars[b],
            };
            continue;
        }
        if let Some((a, b)) = position_in(&pair_source, idx) {
            roles[idx] = ComponentRole::Pair {
                from: curve_vars[a],
                to: curve_vars[b],
            };
            continue;
        }
        debug_assert!(c.support_size() >= 2, "pure powers were consumed above");
        residual.push(c.clone());
    }
    residual.sort_by(deg_lex);

    Ok(JoinDecomposition {
        identity_vars,
        curve_vars,
        curves,
        links,
        pairs,
        residual,
        roles,
    })
}

/// Component with support {i, j} and j-exponent exactly 1 (i ≠ j).
fn is_bridge(c: &ExponentVector, i: usize, j: usize) -> bool {
    let e = c.entries();
    e[j] == 1
        && e[i] >= 1
        && e.iter()
            .enumerate()
            .all(|(k, &v)| v == 0 || k == i || k == j)
}

fn position_in(sources: &[Vec<usize>], idx: usize) -> Option<(usize, usize)> {
    for (a, row) in sources.iter().enumerate() {
        for (b, &s) in row.iter().enumerate() {
            if s == idx {
                return Some((a, b));
            }
        }
    }
    None
}

/// A-finiteness classification. Verdicts are issued only for p ≥ 2n.
pub fn classify(map: &MonomialMap) -> Verdict {
    let (n, p) = (map.n(), map.p());
    if p < 2 * n {
        return Verdict::OutOfTheoremScope { p, required: 2 * n };
    }
    match structural_finiteness(map) {
        Err(reason) => Verdict::NotFinite(reason),
        Ok(d) if d.curve_vars.is_empty() => Verdict::Immersion,
        Ok(d) => Verdict::Finite(d),
    }
}

/// Least target dimension admitting an A-finite corank-q monomial germ from
/// n variables: n(q+1) − q(q−1)/2.
pub fn min_target_dimension(n: u64, q: u64) -> u64 {
    assert!(q <= n, "corank cannot exceed the source dimension");
    n * (q + 1) - q * q.saturating_sub(1) / 2
}

impl JoinDecomposition {
    /// Corank of the decomposed map.
    pub fn corank(&self) -> usize {
        self.curve_vars.len()
    }

    /// Rebuilds the normal-form map: identity components, curve blocks,
    /// links, pairs (deduplicated), residual, in that order.
    pub fn reconstruct(&self, variable_names: &[String]) -> MonomialMap {
        let n = variable_names.len();
        let mut comps: Vec<ExponentVector> = Vec::new();
        for &i in &self.identity_vars {
            comps.push(ExponentVector::unit(n, i));
        }
        for (b, &j) in self.curve_vars.iter().enumerate() {
            for &m in &self.curves[b] {
                comps.push(ExponentVector::pure_power(n, j, m));
            }
        }
        for (a, &i) in self.identity_vars.iter().enumerate() {
            for (b, &j) in self.curve_vars.iter().enumerate() {
                let mut v = vec![0; n];
                v[i] = self.links[a][b];
                v[j] = 1;
                comps.push(ExponentVector::new(v));
            }
        }
        for (a, &j) in self.curve_vars.iter().enumerate() {
            for (b, &t) in self.curve_vars.iter().enumerate() {
                if let Some(mu) = self.pairs[a][b] {
                    let mut v = vec![0; n];
                    v[j] = mu;
                    v[t] = 1;
                    let v = ExponentVector::new(v);
                    if !comps.contains(&v) {
                        comps.push(v);
                    }
                }
            }
        }
        for r in &self.residual {
            if !comps.contains(r) {
                comps.push(r.clone());
            }
        }
        MonomialMap::new(variable_names.to_vec(), comps).expect("reconstruction preserves validity")
    }

    /// Canonical printable normal form, ending with the reconstructed map in
    /// surface syntax after `map:`.
    pub fn normal_form(&self, map: &MonomialMap) -> String {
        let names = map.variable_names();
        let rebuilt = self.reconstruct(names);
        let mut head = String::from("(");
        if !self.identity_vars.is_empty() {
            head.push('I');
        }
        for c in &self.curves {
            if head.len() > 1 {
                head.push_str(" ∗ ");
            }
            head.push_str(&format!("φ{}", subscript(c.len())));
        }
        head.push(')');
        let has_h =
            !self.links.is_empty() || self.curve_vars.len() > 1 || !self.residual.is_empty();
        if has_h {
            head.push_str("_H");
        }

        let mut parts = vec![head];
        if !self.identity_vars.is_empty() {
            let ids: Vec<&str> = self
                .identity_vars
                .iter()
                .map(|&i| names[i].as_str())
                .collect();
            parts.push(format!("I = ({})", ids.join(", ")));
        }
        for (b, &j) in self.curve_vars.iter().enumerate() {
            let powers: Vec<String> = self.curves[b]
                .iter()
                .map(|&m| {
                    if m == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], m)
                    }
                })
                .collect();
            parts.push(format!(
                "φ{} = ({})",
                subscript(powers.len()),
                powers.join(", ")
            ));
        }
        let rebuilt_comps = rebuilt.components();
        let core = self.identity_vars.len() + self.curves.iter().map(|c| c.len()).sum::<usize>();
        let h_part: Vec<String> = rebuilt_comps[core..]
            .iter()
            .map(|c| rebuilt.monomial_string(c))
            .collect();
        if !h_part.is_empty() {
            parts.push(format!("H = ({})", h_part.join(", ")));
        }
        if !self.residual.is_empty() {
            let hs: Vec<String> = self
                .residual
                .iter()
                .map(|c| rebuilt.monomial_string(c))
                .collect();
            parts.push(format!("h = ({})", hs.join(", ")));
        }
        parts.push(format!("map: {}", rebuilt.to_surface_syntax()));
        parts.join("; ")
    }
}

impl Verdict {
    /// Printable normal form when the verdict admits one.
    pub fn normal_form(&self, map: &MonomialMap) -> Option<String> {
        match self {
            Verdict::Immersion => {
                // all components beyond the units are A-redundant, but they
                // keep p intact, so the map is echoed as its own normal form
                let names = map.variable_names();
                Some(format!(
                    "(I); I = ({}); map: {}",
                    names.join(", "),
                    map.to_surface_syntax()
                ))
            }
            Verdict::Finite(d) => Some(d.normal_form(map)),
            _ => None,
        }
    }
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Immersion => write!(f, "immersion (A-stable, delta 0)"),
            Verdict::Finite(d) => write!(f, "A-finite, corank {}", d.corank()),
            Verdict::NotFinite(_) => write!(f, "not A-finite"),
            Verdict::OutOfTheoremScope { p, required } => {
                write!(f, "no verdict: p = {p} < {required} = 2n")
            }
        }
    }
}
