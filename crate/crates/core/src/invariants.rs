//! Closed-form invariant estimates for the join families: the κ-sandwich for
//! the delta invariant of corank-one joins, A_e-codimension intervals,
//! double-point counts for maps into C^{2n}, fold-case identities, and
//! projection bounds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, Verdict};
use crate::germ::MonomialMap;
use crate::monoid::{delta, DeltaOptions, DeltaResult, MonoidError};
use crate::semigroup::{NumericalSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("the double-point formula did not divide evenly: {numerator} / {denominator}")]
    NonIntegerResult { numerator: u128, denominator: u128 },
    #[error("{m1} and {m2} are not coprime")]
    NotCoprime { m1: u64, m2: u64 },
    #[error("no fold projection: {0}")]
    NotAFold(String),
    #[error("delta is not finite")]
    NotFinite,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A named quantity with a lower and upper estimate and, when computed, the
/// exact value. Raw lower bounds may be negative; displays clamp at zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<i128>,
    /// Which estimate produced each bound, by what it does.
    pub provenance: Vec<String>,
    /// Hypotheses the report depends on but does not verify.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<String>,
}

impl BoundReport {
    pub fn display_lower(&self) -> Option<i128> {
        self.lower.map(|l| l.max(0))
    }

    /// lower ≤ exact ≤ upper, with the display clamp applied to the lower end.
    pub fn is_consistent(&self) -> bool {
        let lo = self.display_lower();
        match (lo, self.upper) {
            (Some(l), Some(u)) if l > u => return false,
            _ => {}
        }
        if let Some(e) = self.exact {
            if let Some(l) = lo {
                if e < l {
                    return false;
                }
            }
            if let Some(u) = self.upper {
                if e > u {
                    return false;
                }
            }
        }
        true
    }
}

/// The sandwich constants for a corank-one join with multiplicity m₁ and
/// link exponents λ₁…λ_{n−1}:
///
///   λ_min = min λ_i,          λ = (m₁−1)·Σλ_i − n + 1,
///   κ₁ = Σλ_i + Σ_{j=1}^{λ_min} C(n+j−2, j) − (n−1)·λ_min − n + 2,
///   κ₂ = Σ_{j=1}^{λ} C(n+j−2, j) + 1,
///   κ₃ = Σλ_i − n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kappas {
    pub kappa1: i128,
    pub kappa2: i128,
    pub kappa3: i128,
    pub lambda: i128,
    pub lambda_min: u64,
}

fn binomial(n: u128, k: u128) -> Result<u128, InvariantError> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .ok_or(InvariantError::Overflow("binomial coefficient"))?;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Σ_{j=1}^{limit} C(base+j, j); empty when limit ≤ 0.
fn binomial_tail_sum(base: u128, limit: i128) -> Result<i128, InvariantError> {
    let mut sum: i128 = 0;
    let mut j: i128 = 1;
    while j <= limit {
        let term = binomial(base + j as u128, j as u128)?;
        sum = sum
            .checked_add(i128::try_from(term).map_err(|_| InvariantError::Overflow("bound sum"))?)
            .ok_or(InvariantError::Overflow("bound sum"))?;
        j += 1;
    }
    Ok(sum)
}

pub fn kappas(n: usize, m1: u64, lambdas: &[u64]) -> Result<Kappas, InvariantError> {
    if n < 2 || m1 < 2 {
        return Err(InvariantError::BadInput(format!(
            "the sandwich constants need n ≥ 2 and m₁ ≥ 2, got n = {n}, m₁ = {m1}"
        )));
    }
    if lambdas.len() != n - 1 {
        return Err(InvariantError::BadInput(format!(
            "expected {} link exponents, got {}",
            n - 1,
            lambdas.len()
        )));
    }
    let lambda_min = *lambdas.iter().min().expect("n ≥ 2");
    let sum_lambdas: i128 = lambdas.iter().map(|&l| l as i128).sum();
    let n_i = n as i128;

    let lambda = (m1 as i128 - 1) * sum_lambdas - n_i + 1;
    let kappa1 = sum_lambdas + binomial_tail_sum(n as u128 - 2, lambda_min as i128)?
        - (n_i - 1) * lambda_min as i128
        - n_i
        + 2;
    let kappa2 = binomial_tail_sum(n as u128 - 2, lambda)? + 1;
    let kappa3 = sum_lambdas - n_i;

    Ok(Kappas {
        kappa1,
        kappa2,
        kappa3,
        lambda,
        lambda_min,
    })
}

/// κ₁·δ_φ ≤ δ_f ≤ κ₂·δ_φ for the corank-one join. When `exact` options are
/// supplied the join is built and its delta filled in.
pub fn delta_bounds_corank_one(
    n: usize,
    curve: &[u64],
    lambdas: &[u64],
    exact: Option<DeltaOptions>,
) -> Result<BoundReport, InvariantError> {
    let phi = NumericalSemigroup::from_generators(curve)?;
    let k = kappas(n, phi.multiplicity(), lambdas)?;
    let d_phi = phi.delta() as i128;
    let exact_value = match exact {
        None => None,
        Some(opts) => {
            let f = crate::join::elementary_corank_one(n, curve, lambdas)
                .map_err(|e| InvariantError::BadInput(e.to_string()))?;
            match delta(&f, opts)? {
                DeltaResult::Finite { delta, .. } => Some(delta as i128),
                _ => return Err(InvariantError::NotFinite),
            }
        }
    };
    Ok(BoundReport {
        quantity: "delta of the corank-one join".into(),
        lower: Some(k.kappa1 * d_phi),
        upper: Some(k.kappa2 * d_phi),
        exact: exact_value,
        provenance: vec!["corank-one join sandwich".into()],
        caveats: Vec::new(),
    })
}

/// (n−1)·κ₃·δ_φ + k(m₁−2)(κ₃+2) ≤ A_ecod(f) ≤ (2n+k−2)·κ₂·δ_φ for the
/// corank-one join. The raw lower bound may be negative.
pub fn aecod_bounds_corank_one(
    n: usize,
    curve: &[u64],
    lambdas: &[u64],
) -> Result<BoundReport, InvariantError> {
    let phi = NumericalSemigroup::from_generators(curve)?;
    let m1 = phi.multiplicity();
    let kap = kappas(n, m1, lambdas)?;
    let d_phi = phi.delta() as i128;
    let k = phi.generators().len() as i128;
    let n_i = n as i128;
    let lower = (n_i - 1) * kap.kappa3 * d_phi + k * (m1 as i128 - 2) * (kap.kappa3 + 2);
    let upper = (2 * n_i + k - 2) * kap.kappa2 * d_phi;
    Ok(BoundReport {
        quantity: "A_e-codimension of the corank-one join".into(),
        lower: Some(lower),
        upper: Some(upper),
        exact: None,
        provenance: vec!["corank-one join codimension estimate".into()],
        caveats: Vec::new(),
    })
}

/// Σ_j δ_{φ_j} ≤ δ_g ≤ Σ_{j=1}^{c} C(n+j−1, j) with c the sum of the curve
/// conductors, for the full-corank join.
pub fn delta_bounds_full_corank(curves: &[Vec<u64>]) -> Result<BoundReport, InvariantError> {
    if curves.is_empty() {
        return Err(InvariantError::BadInput("no curves given".into()));
    }
    let n = curves.len();
    let mut lower: i128 = 0;
    let mut conductor_sum: i128 = 0;
    for gens in curves {
        let s = NumericalSemigroup::from_generators(gens)?;
        lower += s.delta() as i128;
        conductor_sum += s.conductor() as i128;
    }
    let upper = binomial_tail_sum(n as u128 - 1, conductor_sum)?;
    Ok(BoundReport {
        quantity: "delta of the full-corank join".into(),
        lower: Some(lower),
        upper: Some(upper),
        exact: None,
        provenance: vec!["curve-delta floor and conductor-box ceiling".into()],
        caveats: Vec::new(),
    })
}

/// Double points of a stable perturbation of a quasihomogeneous corank-one
/// map into C^{2n}: Π_{i=n}^{2n} (d_i − ω_n) / (2·ω₁⋯ω_{n−1}·ω_n²).
///
/// `weights` are the n variable weights (the distinguished variable last),
/// `degrees` the n+1 weighted degrees of the non-identity components.
pub fn double_points_quasihomogeneous(
    weights: &[u64],
    degrees: &[u64],
) -> Result<u64, InvariantError> {
    let n = weights.len();
    if n == 0 || weights.contains(&0) {
        return Err(InvariantError::BadInput("weights must be positive".into()));
    }
    if degrees.len() != n + 1 {
        return Err(InvariantError::BadInput(format!(
            "expected {} degrees for {} weights, got {}",
            n + 1,
            n,
            degrees.len()
        )));
    }
    let wn = weights[n - 1] as u128;
    let mut numerator: u128 = 1;
    for &d in degrees {
        let d = d as u128;
        if d < wn {
            return Err(InvariantError::BadInput(format!(
                "degree {d} is below the weight {wn} of the distinguished variable"
            )));
        }
        numerator = numerator
            .checked_mul(d - wn)
            .ok_or(InvariantError::Overflow("double-point numerator"))?;
    }
    let mut denominator: u128 = 2;
    for &w in &weights[..n - 1] {
        denominator = denominator
            .checked_mul(w as u128)
            .ok_or(InvariantError::Overflow("double-point denominator"))?;
    }
    denominator = denominator
        .checked_mul(wn * wn)
        .ok_or(InvariantError::Overflow("double-point denominator"))?;
    if !numerator.is_multiple_of(denominator) {
        return Err(InvariantError::NonIntegerResult {
            numerator,
            denominator,
        });
    }
    u64::try_from(numerator / denominator).map_err(|_| InvariantError::Overflow("double points"))
}

/// Closed form for the corank-one join on a plane curve:
/// d(f) = (Πλ_i)·(m₁−1)(m₂−1)/2.
pub fn double_points_join_curve(lambdas: &[u64], m1: u64, m2: u64) -> Result<u64, InvariantError> {
    if crate::semigroup::gcd_slice(&[m1, m2]) != 1 {
        return Err(InvariantError::NotCoprime { m1, m2 });
    }
    let prod: u128 = lambdas.iter().map(|&l| l as u128).product();
    let d = prod
        .checked_mul((m1 as u128 - 1) * (m2 as u128 - 1) / 2)
        .ok_or(InvariantError::Overflow("double points"))?;
    u64::try_from(d).map_err(|_| InvariantError::Overflow("double points"))
}

/// Codimension of the divided-difference ideal ⟨P_{m₁−1}, P_{m₂−1}⟩ in two
/// variables: (m₁−1)(m₂−1) when the exponents are coprime, infinite when a
/// common factor makes the polynomials share roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DividedDifferenceCodim {
    Finite(u64),
    /// The generators share a common factor (gcd of the exponents > 1).
    Infinite {
        common_roots: u64,
    },
}

pub fn divided_difference_codim(m1: u64, m2: u64) -> DividedDifferenceCodim {
    let g = crate::semigroup::gcd_slice(&[m1, m2]);
    if g > 1 {
        DividedDifferenceCodim::Infinite { common_roots: g }
    } else {
        DividedDifferenceCodim::Finite((m1 - 1) * (m2 - 1))
    }
}

/// Report for a map with a fold projection (x̲, y²): the double-point count
/// equals delta when p = 2n, and the A_e-codimension lies in
/// [(p−2n+1)·δ, (p−n)·δ − 1].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldReport {
    pub delta: u64,
    /// Exact double-point count; present only when p = 2n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_points: Option<u64>,
    pub aecod: BoundReport,
    /// Sharper conditional ceiling (p−n)·δ − n + 1.
    pub conditional_upper: BoundReport,
}

/// Builds the fold report. The map must classify finite with corank one and
/// fold multiplicity (smallest pure power of the curve variable) 2.
pub fn fold_report(map: &MonomialMap, options: DeltaOptions) -> Result<FoldReport, InvariantError> {
    let (n, p) = (map.n() as i128, map.p() as i128);
    let decomposition = match classify(map) {
        Verdict::Finite(d) => d,
        Verdict::Immersion => {
            return Err(InvariantError::NotAFold(
                "the map is an immersion; no variable folds".into(),
            ))
        }
        Verdict::NotFinite(_) => return Err(InvariantError::NotFinite),
        Verdict::OutOfTheoremScope { p, required } => {
            return Err(InvariantError::BadInput(format!(
                "fold analysis needs p ≥ 2n, got p = {p} < {required}"
            )))
        }
    };
    if decomposition.corank() != 1 {
        return Err(InvariantError::NotAFold(format!(
            "corank is {}, the fold projection needs corank 1",
            decomposition.corank()
        )));
    }
    let m1 = decomposition.curves[0][0];
    if m1 != 2 {
        return Err(InvariantError::NotAFold(format!(
            "the curve variable has multiplicity {m1}, a fold needs 2"
        )));
    }

    let delta_f = match delta(map, options)? {
        DeltaResult::Finite { delta, .. } => delta,
        _ => return Err(InvariantError::NotFinite),
    };
    let d = delta_f as i128;

    let double_points = if p == 2 * n { Some(delta_f) } else { None };
    let aecod = BoundReport {
        quantity: "A_e-codimension".into(),
        lower: Some((p - 2 * n + 1) * d),
        upper: Some((p - n) * d - 1),
        exact: None,
        provenance: vec!["fold-projection estimate".into()],
        caveats: Vec::new(),
    };
    let conditional_upper = BoundReport {
        quantity: "A_e-codimension".into(),
        lower: None,
        upper: Some((p - n) * d - n + 1),
        exact: None,
        provenance: vec!["independent-generator ceiling".into()],
        caveats: vec![
            "requires independence of the derivative columns v₁…v_{n−1}; not verified".into(),
        ],
    };
    Ok(FoldReport {
        delta: delta_f,
        double_points,
        aecod,
        conditional_upper,
    })
}

/// A_e-codimension through a projection g_k: the ceiling
/// A_ecod(g_k) + (p−k)·δ always holds; when g_k is stable the value is
/// (p−k)·δ − dim Ker(ρ) with 1 ≤ dim Ker(ρ) ≤ (n−1)·δ, reported as the
/// interval those bounds allow.
pub fn projection_bound(
    aecod_gk: u64,
    p: u64,
    k: u64,
    delta: u64,
    gk_stable: bool,
    n: Option<u64>,
) -> BoundReport {
    let spread = (p as i128 - k as i128) * delta as i128;
    let upper_plain = aecod_gk as i128 + spread;
    if !gk_stable {
        return BoundReport {
            quantity: "A_e-codimension through the projection".into(),
            lower: None,
            upper: Some(upper_plain),
            exact: None,
            provenance: vec!["projection ceiling".into()],
            caveats: Vec::new(),
        };
    }
    match n {
        Some(n) => {
            let kernel_max = (n as i128 - 1) * delta as i128;
            BoundReport {
                quantity: "A_e-codimension through the stable projection".into(),
                lower: Some(spread - kernel_max.max(1)),
                upper: Some(spread - 1),
                exact: None,
                provenance: vec!["stable-projection identity with kernel-dimension bounds".into()],
                caveats: vec!["the kernel dimension itself is not computed".into()],
            }
        }
        None => BoundReport {
            quantity: "A_e-codimension through the stable projection".into(),
            lower: None,
            upper: Some(spread - 1),
            exact: None,
            provenance: vec!["stable-projection ceiling".into()],
            caveats: Vec::new(),
        },
    }
}

/// Lower bound for the delta of an axis-disjoint join: δ_K ≥ δ_F + δ_G.
pub fn join_delta_lower(delta_f: u64, delta_g: u64) -> u64 {
    delta_f + delta_g
}

/// Extracts the quasihomogeneous data of a corank-≤1 monomial map into C^{2n}
/// with unit weights and applies the double-point formula.
pub fn double_points_of_map(map: &MonomialMap) -> Result<u64, InvariantError> {
    let n = map.n();
    if map.p() != 2 * n {
        return Err(InvariantError::BadInput(format!(
            "the double-point count needs p = 2n, got p = {} and n = {}",
            map.p(),
            n
        )));
    }
    // pick one identity component per variable; the remaining variable is the
    // distinguished (folding) one
    let mut unit_for = vec![None; n];
    for (idx, c) in map.components().iter().enumerate() {
        if let Some(i) = c.as_unit() {
            if unit_for[i].is_none() {
                unit_for[i] = Some(idx);
            }
        }
    }
    let missing: Vec<usize> = (0..n).filter(|&i| unit_for[i].is_none()).collect();
    if missing.len() != 1 {
        return Err(InvariantError::BadInput(format!(
            "the quasihomogeneous formula applies to corank-one shapes; {} variables lack a \
             degree-1 component",
            missing.len()
        )));
    }
    let consumed: Vec<usize> = (0..n)
        .filter(|&i| missing[0] != i)
        .map(|i| unit_for[i].expect("checked above"))
        .collect();
    // with unit weights the degree of a monomial is its total degree
    let degrees: Vec<u64> = map
        .components()
        .iter()
        .enumerate()
        .filter(|(idx, _)| !consumed.contains(idx))
        .map(|(_, c)| u64::try_from(c.total_degree()).expect("component degrees fit"))
        .collect();
    let weights = vec![1u64; n];
    // the distinguished variable must come last in the weight list; with unit
    // weights only the degree list matters
    double_points_quasihomogeneous(&weights, &degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        let k = kappas(2, 2, &[1]).unwrap();
        assert_eq!((k.kappa1, k.kappa2, k.kappa3, k.lambda), (1, 1, -1, 0));

        let k = kappas(2, 3, &[2]).unwrap();
        assert_eq!((k.kappa1, k.kappa2, k.lambda), (2, 4, 3));

        let k = kappas(3, 2, &[1, 1]).unwrap();
        assert_eq!((k.kappa1, k.kappa2, k.lambda, k.lambda_min), (1, 1, 0, 1));
    }

    #[test]
    fn delta_sandwich_examples() {
        let r = delta_bounds_corank_one(2, &[2, 3], &[1], Some(DeltaOptions::default())).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (Some(1), Some(1), Some(1)));
        assert!(r.is_consistent());

        let r = delta_bounds_corank_one(2, &[3, 4], &[1], Some(DeltaOptions::default())).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (Some(3), Some(6), Some(4)));

        let r = delta_bounds_corank_one(2, &[2, 3], &[2], Some(DeltaOptions::default())).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (Some(2), Some(2), Some(2)));
    }

    #[test]
    fn aecod_bound_examples() {
        let r = aecod_bounds_corank_one(2, &[2, 3], &[1]).unwrap();
        assert_eq!(r.upper, Some(4));
        assert_eq!(r.lower, Some(-1));
        assert_eq!(r.display_lower(), Some(0));

        // n=2, curve (4,5), λ=(1): λ = 2, κ₂ = C(1,1)+C(2,2)+1 = 3, κ₃ = −1
        let r = aecod_bounds_corank_one(2, &[4, 5], &[1]).unwrap();
        assert_eq!(r.upper, Some(4 * 3 * 6));
        assert_eq!(r.lower, Some(-6 + (2 * 2)));

        let r = aecod_bounds_corank_one(3, &[2, 3], &[1, 1]).unwrap();
        // κ₃ = −1, κ₂ = 1, δ_φ = 1, k = 2, m₁−2 = 0
        assert_eq!(r.lower, Some(-2));
        assert_eq!(r.upper, Some(6));
    }

    #[test]
    fn full_corank_bound_examples() {
        let r = delta_bounds_full_corank(&[vec![2, 3], vec![2, 3]]).unwrap();
        assert_eq!((r.lower, r.upper), (Some(2), Some(14)));

        let r = delta_bounds_full_corank(&[vec![3, 4], vec![5, 6]]).unwrap();
        assert_eq!(r.lower, Some(13));

        let r = delta_bounds_full_corank(&[vec![2, 3]]).unwrap();
        assert_eq!(r.lower, Some(1));
    }

    #[test]
    fn quasihomogeneous_double_points() {
        // (x, x*y, y^2, y^5): weights (1,1), degrees (2,2,5)
        assert_eq!(
            double_points_quasihomogeneous(&[1, 1], &[2, 2, 5]).unwrap(),
            2
        );
        // (x, y^2, y^3, x^k*y): degrees (2,3,k+1)
        for k in 1..=6u64 {
            assert_eq!(
                double_points_quasihomogeneous(&[1, 1], &[2, 3, k + 1]).unwrap(),
                k
            );
        }
        // corank-one join, curve (2,3), λ=(2): degrees (2,3,3)
        assert_eq!(
            double_points_quasihomogeneous(&[1, 1], &[2, 3, 3]).unwrap(),
            2
        );

        assert!(matches!(
            double_points_quasihomogeneous(&[1, 1], &[2, 2, 4]),
            Err(InvariantError::NonIntegerResult { .. })
        ));
    }

    #[test]
    fn join_curve_double_points() {
        assert_eq!(double_points_join_curve(&[1], 2, 3).unwrap(), 1);
        assert_eq!(double_points_join_curve(&[2, 3], 3, 4).unwrap(), 18);
        assert!(matches!(
            double_points_join_curve(&[1], 4, 6),
            Err(InvariantError::NotCoprime { .. })
        ));
    }

    #[test]
    fn divided_difference_codimension() {
        assert_eq!(
            divided_difference_codim(2, 3),
            DividedDifferenceCodim::Finite(2)
        );
        assert_eq!(
            divided_difference_codim(4, 5),
            DividedDifferenceCodim::Finite(12)
        );
        assert_eq!(
            divided_difference_codim(4, 6),
            DividedDifferenceCodim::Infinite { common_roots: 2 }
        );
    }

    #[test]
    fn fold_reports() {
        use crate::parse::parse_map;
        // (x, x*y, y^2, y^7): k = 3 member of the first family
        let f = parse_map("vars x,y; x, x*y, y^2, y^7").unwrap();
        let r = fold_report(&f, DeltaOptions::default()).unwrap();
        assert_eq!(r.delta, 3);
        assert_eq!(r.double_points, Some(3));
        assert_eq!((r.aecod.lower, r.aecod.upper), (Some(3), Some(5)));
        assert_eq!(r.conditional_upper.upper, Some(5));

        let g = parse_map("vars x,y; x, y^2, y^3, x^3*y").unwrap();
        let r = fold_report(&g, DeltaOptions::default()).unwrap();
        assert_eq!(r.delta, 3);
        assert_eq!((r.aecod.lower, r.aecod.upper), (Some(3), Some(5)));

        let not_fold = parse_map("vars x,y; x, y^3, y^4, x*y").unwrap();
        assert!(matches!(
            fold_report(&not_fold, DeltaOptions::default()),
            Err(InvariantError::NotAFold(_))
        ));
    }

    #[test]
    fn projection_bounds() {
        let r = projection_bound(0, 6, 3, 4, true, Some(3));
        assert_eq!((r.lower, r.upper), (Some(4), Some(11)));

        let r = projection_bound(5, 8, 4, 2, false, None);
        assert_eq!(r.upper, Some(13));
        assert_eq!(r.lower, None);

        for k in 1..=6u64 {
            let r = projection_bound(0, 4, 2, k, true, Some(2));
            assert_eq!(
                (r.lower, r.upper),
                (Some(k as i128), Some(2 * k as i128 - 1))
            );
        }
    }

    #[test]
    fn join_delta_floor() {
        assert_eq!(join_delta_lower(1, 1), 2);
        assert_eq!(join_delta_lower(0, 0), 0);
        assert_eq!(join_delta_lower(3, 10), 13);
    }

    #[test]
    fn map_level_double_points() {
        use crate::parse::parse_map;
        let f = parse_map("vars x,y; x, x*y, y^2, y^5").unwrap();
        assert_eq!(double_points_of_map(&f).unwrap(), 2);

        let g = parse_map("vars x,y; x, y^2, y^3, x^4*y").unwrap();
        assert_eq!(double_points_of_map(&g).unwrap(), 4);

        let wrong_target = parse_map("vars x,y; x, y^2, y^3").unwrap();
        assert!(double_points_of_map(&wrong_target).is_err());
    }
}
