//! The delta engine: membership in the exponent monoid M ⊆ N^n generated by
//! the component exponents, a finiteness certificate, and exact gap counting
//! δ_f = #(N^n \ M).
//!
//! Membership on a box [0,B]^n is computed by forward dynamic programming.
//! The count is accepted only under the shell certificate: with r_i the least
//! pure-power exponent on axis i, every box point with v_i > B − r_i for some
//! i must be a member. Any point outside the box then reduces into that shell
//! by subtracting multiples of the pure-power generators r_i·e_i, so the
//! whole complement of M lies inside the box and the count is exact.

use bitvec::prelude::*;
use thiserror::Error;

use crate::classify::{structural_finiteness, NotFiniteReason};
use crate::germ::{deg_lex, ExponentVector, MonomialMap};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("membership box of {cells} cells exceeds the cap of {cap}")]
    BoxTooLarge { cells: u128, cap: usize },
    #[error("box bound {bound} is below a generator coordinate {coord}")]
    BoundBelowGenerator { bound: u64, coord: u64 },
    #[error("delta is not finite")]
    NotFinite,
    #[error(
        "internal inconsistency: the structural criterion says finite but the shell \
         certificate did not hold by box bound {bound_reached}; with the default cell cap \
         this is a bug, with a lowered cap raise it and retry"
    )]
    InternalInconsistency { bound_reached: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// Options for the delta computation. `max_box_cells` is a resource guard
/// only; verdicts never depend on it.
#[derive(Debug, Clone, Copy)]
pub struct DeltaOptions {
    pub max_box_cells: usize,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions {
            max_box_cells: 100_000_000,
        }
    }
}

/// Outcome of gap counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaResult {
    /// The complement of M is finite: its size and the monomial basis of the
    /// quotient, sorted degree-lexicographically.
    Finite {
        delta: u64,
        basis: Vec<ExponentVector>,
    },
    /// The complement is infinite, with the witness family.
    Infinite { witness: NotFiniteReason },
    /// Certification did not finish within the box cap (only produced by the
    /// certificate-only route; the full route consults the structural
    /// criterion instead).
    Inconclusive { bound_reached: u64 },
}

impl DeltaResult {
    pub fn finite_delta(&self) -> Option<u64> {
        match self {
            DeltaResult::Finite { delta, .. } => Some(*delta),
            _ => None,
        }
    }
}

/// Characteristic function of the exponent monoid on the box [0,B]^n.
pub struct MembershipTable {
    bound: u64,
    dims: usize,
    strides: Vec<usize>,
    bits: BitVec,
    generators: Vec<ExponentVector>,
}

impl MembershipTable {
    /// Builds the table by one forward pass over the box in row-major order.
    /// Every cell is a member iff it is zero or some generator g ≤ v has
    /// v − g a member.
    pub fn build(map: &MonomialMap, bound: u64, cell_cap: usize) -> Result<Self, MonoidError> {
        let mut generators: Vec<ExponentVector> = map.components().to_vec();
        generators.sort_unstable();
        generators.dedup();

        for g in &generators {
            if let Some(&coord) = g.entries().iter().find(|&&e| e > bound) {
                return Err(MonoidError::BoundBelowGenerator { bound, coord });
            }
        }

        let dims = map.n();
        let side = bound as u128 + 1;
        let mut cells: u128 = 1;
        for _ in 0..dims {
            cells = cells
                .checked_mul(side)
                .ok_or(MonoidError::Overflow("box size"))?;
        }
        if cells > cell_cap as u128 {
            return Err(MonoidError::BoxTooLarge {
                cells,
                cap: cell_cap,
            });
        }
        let cells = cells as usize;

        // row-major strides; the last variable varies fastest
        let mut strides = vec![0usize; dims];
        let mut acc = 1usize;
        for i in (0..dims).rev() {
            strides[i] = acc;
            acc *= side as usize;
        }

        let offsets: Vec<usize> = generators
            .iter()
            .map(|g| {
                g.entries()
                    .iter()
                    .zip(&strides)
                    .map(|(&e, &s)| e as usize * s)
                    .sum()
            })
            .collect();

        let mut bits = bitvec![0; cells];
        bits.set(0, true);
        let mut point = vec![0u64; dims];
        for idx in 1..cells {
            // odometer increment of the row-major point
            for i in (0..dims).rev() {
                if point[i] < bound {
                    point[i] += 1;
                    break;
                }
                point[i] = 0;
            }
            let mut member = false;
            for (g, &off) in generators.iter().zip(&offsets) {
                if g.entries().iter().zip(&point).all(|(&e, &v)| e <= v) && bits[idx - off] {
                    member = true;
                    break;
                }
            }
            if member {
                bits.set(idx, true);
            }
        }

        Ok(MembershipTable {
            bound,
            dims,
            strides,
            bits,
            generators,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Membership of a point inside the box.
    pub fn contains(&self, point: &[u64]) -> bool {
        debug_assert_eq!(point.len(), self.dims);
        debug_assert!(point.iter().all(|&v| v <= self.bound));
        let idx: usize = point
            .iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as usize * s)
            .sum();
        self.bits[idx]
    }

    /// Checks the shell certificate for per-axis periods `r`: every box point
    /// with v_i > bound − r_i for at least one i is a member.
    pub fn shell_certified(&self, r: &[u64]) -> bool {
        debug_assert_eq!(r.len(), self.dims);
        let inner: Vec<u64> = r.iter().map(|&ri| self.bound.saturating_sub(ri)).collect();
        let mut point = vec![0u64; self.dims];
        for idx in 0..self.bits.len() {
            if idx > 0 {
                for i in (0..self.dims).rev() {
                    if point[i] < self.bound {
                        point[i] += 1;
                        break;
                    }
                    point[i] = 0;
                }
            }
            let in_shell = point.iter().zip(&inner).any(|(&v, &b)| v > b);
            if in_shell && !self.bits[idx] {
                return false;
            }
        }
        true
    }

    /// All non-members in the box, sorted degree-lexicographically.
    pub fn non_members(&self) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut point = vec![0u64; self.dims];
        for idx in 0..self.bits.len() {
            if idx > 0 {
                for i in (0..self.dims).rev() {
                    if point[i] < self.bound {
                        point[i] += 1;
                        break;
                    }
                    point[i] = 0;
                }
            }
            if !self.bits[idx] {
                out.push(ExponentVector::new(point.clone()));
            }
        }
        out.sort_by(deg_lex);
        out
    }
}

/// Exact membership of a single exponent vector in the monoid, by dynamic
/// programming over the sub-box [0, v]. Independent of any certified table.
pub fn contains_exponent(map: &MonomialMap, v: &ExponentVector) -> bool {
    assert_eq!(
        v.len(),
        map.n(),
        "exponent vector must match the source dimension"
    );
    if v.is_zero() {
        return true;
    }
    let dims = map.n();
    let mut strides = vec![0usize; dims];
    let mut acc = 1usize;
    for i in (0..dims).rev() {
        strides[i] = acc;
        acc = acc
            .checked_mul(v.entries()[i] as usize + 1)
            .expect("membership query box exceeds the address space");
    }
    let cells = acc;
    let gens: Vec<&ExponentVector> = map.components().iter().filter(|g| g.divides(v)).collect();
    if gens.is_empty() {
        return false;
    }
    let offsets: Vec<usize> = gens
        .iter()
        .map(|g| {
            g.entries()
                .iter()
                .zip(&strides)
                .map(|(&e, &s)| e as usize * s)
                .sum()
        })
        .collect();
    let mut bits = bitvec![0; cells];
    bits.set(0, true);
    let mut point = vec![0u64; dims];
    for idx in 1..cells {
        for i in (0..dims).rev() {
            if point[i] < v.entries()[i] {
                point[i] += 1;
                break;
            }
            point[i] = 0;
        }
        for (g, &off) in gens.iter().zip(&offsets) {
            if g.entries().iter().zip(&point).all(|(&e, &w)| e <= w) && bits[idx - off] {
                bits.set(idx, true);
                break;
            }
        }
    }
    bits[cells - 1]
}

/// Per-axis pure-power periods r_i = min P_i, or the axis missing one.
fn axis_periods(map: &MonomialMap) -> Result<Vec<u64>, NotFiniteReason> {
    map.pure_power_profile()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.first()
                .copied()
                .ok_or(NotFiniteReason::MissingPurePower { var: i })
        })
        .collect()
}

/// Starting box bound: twice the largest generator coordinate plus the
/// largest conductor among the per-axis semigroups that have one.
fn initial_bound(map: &MonomialMap) -> u64 {
    let max_coord = map
        .components()
        .iter()
        .flat_map(|c| c.entries().iter().copied())
        .max()
        .unwrap_or(1);
    let max_conductor = map
        .pure_power_profile()
        .iter()
        .filter_map(|p| NumericalSemigroup::from_generators(p).ok())
        .map(|s| s.conductor())
        .max()
        .unwrap_or(0);
    (2 * max_coord + max_conductor).max(1)
}

fn grow_and_certify(
    map: &MonomialMap,
    options: DeltaOptions,
) -> Result<Result<MembershipTable, u64>, MonoidError> {
    let periods = match axis_periods(map) {
        Ok(p) => p,
        Err(_) => unreachable!("caller screens missing pure powers"),
    };
    let mut bound = initial_bound(map);
    let mut last_tried = 0;
    loop {
        match MembershipTable::build(map, bound, options.max_box_cells) {
            Ok(table) => {
                if table.shell_certified(&periods) {
                    return Ok(Ok(table));
                }
                last_tried = bound;
                bound = match bound.checked_mul(2) {
                    Some(b) => b,
                    None => return Ok(Err(last_tried)),
                };
            }
            Err(MonoidError::BoxTooLarge { .. }) => return Ok(Err(last_tried)),
            Err(e) => return Err(e),
        }
    }
}

/// Gap counting by certified box search alone. At the cap it reports
/// `Inconclusive` rather than consulting the structural criterion, so it can
/// serve as an independent route against [`structural_finiteness`].
pub fn delta_certified(
    map: &MonomialMap,
    options: DeltaOptions,
) -> Result<DeltaResult, MonoidError> {
    if let Err(witness @ NotFiniteReason::MissingPurePower { .. }) = axis_periods(map).map(|_| ()) {
        return Ok(DeltaResult::Infinite { witness });
    }
    match grow_and_certify(map, options)? {
        Ok(table) => {
            let basis = table.non_members();
            Ok(DeltaResult::Finite {
                delta: basis.len() as u64,
                basis,
            })
        }
        Err(bound_reached) => Ok(DeltaResult::Inconclusive { bound_reached }),
    }
}

/// The delta invariant δ_f = #(N^n \ M).
///
/// Axes without a pure power are reported infinite immediately. Otherwise the
/// box grows until the shell certificate holds. If the cap is reached first,
/// the structural criterion is consulted: a not-finite answer yields
/// `Infinite` with its witness; a finite answer means certification should
/// have succeeded, so the run aborts with `InternalInconsistency`.
pub fn delta(map: &MonomialMap, options: DeltaOptions) -> Result<DeltaResult, MonoidError> {
    match delta_certified(map, options)? {
        DeltaResult::Inconclusive { bound_reached } => match structural_finiteness(map) {
            Err(witness) => Ok(DeltaResult::Infinite { witness }),
            Ok(_) => Err(MonoidError::InternalInconsistency { bound_reached }),
        },
        done => Ok(done),
    }
}

/// The monomial basis of the quotient: the complement N^n \ M, sorted
/// degree-lexicographically. Errors when delta is not finite.
pub fn monomial_basis(
    map: &MonomialMap,
    options: DeltaOptions,
) -> Result<Vec<ExponentVector>, MonoidError> {
    match delta(map, options)? {
        DeltaResult::Finite { basis, .. } => Ok(basis),
        _ => Err(MonoidError::NotFinite),
    }
}

/// L_e-codimension p·δ_f.
pub fn le_codimension(map: &MonomialMap, options: DeltaOptions) -> Result<u64, MonoidError> {
    match delta(map, options)? {
        DeltaResult::Finite { delta, .. } => (map.p() as u64)
            .checked_mul(delta)
            .ok_or(MonoidError::Overflow("L_e-codimension")),
        _ => Err(MonoidError::NotFinite),
    }
}

/// Stability report: stable iff δ_f = 0. The equivalence is stated for
/// p ≥ 2n; below that the caveat flag is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stability {
    pub stable: bool,
    pub caveat_low_target: bool,
}

pub fn is_stable(map: &MonomialMap, options: DeltaOptions) -> Result<Stability, MonoidError> {
    let stable = match delta(map, options)? {
        DeltaResult::Finite { delta, .. } => delta == 0,
        _ => false,
    };
    Ok(Stability {
        stable,
        caveat_low_target: map.p() < 2 * map.n(),
    })
}
