//! Numerical semigroups of N: membership, Apéry sequences, gaps, conductor,
//! and the delta invariant of monomial curves.
//!
//! A numerical semigroup here is always primitive (generator gcd 1), so it has
//! a conductor and a finite gap set. Membership and gaps are driven by the
//! Apéry set with respect to the multiplicity: every element s decomposes as
//! s = a + β·m₁ with a in the Apéry set, and every gap as a − β·m₁.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest Apéry modulus for which a residue table is allocated.
pub const MAX_APERY_MODULUS: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("generators have gcd {0} > 1 (non-primitive parameterization)")]
    NonPrimitive(u64),
    #[error("modulus {0} is not an element of the semigroup")]
    ModulusNotInSemigroup(u64),
    #[error("modulus {0} exceeds the supported residue-table size {MAX_APERY_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// A numerical semigroup ⟨v₁, …, v_r⟩ ⊆ N with gcd(v₁, …, v_r) = 1.
///
/// Values are immutable after construction; the Apéry table with respect to
/// the multiplicity is computed on first use and shared across threads.
#[derive(Debug)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    multiplicity: u64,
    apery_mult: OnceLock<Vec<u64>>,
}

impl Clone for NumericalSemigroup {
    fn clone(&self) -> Self {
        let apery_mult = OnceLock::new();
        if let Some(a) = self.apery_mult.get() {
            let _ = apery_mult.set(a.clone());
        }
        NumericalSemigroup {
            generators: self.generators.clone(),
            multiplicity: self.multiplicity,
            apery_mult,
        }
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}
impl Eq for NumericalSemigroup {}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_slice(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`.
    ///
    /// Generators are deduplicated and sorted; redundant generators are
    /// retained, they never change results. Fails unless the gcd is 1.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let g = gcd_slice(&generators);
        if g != 1 {
            return Err(SemigroupError::NonPrimitive(g));
        }
        let multiplicity = generators[0];
        if multiplicity > MAX_APERY_MODULUS {
            // membership is driven by the residue table mod the multiplicity
            return Err(SemigroupError::ModulusTooLarge(multiplicity));
        }
        Ok(NumericalSemigroup {
            generators,
            multiplicity,
            apery_mult: OnceLock::new(),
        })
    }

    /// The normalized (sorted, deduplicated) generator list.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The smallest nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    fn apery_mult_table(&self) -> &[u64] {
        self.apery_mult.get_or_init(|| {
            apery_by_residue(&self.generators, self.multiplicity)
                .expect("multiplicity is a generator and within the table cap")
        })
    }

    /// The Apéry sequence with respect to `q`: the least element of the
    /// semigroup in each residue class mod q, listed in ascending order
    /// (the order in which the inductive minima are found).
    pub fn apery_sequence(&self, q: u64) -> Result<Vec<u64>, SemigroupError> {
        if q == 0 || !self.contains(q) {
            return Err(SemigroupError::ModulusNotInSemigroup(q));
        }
        let mut seq = if q == self.multiplicity {
            self.apery_mult_table().to_vec()
        } else {
            apery_by_residue(&self.generators, q)?
        };
        seq.sort_unstable();
        Ok(seq)
    }

    /// Membership test: s ∈ S iff the least element in its residue class
    /// mod m₁ does not exceed s.
    pub fn contains(&self, s: u64) -> bool {
        let m = self.multiplicity;
        self.apery_mult_table()[(s % m) as usize] <= s
    }

    /// The gap set N \ S, ascending. Every gap is a_j − β·m₁ for an Apéry
    /// element a_j and 1 ≤ β ≤ ⌊a_j/m₁⌋.
    pub fn gaps(&self) -> Vec<u64> {
        let m = self.multiplicity;
        let mut gaps = Vec::new();
        for &a in self.apery_mult_table() {
            let mut v = a;
            while v >= m {
                v -= m;
                gaps.push(v);
            }
        }
        // 0 ∈ S never produces a gap; classes are disjoint so no duplicates.
        gaps.retain(|&g| g != 0);
        gaps.sort_unstable();
        gaps
    }

    /// Least c with c + N ⊆ S; equals max(gaps) + 1, or 0 when there are none.
    pub fn conductor(&self) -> u64 {
        let max_apery = *self
            .apery_mult_table()
            .iter()
            .max()
            .expect("table is nonempty");
        if max_apery <= self.multiplicity {
            0
        } else {
            max_apery - self.multiplicity + 1
        }
    }

    /// The delta invariant: the number of gaps, Σ_j ⌊a_j/m₁⌋.
    pub fn delta(&self) -> u64 {
        let m = self.multiplicity;
        self.apery_mult_table().iter().map(|&a| a / m).sum()
    }
}

/// Least element of the semigroup of `gens` in each residue class mod `q`,
/// indexed by residue. Shortest-path search on the residue graph: an edge
/// r → (r + g) mod q of weight g per generator.
fn apery_by_residue(gens: &[u64], q: u64) -> Result<Vec<u64>, SemigroupError> {
    if q > MAX_APERY_MODULUS {
        return Err(SemigroupError::ModulusTooLarge(q));
    }
    let qn = q as usize;
    let mut dist = vec![u64::MAX; qn];
    dist[0] = 0;
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    heap.push(Reverse((0, 0)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nd = d
                .checked_add(g)
                .ok_or(SemigroupError::Overflow("Apéry element"))?;
            let nr = ((r as u64 + g % q) % q) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    debug_assert!(
        dist.iter().all(|&d| d < u64::MAX),
        "gcd 1 reaches all classes"
    );
    Ok(dist)
}
