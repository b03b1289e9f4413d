//! Invariants of monomial map-germs (C^n, 0) → (C^p, 0): numerical-semigroup
//! data, exact delta invariants by certified lattice-gap counting,
//! A-finiteness classification into elementary-join normal forms, and
//! closed-form bound reports.
//!
//! The two central routes are deliberately independent: [`classify`] decides
//! finiteness structurally from the component list, while [`monoid`] counts
//! the complement of the exponent monoid inside a box and accepts the count
//! only under a shell certificate. They must agree; disagreement aborts the
//! run and the built-in [`selftest`] corpus exercises the pair on randomized
//! maps.
//!
//! ```
//! use monogerm::classify::{classify, Verdict};
//! use monogerm::monoid::{delta, DeltaOptions, DeltaResult};
//! use monogerm::parse::parse_map;
//!
//! let f = parse_map("vars x,y; x, y^4, y^5, x*y").unwrap();
//! assert!(matches!(classify(&f), Verdict::Finite(_)));
//! match delta(&f, DeltaOptions::default()).unwrap() {
//!     DeltaResult::Finite { delta, basis } => {
//!         // the six axis gaps y^l, l ∈ {1,2,3,6,7,11}, plus the mixed
//!         // gaps x*y^2, x*y^3, x*y^7, x^2*y^3
//!         assert_eq!(delta, 10);
//!         assert_eq!(basis.len(), 10);
//!     }
//!     other => panic!("{other:?}"),
//! }
//! ```

pub mod classify;
pub mod germ;
pub mod invariants;
pub mod join;
pub mod monoid;
pub mod parse;
pub mod report;
pub mod selftest;
pub mod semigroup;
