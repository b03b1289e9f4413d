//! Built-in verification suite: the worked-example oracle checks, the
//! randomized cross-oracle between the structural classifier and the
//! certified box count, and the closed-form invariant identities. The CLI
//! `selftest` command and the acceptance tests both run through here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, min_target_dimension, structural_finiteness, Verdict};
use crate::germ::MonomialMap;
use crate::invariants;
use crate::monoid::{contains_exponent, delta, delta_certified, DeltaOptions, DeltaResult};
use crate::parse::parse_map;
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail,
        }
    }
}

/// Worked examples with known delta values.
pub fn delta_examples() -> Vec<(String, u64)> {
    let mut cases: Vec<(String, u64)> = vec![
        ("vars x,y; x^3, x^4, y^5, y^6, x^2*y, x*y^3".into(), 48),
        ("vars x1,x2,y; x1, x2, y^4, y^5, x1*y, x2*y".into(), 15),
        (
            "vars x1,x2,y; x1, x2, y^4, y^5, x1*y, x2*y, x1*x2*y^3".into(),
            14,
        ),
        ("vars x,y,z; x, y^2, y^3, z^2, z^3, x*y, x*z, y*z".into(), 4),
    ];
    for k in 1..=6u64 {
        cases.push((format!("vars x,y; x, x*y, y^2, y^{}", 2 * k + 1), k));
        cases.push((format!("vars x,y; x, y^2, y^3, x^{k}*y"), k));
    }
    cases
}

/// Checks one delta example; exposed so a wrong expectation is detectably
/// caught (the negative control of the suite).
pub fn check_delta_example(text: &str, expected: u64) -> CheckResult {
    let name = format!("delta[{text}]");
    let map = match parse_map(text) {
        Ok(m) => m,
        Err(e) => return CheckResult::fail(&name, format!("parse error: {e}")),
    };
    match delta(&map, DeltaOptions::default()) {
        Ok(DeltaResult::Finite { delta, .. }) if delta == expected => {
            CheckResult::pass(&name, format!("delta = {delta}"))
        }
        Ok(DeltaResult::Finite { delta, .. }) => {
            CheckResult::fail(&name, format!("delta = {delta}, expected {expected}"))
        }
        other => CheckResult::fail(&name, format!("{other:?}")),
    }
}

pub fn run_delta_suite() -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = delta_examples()
        .iter()
        .map(|(text, expected)| check_delta_example(text, *expected))
        .collect();

    // the corank-2 example in three variables carries its basis
    let map = parse_map("vars x,y,z; x, y^2, y^3, z^2, z^3, x*y, x*z, y*z").unwrap();
    let got = match delta(&map, DeltaOptions::default()) {
        Ok(DeltaResult::Finite { basis, .. }) => basis
            .iter()
            .map(|b| b.entries().to_vec())
            .collect::<Vec<_>>(),
        other => {
            out.push(CheckResult::fail(
                "delta-basis[corank-2]",
                format!("{other:?}"),
            ));
            return out;
        }
    };
    let expected = vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 2], vec![0, 2, 1]];
    out.push(if got == expected {
        CheckResult::pass("delta-basis[corank-2]", "basis {z, y, yz^2, y^2z}".into())
    } else {
        CheckResult::fail("delta-basis[corank-2]", format!("{got:?}"))
    });
    out
}

/// Gap and Apéry checks: the worked gap lists plus the naive-sieve oracle on
/// every two-generator semigroup with parts ≤ 30 and random three-generator
/// semigroups.
pub fn run_semigroup_suite(seed: u64, random_cases: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let lists: [(&[u64], &[u64]); 3] = [
        (&[3, 4], &[1, 2, 5]),
        (&[5, 6], &[1, 2, 3, 4, 7, 8, 9, 13, 14, 19]),
        (&[4, 5], &[1, 2, 3, 6, 7, 11]),
    ];
    for (gens, expected) in lists {
        let s = NumericalSemigroup::from_generators(gens).unwrap();
        let name = format!("gaps{gens:?}");
        out.push(if s.gaps() == expected {
            CheckResult::pass(&name, format!("{} gaps", expected.len()))
        } else {
            CheckResult::fail(&name, format!("{:?}", s.gaps()))
        });
    }

    let mut mismatches = 0usize;
    let mut checked = 0usize;
    for m1 in 2..=30u64 {
        for m2 in (m1 + 1)..=30u64 {
            if crate::semigroup::gcd_slice(&[m1, m2]) != 1 {
                continue;
            }
            checked += 1;
            let s = NumericalSemigroup::from_generators(&[m1, m2]).unwrap();
            if s.gaps() != sieve_gaps(&[m1, m2], 2 * m2 * m2) {
                mismatches += 1;
            }
        }
    }
    out.push(if mismatches == 0 {
        CheckResult::pass(
            "gaps-vs-sieve[2 generators ≤ 30]",
            format!("{checked} semigroups agree"),
        )
    } else {
        CheckResult::fail(
            "gaps-vs-sieve[2 generators ≤ 30]",
            format!("{mismatches} mismatches"),
        )
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0usize;
    let mut failures = 0usize;
    while done < random_cases {
        let gens = [
            rng.gen_range(2..=30u64),
            rng.gen_range(2..=30u64),
            rng.gen_range(2..=30u64),
        ];
        let s = match NumericalSemigroup::from_generators(&gens) {
            Ok(s) => s,
            Err(_) => continue, // gcd > 1; resample
        };
        done += 1;
        let bound = 2 * gens.iter().max().unwrap() * gens.iter().max().unwrap();
        if s.gaps() != sieve_gaps(&gens, bound) {
            failures += 1;
        }
    }
    out.push(if failures == 0 {
        CheckResult::pass(
            "gaps-vs-sieve[random 3 generators]",
            format!("{done} semigroups agree"),
        )
    } else {
        CheckResult::fail(
            "gaps-vs-sieve[random 3 generators]",
            format!("{failures} mismatches"),
        )
    });
    out
}

fn sieve_gaps(gens: &[u64], bound: u64) -> Vec<u64> {
    let n = bound as usize + 1;
    let mut member = vec![false; n];
    member[0] = true;
    for t in 0..n {
        if !member[t] {
            continue;
        }
        for &g in gens {
            let u = t + g as usize;
            if u < n {
                member[u] = true;
            }
        }
    }
    member
        .iter()
        .enumerate()
        .filter(|(_, &m)| !m)
        .map(|(t, _)| t as u64)
        .collect()
}

/// One randomized map of the cross-oracle corpus, p ≥ 2n, n ≤ 3,
/// exponents ≤ 7. Mixes normal-form joins with residuals, normal forms with
/// one required component deleted, and arbitrary component sets.
fn random_corpus_map(rng: &mut ChaCha8Rng) -> MonomialMap {
    loop {
        let style = rng.gen_range(0..3u8);
        let candidate = match style {
            0 => random_join_shape(rng, false),
            1 => random_join_shape(rng, true),
            _ => random_arbitrary_map(rng),
        };
        if let Some(map) = candidate {
            if map.p() >= 2 * map.n() {
                return map;
            }
        }
    }
}

const COPRIME_CURVES: &[&[u64]] = &[
    &[2, 3],
    &[2, 5],
    &[2, 7],
    &[3, 4],
    &[3, 5],
    &[3, 7],
    &[4, 5],
    &[4, 7],
    &[5, 6],
    &[5, 7],
    &[6, 7],
    &[2, 3, 7],
    &[3, 4, 5],
    &[4, 5, 6],
    &[4, 6, 7],
];

fn random_join_shape(rng: &mut ChaCha8Rng, mutate: bool) -> Option<MonomialMap> {
    let n = rng.gen_range(1..=3usize);
    let q = rng.gen_range(0..=n);
    let mut comps: Vec<Vec<u64>> = Vec::new();
    for i in 0..n - q {
        let mut v = vec![0u64; n];
        v[i] = 1;
        comps.push(v);
    }
    for j in n - q..n {
        let curve = COPRIME_CURVES[rng.gen_range(0..COPRIME_CURVES.len())];
        for &m in curve {
            let mut v = vec![0u64; n];
            v[j] = m;
            comps.push(v);
        }
    }
    for i in 0..n - q {
        for j in n - q..n {
            let mut v = vec![0u64; n];
            v[i] = rng.gen_range(1..=3u64);
            v[j] = 1;
            comps.push(v);
        }
    }
    for j in n - q..n {
        for t in n - q..n {
            if j == t {
                continue;
            }
            let mut v = vec![0u64; n];
            v[j] = rng.gen_range(1..=3u64);
            v[t] = 1;
            if !comps.contains(&v) {
                comps.push(v);
            }
        }
    }
    for _ in 0..rng.gen_range(0..=2usize) {
        if n < 2 {
            break;
        }
        let mut v = vec![0u64; n];
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        v[a] = rng.gen_range(1..=7u64);
        v[b] = rng.gen_range(1..=7u64);
        comps.push(v);
    }
    if mutate && comps.len() > 1 {
        let victim = rng.gen_range(0..comps.len());
        comps.remove(victim);
    }
    MonomialMap::from_exponents(n, comps).ok()
}

fn random_arbitrary_map(rng: &mut ChaCha8Rng) -> Option<MonomialMap> {
    let n = rng.gen_range(1..=3usize);
    let p = 2 * n + rng.gen_range(0..=3usize);
    let mut comps = Vec::with_capacity(p);
    for _ in 0..p {
        loop {
            let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=7u64)).collect();
            if v.iter().any(|&e| e != 0) {
                comps.push(v);
                break;
            }
        }
    }
    MonomialMap::from_exponents(n, comps).ok()
}

/// Cross-oracle over the worked examples plus `random_cases` random maps:
/// the structural classifier and the certified box count must agree on
/// finiteness, witnesses must be genuine, and finite verdicts must satisfy
/// the target-dimension threshold.
pub fn run_cross_oracle(seed: u64, random_cases: usize) -> Vec<CheckResult> {
    let mut maps: Vec<MonomialMap> = delta_examples()
        .iter()
        .map(|(text, _)| parse_map(text).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_cases {
        maps.push(random_corpus_map(&mut rng));
    }

    let generous = DeltaOptions {
        max_box_cells: 20_000_000,
    };
    let modest = DeltaOptions {
        max_box_cells: 250_000,
    };

    let mut disagreements = Vec::new();
    let mut finite_count = 0usize;
    let mut infinite_count = 0usize;
    for map in &maps {
        let text = map.to_surface_syntax();
        match structural_finiteness(map) {
            Ok(d) => {
                finite_count += 1;
                // the certified count must succeed, independently
                match delta_certified(map, generous) {
                    Ok(DeltaResult::Finite { .. }) => {}
                    other => {
                        disagreements
                            .push(format!("{text}: classifier finite, box count {other:?}"));
                        continue;
                    }
                }
                let q = d.corank() as u64;
                let threshold = min_target_dimension(map.n() as u64, q);
                if (map.p() as u64) < threshold {
                    disagreements.push(format!(
                        "{text}: finite with corank {q} but p = {} < {threshold}",
                        map.p()
                    ));
                }
            }
            Err(reason) => {
                infinite_count += 1;
                // the certificate can never hold over an infinite complement
                match delta_certified(map, modest) {
                    Ok(DeltaResult::Finite { .. }) => {
                        disagreements.push(format!(
                            "{text}: classifier says not finite, but the box count certified"
                        ));
                        continue;
                    }
                    Ok(_) => {}
                    Err(e) => {
                        disagreements.push(format!("{text}: {e}"));
                        continue;
                    }
                }
                // the full route must agree (its witness may name a different
                // defective axis) and never trip the consistency trap
                let full_witness = match delta(map, modest) {
                    Ok(DeltaResult::Infinite { witness }) => witness,
                    other => {
                        disagreements.push(format!(
                            "{text}: full delta route returned {other:?}, expected infinite"
                        ));
                        continue;
                    }
                };
                // witness families are genuinely outside the monoid
                for witness in [&reason, &full_witness] {
                    for step in 0..20u64 {
                        let w = witness.witness_exponent(map.n(), step);
                        if contains_exponent(map, &w) {
                            disagreements
                                .push(format!("{text}: witness member {w:?} is in the monoid"));
                            break;
                        }
                    }
                }
            }
        }
    }

    let name = "cross-oracle[classifier vs certified box count]";
    vec![if disagreements.is_empty() {
        CheckResult::pass(
            name,
            format!(
                "{} maps agree ({} finite, {} infinite)",
                maps.len(),
                finite_count,
                infinite_count
            ),
        )
    } else {
        CheckResult::fail(name, disagreements.join("; "))
    }]
}

/// Sandwich check: κ₁·δ_φ ≤ δ_f ≤ κ₂·δ_φ over random corank-one joins, with
/// the two stated equality cases.
pub fn run_sandwich(seed: u64, cases: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let pool: Vec<&[u64]> = vec![&[2, 3], &[2, 5], &[3, 4], &[3, 5], &[4, 5], &[2, 3, 5]];
    for _ in 0..cases {
        let n = rng.gen_range(2..=3usize);
        let curve = pool[rng.gen_range(0..pool.len())];
        let lambdas: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(1..=4u64)).collect();
        match invariants::delta_bounds_corank_one(n, curve, &lambdas, Some(DeltaOptions::default()))
        {
            Ok(r) => {
                if !r.is_consistent() {
                    failures.push(format!("n={n}, curve {curve:?}, λ {lambdas:?}: {r:?}"));
                }
            }
            Err(e) => failures.push(format!("n={n}, curve {curve:?}, λ {lambdas:?}: {e}")),
        }
    }

    let mut out = vec![if failures.is_empty() {
        CheckResult::pass(
            "delta-sandwich[random corank-one joins]",
            format!("{cases} joins inside the bounds"),
        )
    } else {
        CheckResult::fail(
            "delta-sandwich[random corank-one joins]",
            failures.join("; "),
        )
    }];

    for lam in [1u64, 2] {
        let r =
            invariants::delta_bounds_corank_one(2, &[2, 3], &[lam], Some(DeltaOptions::default()))
                .unwrap();
        let tight = r.lower == r.upper && r.exact == r.lower && r.exact == Some(lam as i128);
        out.push(if tight {
            CheckResult::pass(
                &format!("delta-sandwich[equality at λ={lam}]"),
                format!("delta = {lam}"),
            )
        } else {
            CheckResult::fail(
                &format!("delta-sandwich[equality at λ={lam}]"),
                format!("{r:?}"),
            )
        });
    }
    out
}

/// Double-point formula agreement and the fold identity d(f) = δ_f.
pub fn run_double_point_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut mismatches = Vec::new();
    for m1 in 2..=7u64 {
        for m2 in (m1 + 1)..=7u64 {
            if crate::semigroup::gcd_slice(&[m1, m2]) != 1 {
                continue;
            }
            for lambdas in [
                vec![1u64],
                vec![2],
                vec![3],
                vec![1, 1],
                vec![2, 3],
                vec![3, 3],
            ] {
                let n = lambdas.len() + 1;
                let degrees: Vec<u64> = std::iter::once(m1)
                    .chain(std::iter::once(m2))
                    .chain(lambdas.iter().map(|&l| l + 1))
                    .collect();
                let weights = vec![1u64; n];
                let via_weights = invariants::double_points_quasihomogeneous(&weights, &degrees);
                let closed = invariants::double_points_join_curve(&lambdas, m1, m2);
                match (via_weights, closed) {
                    (Ok(a), Ok(b)) if a == b => {}
                    other => mismatches.push(format!("(m={m1},{m2}, λ={lambdas:?}): {other:?}")),
                }
            }
        }
    }
    out.push(if mismatches.is_empty() {
        CheckResult::pass(
            "double-points[weighted formula vs closed form]",
            "all coprime pairs ≤ 7, λ ≤ 3".into(),
        )
    } else {
        CheckResult::fail(
            "double-points[weighted formula vs closed form]",
            mismatches.join("; "),
        )
    });

    let mut failures = Vec::new();
    for k in 1..=6u64 {
        for text in [
            format!("vars x,y; x, x*y, y^2, y^{}", 2 * k + 1),
            format!("vars x,y; x, y^2, y^3, x^{k}*y"),
        ] {
            let map = parse_map(&text).unwrap();
            let d = invariants::double_points_of_map(&map);
            let delta_val = delta(&map, DeltaOptions::default())
                .ok()
                .and_then(|r| r.finite_delta());
            match (d, delta_val) {
                (Ok(a), Some(b)) if a == b && b == k => {}
                other => failures.push(format!("{text}: {other:?}")),
            }
        }
    }
    out.push(if failures.is_empty() {
        CheckResult::pass(
            "double-points[fold identity d = delta]",
            "k = 1…6 families".into(),
        )
    } else {
        CheckResult::fail(
            "double-points[fold identity d = delta]",
            failures.join("; "),
        )
    });
    out
}

/// Bound-interval containment: the fold intervals carry their sharp ends and
/// the stable-projection interval contains the worked value 8.
pub fn run_bound_containment() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=6i128 {
        let f = parse_map(&format!("vars x,y; x, x*y, y^2, y^{}", 2 * k + 1)).unwrap();
        let g = parse_map(&format!("vars x,y; x, y^2, y^3, x^{k}*y")).unwrap();
        for (map, sharp) in [(f, k), (g, 2 * k - 1)] {
            match invariants::fold_report(&map, DeltaOptions::default()) {
                Ok(r) => {
                    let lo = r.aecod.lower.unwrap();
                    let hi = r.aecod.upper.unwrap();
                    if !(lo == k && hi == 2 * k - 1 && lo <= sharp && sharp <= hi) {
                        failures.push(format!(
                            "{}: interval [{lo},{hi}], sharp value {sharp}",
                            map.to_surface_syntax()
                        ));
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", map.to_surface_syntax())),
            }
        }
    }
    out.push(if failures.is_empty() {
        CheckResult::pass(
            "fold-intervals[k, 2k−1 with sharp ends]",
            "k = 1…6 families".into(),
        )
    } else {
        CheckResult::fail(
            "fold-intervals[k, 2k−1 with sharp ends]",
            failures.join("; "),
        )
    });

    let r = invariants::projection_bound(0, 6, 3, 4, true, Some(3));
    let contains8 = r.lower.unwrap() <= 8 && 8 <= r.upper.unwrap();
    out.push(if contains8 {
        CheckResult::pass(
            "stable-projection[3-variable example]",
            format!(
                "interval [{:?},{:?}] contains 8",
                r.lower.unwrap(),
                r.upper.unwrap()
            ),
        )
    } else {
        CheckResult::fail("stable-projection[3-variable example]", format!("{r:?}"))
    });
    out
}

/// Dimension-threshold checks for the classifier.
pub fn run_dimension_thresholds(seed: u64, random_cases: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let ok = (1..=8u64).all(|n| min_target_dimension(n, 1) == 2 * n)
        && (1..=8u64).all(|n| min_target_dimension(n, n) == n * (n + 3) / 2);
    out.push(if ok {
        CheckResult::pass(
            "dimension-thresholds[closed forms]",
            "2n at corank 1; n(n+3)/2 at full corank".into(),
        )
    } else {
        CheckResult::fail(
            "dimension-thresholds[closed forms]",
            "closed form mismatch".into(),
        )
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut finite_seen = 0usize;
    for _ in 0..random_cases {
        let map = random_corpus_map(&mut rng);
        if let Verdict::Finite(d) = classify(&map) {
            finite_seen += 1;
            let threshold = min_target_dimension(map.n() as u64, d.corank() as u64);
            if (map.p() as u64) < threshold {
                violations.push(map.to_surface_syntax());
            }
        }
    }
    out.push(if violations.is_empty() {
        CheckResult::pass(
            "dimension-thresholds[random finite verdicts]",
            format!("{finite_seen} finite maps at or above the threshold"),
        )
    } else {
        CheckResult::fail(
            "dimension-thresholds[random finite verdicts]",
            violations.join("; "),
        )
    });
    out
}

/// The whole suite, in acceptance order.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.extend(run_delta_suite());
    out.extend(run_semigroup_suite(seed, 200));
    out.extend(run_cross_oracle(seed, 500));
    out.extend(run_sandwich(seed, 100));
    out.extend(run_double_point_suite());
    out.extend(run_bound_containment());
    out.extend(run_dimension_thresholds(seed, 200));
    out
}
