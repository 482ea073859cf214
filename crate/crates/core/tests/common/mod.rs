//! Independent reference implementations used to cross-check the library.
//!
//! Nothing here calls the code paths it checks: the axiom oracle evaluates
//! each formula as a plain nested quantifier, the group-sum oracle builds
//! permutations as explicit index maps with signs from inversion counts,
//! and the counting oracles walk raw assignments.

#![allow(dead_code)]

pub mod cli;

use std::collections::{BTreeMap, BTreeSet};

use ontolabel::{AxiomId, CandidateSystem, ModeLabel, ProductKet, Rational, StateVector, Witness};

/// Witness in position-symmetric form for comparison with the checker.
pub fn normalize(w: &Witness) -> Witness {
    match *w {
        Witness::ParticlePair { first, second } => Witness::ParticlePair {
            first: first.min(second),
            second: first.max(second),
        },
        other => other,
    }
}

/// Direct quantifier evaluation of one axiom.
pub fn oracle_axiom(c: &CandidateSystem, axiom: AxiomId) -> BTreeSet<Witness> {
    let ps = &c.particles;
    let np = ps.len();
    let n = c.labels.len();
    let mut out = BTreeSet::new();
    let pair = |a: usize, b: usize| Witness::ParticlePair {
        first: a.min(b),
        second: a.max(b),
    };
    match axiom {
        AxiomId::D1 => {
            for (k, l) in c.labels.iter().enumerate() {
                let repeated = c.labels[..k].iter().any(|m| m.index == l.index);
                if l.index < 1 || l.index > n || repeated {
                    out.insert(Witness::Label { index: l.index });
                }
            }
            for a in &c.labels {
                for b in &c.labels {
                    if a.index < b.index && a.value == b.value {
                        out.insert(Witness::LabelPair {
                            first: a.index,
                            second: b.index,
                        });
                    }
                }
            }
        }
        AxiomId::D2 => {
            for (k, p) in ps.iter().enumerate() {
                let in_x = c.states.contains(&p.state);
                let in_lambda = c.labels.iter().any(|l| l.index == p.label);
                if !(in_x && in_lambda) {
                    out.insert(Witness::Particle { particle: k });
                }
            }
            for l in &c.labels {
                if !ps.iter().any(|p| p.label == l.index) {
                    out.insert(Witness::Label { index: l.index });
                }
            }
        }
        AxiomId::D3 => {
            for a in 0..np {
                for b in 0..np {
                    if a != b && ps[a].state != ps[b].state && ps[a].label == ps[b].label {
                        out.insert(pair(a, b));
                    }
                }
            }
        }
        AxiomId::D4 => {
            for a in 0..np {
                for b in 0..np {
                    let lhs = c.onto_related(a, b);
                    let rhs = ps[a].state == ps[b].state && ps[a].label == ps[b].label;
                    if lhs != rhs {
                        out.insert(pair(a, b));
                    }
                }
            }
        }
        AxiomId::D5 => {
            for a in 0..np {
                for b in 0..np {
                    if c.phys_related(a, b) != (ps[a].state == ps[b].state) {
                        out.insert(pair(a, b));
                    }
                }
            }
        }
        AxiomId::D6 => {
            for a in 0..np {
                for b in 0..np {
                    if a != b && c.phys_related(a, b) && !(ps[a].micro && ps[b].micro) {
                        out.insert(pair(a, b));
                    }
                }
            }
        }
        AxiomId::D7 => {
            for (k, p) in ps.iter().enumerate() {
                if p.micro && p.macro_ {
                    out.insert(Witness::Particle { particle: k });
                }
            }
        }
    }
    out
}

/// `(1/n!) Σ_σ [sgn σ] P_σ v`, with each permutation built as an explicit
/// slot map and its sign taken from the inversion count.
pub fn oracle_group_sum(v: &StateVector, signed: bool) -> StateVector {
    let n = v.slots();
    let perms = all_permutations(n);
    let order = Rational::from_integer(perms.len().into());
    let mut acc: BTreeMap<ProductKet, Rational> = BTreeMap::new();
    for (ket, c) in v.terms() {
        for perm in &perms {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let sign = if signed && inversions % 2 == 1 { -1 } else { 1 };
            let image: Vec<ModeLabel> = (0..n).map(|i| ket.slots()[perm[i]].clone()).collect();
            let term = c * Rational::from_integer(sign.into()) / &order;
            *acc.entry(ProductKet::new(image))
                .or_insert_with(|| Rational::from_integer(0.into())) += term;
        }
    }
    StateVector::from_terms(n, acc).unwrap()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every map from `n` slots to `g` modes.
pub fn raw_assignments(n: usize, g: usize) -> Vec<Vec<usize>> {
    (0..g.pow(n as u32))
        .map(|mut code| {
            let mut a = vec![0; n];
            for slot in (0..n).rev() {
                a[slot] = code % g;
                code /= g;
            }
            a
        })
        .collect()
}

/// Occupation vectors reached from raw assignments, optionally dropping any
/// with a doubly occupied mode.
pub fn oracle_occupations(n: usize, g: usize, exclusive: bool) -> BTreeSet<Vec<u32>> {
    raw_assignments(n, g)
        .into_iter()
        .map(|a| {
            let mut occ = vec![0u32; g];
            for m in a {
                occ[m] += 1;
            }
            occ
        })
        .filter(|occ| !exclusive || occ.iter().all(|&k| k <= 1))
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Hand-enumerated two-particle, two-mode case with energies (0, 1).
/// Returns (MB, BE, FD) mean occupations at inverse temperature `beta`.
pub fn oracle_two_by_two(beta: f64) -> [[f64; 2]; 3] {
    let w = |e: f64| (-beta * e).exp();
    // MB: (m1,m1) E=0, (m1,m2) E=1, (m2,m1) E=1, (m2,m2) E=2.
    let z_mb = w(0.0) + 2.0 * w(1.0) + w(2.0);
    let mb0 = (2.0 * w(0.0) + 2.0 * w(1.0)) / z_mb;
    let mb1 = (2.0 * w(1.0) + 2.0 * w(2.0)) / z_mb;
    // BE: [2,0] E=0, [1,1] E=1, [0,2] E=2.
    let z_be = w(0.0) + w(1.0) + w(2.0);
    let be0 = (2.0 * w(0.0) + w(1.0)) / z_be;
    let be1 = (w(1.0) + 2.0 * w(2.0)) / z_be;
    // FD: only [1,1].
    [[mb0, mb1], [be0, be1], [1.0, 1.0]]
}
