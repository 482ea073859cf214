//! Microstate counting for labeled particles.
//!
//! Maxwell-Boltzmann microstates are assignments of each labeled particle to
//! a mode. Bose-Einstein and Fermi-Dirac microstates are occupation vectors,
//! the classes of assignments that (anti)symmetrization identifies.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exchange::{antisymmetric_span_dimension, symmetric_span_dimension, ModeLabel};
use crate::{Error, Result};

/// Largest microstate space (`gⁿ`) that [`enumerate_microstates`] will walk.
pub const MAX_ASSIGNMENTS: u64 = 1_000_000;
/// Largest particle count for the span-dimension cross-checks.
pub const MAX_SPAN_PARTICLES: usize = 4;
/// Largest mode count for the span-dimension cross-checks.
pub const MAX_SPAN_MODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StatisticsRule {
    #[serde(rename = "MB")]
    MaxwellBoltzmann,
    #[serde(rename = "BE")]
    BoseEinstein,
    #[serde(rename = "FD")]
    FermiDirac,
}

impl StatisticsRule {
    pub const ALL: [StatisticsRule; 3] = [
        StatisticsRule::MaxwellBoltzmann,
        StatisticsRule::BoseEinstein,
        StatisticsRule::FermiDirac,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            StatisticsRule::MaxwellBoltzmann => "MB",
            StatisticsRule::BoseEinstein => "BE",
            StatisticsRule::FermiDirac => "FD",
        }
    }
}

impl fmt::Display for StatisticsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for StatisticsRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mb" => Ok(StatisticsRule::MaxwellBoltzmann),
            "be" => Ok(StatisticsRule::BoseEinstein),
            "fd" => Ok(StatisticsRule::FermiDirac),
            other => Err(Error::InvalidArgument(format!(
                "unknown statistics rule `{other}` (expected mb, be or fd)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub label: ModeLabel,
    pub energy: f64,
}

/// Ordered single-particle modes with their energies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    modes: Vec<Mode>,
}

impl ModeSpec {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidModeSpec(
                "at least one mode is required".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for m in &modes {
            if !seen.insert(&m.label) {
                return Err(Error::InvalidModeSpec(format!(
                    "duplicate mode `{}`",
                    m.label
                )));
            }
            if !m.energy.is_finite() {
                return Err(Error::InvalidModeSpec(format!(
                    "energy of mode `{}` is not finite",
                    m.label
                )));
            }
        }
        Ok(ModeSpec { modes })
    }

    /// Modes `m1..mg`, all at energy zero.
    pub fn uniform(g: usize) -> Result<Self> {
        ModeSpec::from_energies(&vec![0.0; g])
    }

    /// Modes `m1..mg` with the given energies.
    pub fn from_energies(energies: &[f64]) -> Result<Self> {
        ModeSpec::new(
            energies
                .iter()
                .enumerate()
                .map(|(k, &energy)| Mode {
                    label: ModeLabel::new(format!("m{}", k + 1)),
                    energy,
                })
                .collect(),
        )
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    fn labels(&self) -> Vec<ModeLabel> {
        self.modes.iter().map(|m| m.label.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Microstate {
    /// Slot `i` (particle `λᵢ₊₁`) sits in mode `assignment[i]` (0-based).
    Assignment(Vec<usize>),
    /// Number of particles in each mode.
    Occupation(Vec<u32>),
}

impl Microstate {
    /// Occupation numbers over `g` modes.
    pub fn occupations(&self, g: usize) -> Vec<u32> {
        match self {
            Microstate::Assignment(a) => {
                let mut occ = vec![0; g];
                for &m in a {
                    occ[m] += 1;
                }
                occ
            }
            Microstate::Occupation(o) => o.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MicrostateEnsemble {
    pub rule: StatisticsRule,
    pub n: usize,
    pub spec: ModeSpec,
    pub states: Vec<Microstate>,
}

fn check_bounds(n: usize, g: usize) -> Result<()> {
    let fits = u32::try_from(n)
        .ok()
        .and_then(|e| (g as u64).checked_pow(e))
        .is_some_and(|size| size <= MAX_ASSIGNMENTS);
    if fits {
        Ok(())
    } else {
        Err(Error::ResourceLimit(format!(
            "g^n = {g}^{n} exceeds {MAX_ASSIGNMENTS} microstates"
        )))
    }
}

/// Every microstate of `n` particles over `spec` under `rule`.
///
/// Assignments are listed in lexicographic order, occupation vectors in
/// colexicographic order.
pub fn enumerate_microstates(
    n: usize,
    spec: &ModeSpec,
    rule: StatisticsRule,
) -> Result<MicrostateEnsemble> {
    let g = spec.len();
    check_bounds(n, g)?;
    let states = match rule {
        StatisticsRule::MaxwellBoltzmann => assignments(n, g)
            .into_iter()
            .map(Microstate::Assignment)
            .collect(),
        StatisticsRule::BoseEinstein => occupation_vectors(n, g, u32::MAX)
            .into_iter()
            .map(Microstate::Occupation)
            .collect(),
        StatisticsRule::FermiDirac => occupation_vectors(n, g, 1)
            .into_iter()
            .map(Microstate::Occupation)
            .collect(),
    };
    Ok(MicrostateEnsemble {
        rule,
        n,
        spec: spec.clone(),
        states,
    })
}

fn assignments(n: usize, g: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; n];
    loop {
        out.push(current.clone());
        // Odometer with slot 0 most significant.
        let Some(pos) = current.iter().rposition(|&m| m + 1 < g) else {
            return out;
        };
        current[pos] += 1;
        current[pos + 1..].iter_mut().for_each(|m| *m = 0);
    }
}

fn occupation_vectors(n: usize, g: usize, cap: u32) -> Vec<Vec<u32>> {
    fn fill(rest: u32, slot: usize, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == current.len() {
            if rest <= cap {
                current[slot] = rest;
                out.push(current.clone());
            }
            return;
        }
        for k in 0..=rest.min(cap) {
            current[slot] = k;
            fill(rest - k, slot + 1, cap, current, out);
        }
    }
    let mut out = Vec::new();
    let total = u32::try_from(n).expect("bounded particle count");
    fill(total, 0, cap, &mut vec![0; g], &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `gⁿ`, `C(n+g−1, n)` or `C(g, n)`.
pub fn count_closed_form(n: usize, g: usize, rule: StatisticsRule) -> BigUint {
    let (n64, g64) = (n as u64, g as u64);
    match rule {
        StatisticsRule::MaxwellBoltzmann => BigUint::from(g).pow(n as u32),
        StatisticsRule::BoseEinstein => {
            if g == 0 {
                if n == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            } else {
                binomial(n64 + g64 - 1, n64)
            }
        }
        StatisticsRule::FermiDirac => binomial(g64, n64),
    }
}

fn check_span_bounds(n: usize, g: usize) -> Result<()> {
    if n > MAX_SPAN_PARTICLES || g > MAX_SPAN_MODES {
        return Err(Error::ResourceLimit(format!(
            "span dimension needs n <= {MAX_SPAN_PARTICLES} and g <= {MAX_SPAN_MODES}, got n = {n}, g = {g}"
        )));
    }
    Ok(())
}

/// Number of bosonic states, as the dimension of the symmetrized span.
pub fn be_states_from_symmetrization(n: usize, spec: &ModeSpec) -> Result<usize> {
    check_span_bounds(n, spec.len())?;
    Ok(symmetric_span_dimension(n, &spec.labels()))
}

/// Number of fermionic states, as the dimension of the antisymmetrized span.
pub fn fd_states_from_antisymmetrization(n: usize, spec: &ModeSpec) -> Result<usize> {
    check_span_bounds(n, spec.len())?;
    Ok(antisymmetric_span_dimension(n, &spec.labels()))
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Canonical-ensemble mean occupation of every mode at inverse temperature
/// `beta`, weighting each microstate by `exp(−beta·E)`.
pub fn mean_occupation(
    n: usize,
    spec: &ModeSpec,
    rule: StatisticsRule,
    beta: f64,
) -> Result<Vec<f64>> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "beta must be finite and non-negative, got {beta}"
        )));
    }
    let ensemble = enumerate_microstates(n, spec, rule)?;
    let g = spec.len();
    if ensemble.states.is_empty() {
        return Err(Error::NoAdmissibleMicrostates {
            rule: rule.to_string(),
            n,
            g,
        });
    }
    let occupations: Vec<Vec<u32>> = ensemble.states.iter().map(|s| s.occupations(g)).collect();
    let energies: Vec<f64> = occupations
        .iter()
        .map(|occ| {
            occ.iter()
                .zip(spec.modes())
                .map(|(&k, m)| f64::from(k) * m.energy)
                .sum()
        })
        .collect();
    // Shifting by the ground energy keeps every weight in (0, 1].
    let ground = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let mut partition = CompensatedSum::default();
    let mut numerators: Vec<CompensatedSum> = (0..g).map(|_| CompensatedSum::default()).collect();
    for (occ, e) in occupations.iter().zip(&energies) {
        let w = (-beta * (e - ground)).exp();
        partition.add(w);
        for (acc, &k) in numerators.iter_mut().zip(occ) {
            if k > 0 {
                acc.add(f64::from(k) * w);
            }
        }
    }
    let z = partition.value();
    Ok(numerators.iter().map(|acc| acc.value() / z).collect())
}
