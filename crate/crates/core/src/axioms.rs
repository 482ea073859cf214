//! Axiom checking on relaxed candidate systems.
//!
//! A [`CandidateSystem`] can represent anything the input language can
//! express and more: repeated hidden values, several particles on one label,
//! references to undeclared states or labels, particles flagged both micro
//! and macro. [`check_axiom`] evaluates one axiom and lists every violating
//! witness; [`validate`] turns a candidate into a certified [`OntoSystem`]
//! once all seven hold.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::model::{OntoSystem, ParticleParts};
use crate::{Error, HiddenLabel, PhysicalState, Rational, Result, Scale};

/// Largest `max_n` accepted by [`enumerate_systems`].
pub const MAX_ENUM_PARTICLES: usize = 5;
/// Largest `max_states` accepted by [`enumerate_systems`].
pub const MAX_ENUM_STATES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
}

impl AxiomId {
    pub const ALL: [AxiomId; 7] = [
        AxiomId::D1,
        AxiomId::D2,
        AxiomId::D3,
        AxiomId::D4,
        AxiomId::D5,
        AxiomId::D6,
        AxiomId::D7,
    ];

    /// One-line statement used in reports.
    pub fn statement(self) -> &'static str {
        match self {
            AxiomId::D1 => "lambda: N -> R is an injective function",
            AxiomId::D2 => "P is contained in X x Lambda",
            AxiomId::D3 => "no hidden variable is shared by distinct physical states",
            AxiomId::D4 => "p = q ontologically iff same state and same label",
            AxiomId::D5 => "p = q physically iff same state",
            AxiomId::D6 => "physically identical particles are both micro",
            AxiomId::D7 => "no particle is both micro and macro",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Entry `hidden <index> = <value>` of a candidate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateLabel {
    pub index: usize,
    pub value: Rational,
}

/// A declared particle. `micro` and `macro_` are the predicates `m` and `M`
/// and may both be set in a candidate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateParticle {
    pub name: String,
    pub state: String,
    pub label: usize,
    pub micro: bool,
    pub macro_: bool,
}

impl CandidateParticle {
    pub fn new(
        name: impl Into<String>,
        state: impl Into<String>,
        label: usize,
        scale: Scale,
    ) -> Self {
        CandidateParticle {
            name: name.into(),
            state: state.into(),
            label,
            micro: scale == Scale::Micro,
            macro_: scale == Scale::Macro,
        }
    }
}

/// Pre-validation system. `n` is the number of declared labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CandidateSystem {
    pub labels: Vec<CandidateLabel>,
    pub states: Vec<String>,
    pub particles: Vec<CandidateParticle>,
}

impl CandidateSystem {
    /// Empty candidate with labels `1..=n` valued `1..=n`.
    pub fn with_canonical_labels(n: usize) -> Self {
        CandidateSystem {
            labels: (1..=n)
                .map(|i| CandidateLabel {
                    index: i,
                    value: Rational::from_integer(BigInt::from(i)),
                })
                .collect(),
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn push_particle(
        &mut self,
        name: impl Into<String>,
        state: &str,
        label: usize,
        scale: Scale,
    ) {
        self.particles
            .push(CandidateParticle::new(name, state, label, scale));
    }

    /// Stored ontological identity: two declarations denote the same entity.
    pub fn onto_related(&self, a: usize, b: usize) -> bool {
        a == b
    }

    /// Stored physical identity: the declarations reference the same state.
    pub fn phys_related(&self, a: usize, b: usize) -> bool {
        self.particles[a].state == self.particles[b].state
    }
}

/// Something that violates an axiom. Particles are referenced by their
/// position in [`CandidateSystem::particles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Label { index: usize },
    LabelPair { first: usize, second: usize },
    Particle { particle: usize },
    ParticlePair { first: usize, second: usize },
}

impl Witness {
    fn sort_key(&self, c: &CandidateSystem) -> (usize, usize, usize, usize) {
        match *self {
            Witness::Label { index } => (index, index, 0, 0),
            Witness::LabelPair { first, second } => (first, second, 0, 0),
            Witness::Particle { particle } => {
                let l = c.particles[particle].label;
                (l, l, particle, particle)
            }
            Witness::ParticlePair { first, second } => (
                c.particles[first].label,
                c.particles[second].label,
                first,
                second,
            ),
        }
    }

    /// Human-readable form using particle names.
    pub fn describe(&self, c: &CandidateSystem) -> String {
        match *self {
            Witness::Label { index } => format!("label {index}"),
            Witness::LabelPair { first, second } => format!("labels ({first},{second})"),
            Witness::Particle { particle } => {
                let p = &c.particles[particle];
                format!("{} = ({},{})", p.name, p.state, p.label)
            }
            Witness::ParticlePair { first, second } => {
                let (p, q) = (&c.particles[first], &c.particles[second]);
                format!(
                    "{} = ({},{}), {} = ({},{})",
                    p.name, p.state, p.label, q.name, q.state, q.label
                )
            }
        }
    }
}

/// Builds a particle-pair witness ordered by (label index, position).
fn particle_pair(c: &CandidateSystem, a: usize, b: usize) -> Witness {
    let (first, second) = if (c.particles[a].label, a) <= (c.particles[b].label, b) {
        (a, b)
    } else {
        (b, a)
    };
    Witness::ParticlePair { first, second }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    fn new(axiom: AxiomId, c: &CandidateSystem, mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort_by_key(|w| (w.sort_key(c), *w));
        witnesses.dedup();
        AxiomReport {
            axiom,
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Evaluates one axiom over the whole candidate and collects every witness.
pub fn check_axiom(c: &CandidateSystem, axiom: AxiomId) -> AxiomReport {
    let witnesses = match axiom {
        AxiomId::D1 => d1_witnesses(c),
        AxiomId::D2 => d2_witnesses(c),
        AxiomId::D3 => d3_witnesses(c),
        AxiomId::D4 => d4_witnesses(c),
        AxiomId::D5 => d5_witnesses(c),
        AxiomId::D6 => d6_witnesses(c),
        AxiomId::D7 => d7_witnesses(c),
    };
    AxiomReport::new(axiom, c, witnesses)
}

// λ must be defined exactly on {1..n} and injective there.
fn d1_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let n = c.n();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for l in &c.labels {
        if l.index == 0 || l.index > n || !seen.insert(l.index) {
            out.push(Witness::Label { index: l.index });
        }
    }
    let mut by_value: BTreeMap<&Rational, BTreeSet<usize>> = BTreeMap::new();
    for l in &c.labels {
        by_value.entry(&l.value).or_default().insert(l.index);
    }
    for indices in by_value.values().filter(|s| s.len() > 1) {
        let indices: Vec<usize> = indices.iter().copied().collect();
        for (k, &i) in indices.iter().enumerate() {
            for &j in &indices[k + 1..] {
                out.push(Witness::LabelPair {
                    first: i,
                    second: j,
                });
            }
        }
    }
    out
}

// Every particle is a pair from X × Λ, and every label is carried.
fn d2_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let states: BTreeSet<&str> = c.states.iter().map(String::as_str).collect();
    let labels: BTreeSet<usize> = c.labels.iter().map(|l| l.index).collect();
    let mut out: Vec<Witness> = c
        .particles
        .iter()
        .enumerate()
        .filter(|(_, p)| !states.contains(p.state.as_str()) || !labels.contains(&p.label))
        .map(|(k, _)| Witness::Particle { particle: k })
        .collect();
    let carried: BTreeSet<usize> = c.particles.iter().map(|p| p.label).collect();
    out.extend(
        labels
            .difference(&carried)
            .map(|&index| Witness::Label { index }),
    );
    out
}

fn d3_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, p) in c.particles.iter().enumerate() {
        by_label.entry(p.label).or_default().push(k);
    }
    let mut out = Vec::new();
    for group in by_label.values() {
        for (a, &p) in group.iter().enumerate() {
            for &q in &group[a + 1..] {
                if c.particles[p].state != c.particles[q].state {
                    out.push(particle_pair(c, p, q));
                }
            }
        }
    }
    out
}

fn d4_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let mut by_pair: HashMap<(&str, usize), Vec<usize>> = HashMap::new();
    for (k, p) in c.particles.iter().enumerate() {
        by_pair
            .entry((p.state.as_str(), p.label))
            .or_default()
            .push(k);
    }
    let mut out = Vec::new();
    // Within a (state, label) group the right-hand side holds, so ≡ must too.
    for group in by_pair.values() {
        for (a, &p) in group.iter().enumerate() {
            for &q in &group[a..] {
                if !c.onto_related(p, q) {
                    out.push(particle_pair(c, p, q));
                }
            }
        }
    }
    // Across groups the right-hand side fails, so ≡ must fail too.
    for (p, q) in distinct_pairs(c.particles.len()) {
        let same = c.particles[p].state == c.particles[q].state
            && c.particles[p].label == c.particles[q].label;
        if !same && c.onto_related(p, q) {
            out.push(particle_pair(c, p, q));
        }
    }
    out
}

fn d5_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let n = c.particles.len();
    let mut out = Vec::new();
    for p in 0..n {
        for q in p..n {
            let rhs = c.particles[p].state == c.particles[q].state;
            if c.phys_related(p, q) != rhs {
                out.push(particle_pair(c, p, q));
            }
        }
    }
    out
}

// Quantifies over distinct declarations; ≐ is reflexive, so p = q is excluded.
fn d6_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    let mut by_state: HashMap<&str, Vec<usize>> = HashMap::new();
    for (k, p) in c.particles.iter().enumerate() {
        by_state.entry(p.state.as_str()).or_default().push(k);
    }
    let mut out = Vec::new();
    for group in by_state.values() {
        for (a, &p) in group.iter().enumerate() {
            for &q in &group[a + 1..] {
                if !(c.particles[p].micro && c.particles[q].micro) {
                    out.push(particle_pair(c, p, q));
                }
            }
        }
    }
    out
}

fn d7_witnesses(c: &CandidateSystem) -> Vec<Witness> {
    c.particles
        .iter()
        .enumerate()
        .filter(|(_, p)| p.micro && p.macro_)
        .map(|(k, _)| Witness::Particle { particle: k })
        .collect()
}

fn distinct_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |p| (p + 1..n).map(move |q| (p, q)))
}

/// Certifies a candidate, or returns every failing axiom report.
pub fn validate(c: &CandidateSystem) -> std::result::Result<OntoSystem, Vec<AxiomReport>> {
    let failing: Vec<AxiomReport> = AxiomId::ALL
        .iter()
        .map(|&a| check_axiom(c, a))
        .filter(|r| !r.holds)
        .collect();
    if !failing.is_empty() {
        return Err(failing);
    }
    let values: HashMap<usize, &Rational> = c.labels.iter().map(|l| (l.index, &l.value)).collect();
    let labels = c
        .labels
        .iter()
        .map(|l| HiddenLabel::new(l.index, l.value.clone()))
        .collect();
    let states = c.states.iter().map(PhysicalState::new).collect();
    let particles = c
        .particles
        .iter()
        .map(|p| ParticleParts {
            name: p.name.clone(),
            state: PhysicalState::new(p.state.clone()),
            label: HiddenLabel::new(p.label, values[&p.label].clone()),
            scale: match (p.micro, p.macro_) {
                (true, _) => Scale::Micro,
                (false, true) => Scale::Macro,
                (false, false) => Scale::Unspecified,
            },
        })
        .collect();
    Ok(OntoSystem::from_validated(labels, states, particles))
}

/// Applies the micro-inference rule: a particle physically identical to a
/// distinct particle is micro. Particles already marked macro are left as
/// they are.
pub fn infer_scales(c: &CandidateSystem) -> CandidateSystem {
    let mut shared: HashMap<&str, usize> = HashMap::new();
    for p in &c.particles {
        *shared.entry(p.state.as_str()).or_default() += 1;
    }
    let mut out = c.clone();
    for p in out.particles.iter_mut() {
        if shared[p.state.as_str()] > 1 && !p.macro_ {
            p.micro = true;
        }
    }
    out
}

/// Outcome of a theorem check, with label-index pairs for any counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremOutcome {
    pub holds: bool,
    pub witnesses: Vec<(usize, usize)>,
}

/// Macroscopic particles are never physically identical to each other.
pub fn theorem_macro_distinct(s: &OntoSystem) -> TheoremOutcome {
    let ps = s.particles();
    let mut witnesses = Vec::new();
    for (a, p) in ps.iter().enumerate() {
        for q in &ps[a + 1..] {
            if p.scale().is_macro() && q.scale().is_macro() && p.state() == q.state() {
                witnesses.push((p.label().index(), q.label().index()));
            }
        }
    }
    TheoremOutcome {
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// With a single physical state and at least two particles, every particle
/// is micro.
pub fn theorem_unitary_x_micro(s: &OntoSystem) -> Result<bool> {
    if s.states().len() != 1 {
        return Err(Error::HypothesisUnmet(format!(
            "X must be a unitary set, but #X = {}",
            s.states().len()
        )));
    }
    if s.n() < 2 {
        return Err(Error::HypothesisUnmet(format!(
            "#N >= 2 required, but #N = {}",
            s.n()
        )));
    }
    Ok(s.particles().iter().all(|p| p.scale().is_micro()))
}

/// Deterministic exhaustive stream of small candidates.
///
/// For `max_n = 0` the stream is the single empty candidate. Otherwise, for
/// every `n` in `1..=max_n` and every `#X` in `1..=max_states`, it yields
/// candidates with labels `1..=n` valued `1..=n`, states `s1..sk`, and `n`
/// particle declarations forming a multiset of `(state, label, scale)`
/// triples. Candidates that differ only by a renaming of states are emitted
/// once.
pub fn enumerate_systems(max_n: usize, max_states: usize) -> Result<SystemStream> {
    if max_n > MAX_ENUM_PARTICLES || max_states > MAX_ENUM_STATES {
        return Err(Error::BoundExceeded(format!(
            "max_n = {max_n}, max_states = {max_states}; limits are {MAX_ENUM_PARTICLES} and {MAX_ENUM_STATES}"
        )));
    }
    if max_n > 0 && max_states == 0 {
        return Err(Error::BoundExceeded(
            "max_states must be at least 1 when max_n > 0".into(),
        ));
    }
    Ok(SystemStream {
        max_n,
        max_states,
        n: 0,
        k: 0,
        state_perms: Vec::new(),
        combo: None,
        done: false,
    })
}

const SCALES: [Scale; 3] = [Scale::Unspecified, Scale::Micro, Scale::Macro];

/// Iterator returned by [`enumerate_systems`].
#[derive(Debug, Clone)]
pub struct SystemStream {
    max_n: usize,
    max_states: usize,
    n: usize,
    k: usize,
    state_perms: Vec<Vec<usize>>,
    combo: Option<Vec<usize>>,
    done: bool,
}

impl SystemStream {
    fn triples(&self) -> usize {
        self.n * self.k * SCALES.len()
    }

    // Triple code t = ((label - 1) * k + state) * 3 + scale.
    fn decode(&self, t: usize) -> (usize, usize, usize) {
        let scale = t % SCALES.len();
        let state = (t / SCALES.len()) % self.k;
        let label = t / (SCALES.len() * self.k) + 1;
        (label, state, scale)
    }

    fn encode(&self, label: usize, state: usize, scale: usize) -> usize {
        ((label - 1) * self.k + state) * SCALES.len() + scale
    }

    fn is_canonical(&self, combo: &[usize]) -> bool {
        let mut image = Vec::with_capacity(combo.len());
        for perm in &self.state_perms {
            image.clear();
            image.extend(combo.iter().map(|&t| {
                let (label, state, scale) = self.decode(t);
                self.encode(label, perm[state], scale)
            }));
            image.sort_unstable();
            if image.as_slice() < combo {
                return false;
            }
        }
        true
    }

    fn build(&self, combo: &[usize]) -> CandidateSystem {
        let mut c = CandidateSystem::with_canonical_labels(self.n);
        c.states = (1..=self.k).map(|s| format!("s{s}")).collect();
        for (pos, &t) in combo.iter().enumerate() {
            let (label, state, scale) = self.decode(t);
            c.push_particle(
                format!("p{}", pos + 1),
                &c.states[state].clone(),
                label,
                SCALES[scale],
            );
        }
        c
    }

    /// Moves to the next (n, k) block; false once exhausted.
    fn next_block(&mut self) -> bool {
        if self.n == 0 {
            self.n = 1;
            self.k = 1;
        } else if self.k < self.max_states {
            self.k += 1;
        } else if self.n < self.max_n {
            self.n += 1;
            self.k = 1;
        } else {
            return false;
        }
        self.state_perms = permutations(self.k)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &v)| i != v))
            .collect();
        self.combo = Some(vec![0; self.n]);
        true
    }

    fn advance(&mut self) -> bool {
        let top = self.triples() - 1;
        let combo = self.combo.as_mut().expect("active block");
        match combo.iter().rposition(|&t| t < top) {
            Some(i) => {
                let v = combo[i] + 1;
                combo[i..].iter_mut().for_each(|t| *t = v);
                true
            }
            None => false,
        }
    }
}

impl Iterator for SystemStream {
    type Item = CandidateSystem;

    fn next(&mut self) -> Option<CandidateSystem> {
        if self.done {
            return None;
        }
        if self.max_n == 0 {
            self.done = true;
            return Some(CandidateSystem::default());
        }
        loop {
            if self.combo.is_none() {
                if !self.next_block() {
                    self.done = true;
                    return None;
                }
            } else if !self.advance() {
                self.combo = None;
                continue;
            }
            let combo = self.combo.as_ref().expect("active block");
            if self.is_canonical(combo) {
                return Some(self.build(combo));
            }
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Rearranges `v` into the next lexicographic permutation; false at the last.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
