//! Exact algebra of labeled product kets.
//!
//! Slot `i` of a [`ProductKet`] always belongs to the particle carrying
//! hidden label `λᵢ`; permutation operators move modes between slots and
//! never move the labels. General permutations are applied as sequences of
//! adjacent transpositions obtained from a bubble sort, so the sign of a
//! permutation is the parity of that sequence.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::axioms::next_permutation;
use crate::{linalg, Error, Rational, Result};

/// A collective index `k′` for a complete set of observables, with an
/// optional residual tag for information beyond the physical state record.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeLabel {
    id: String,
    residual: Option<String>,
}

impl ModeLabel {
    pub fn new(id: impl Into<String>) -> Self {
        ModeLabel {
            id: id.into(),
            residual: None,
        }
    }

    pub fn with_residual(id: impl Into<String>, residual: impl Into<String>) -> Self {
        ModeLabel {
            id: id.into(),
            residual: Some(residual.into()),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residual(&self) -> Option<&str> {
        self.residual.as_deref()
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.residual {
            None => f.write_str(&self.id),
            Some(r) => write!(f, "{}:{}", self.id, r),
        }
    }
}

fn is_mode_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphanumeric() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl FromStr for ModeLabel {
    type Err = Error;

    /// Parses `id` or `id:residual`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (id, residual) = match s.split_once(':') {
            Some((id, r)) => (id, Some(r)),
            None => (s, None),
        };
        if !is_mode_ident(id) || residual.is_some_and(|r| !is_mode_ident(r)) {
            return Err(Error::InvalidArgument(format!(
                "malformed mode label `{s}`"
            )));
        }
        Ok(ModeLabel {
            id: id.to_string(),
            residual: residual.map(str::to_string),
        })
    }
}

/// Parses a comma-separated list of mode labels.
pub fn parse_modes(list: &str) -> Result<Vec<ModeLabel>> {
    if list.trim().is_empty() {
        return Err(Error::InvalidArgument("mode list is empty".into()));
    }
    list.split(',').map(str::parse).collect()
}

/// `|k_{λ₁}⟩|k_{λ₂}⟩…`: slot `i` holds the mode of particle `λᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductKet(Vec<ModeLabel>);

impl ProductKet {
    pub fn new(slots: Vec<ModeLabel>) -> Self {
        ProductKet(slots)
    }

    pub fn slots(&self) -> &[ModeLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn swapped(&self, a: usize, b: usize) -> ProductKet {
        let mut k = self.clone();
        k.0.swap(a, b);
        k
    }
}

impl fmt::Display for ProductKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(">")
    }
}

/// Finite rational combination of product kets with a common slot count.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateVector {
    slots: usize,
    terms: BTreeMap<ProductKet, Rational>,
}

impl StateVector {
    pub fn zero(slots: usize) -> Self {
        StateVector {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ket: ProductKet) -> Self {
        let slots = ket.len();
        let mut terms = BTreeMap::new();
        terms.insert(ket, Rational::one());
        StateVector { slots, terms }
    }

    /// Ket with the given modes in slot order.
    pub fn from_modes(modes: Vec<ModeLabel>) -> Self {
        StateVector::basis(ProductKet::new(modes))
    }

    /// Sums the given terms; repeated kets accumulate.
    pub fn from_terms(
        slots: usize,
        terms: impl IntoIterator<Item = (ProductKet, Rational)>,
    ) -> Result<Self> {
        let mut v = StateVector::zero(slots);
        for (ket, c) in terms {
            if ket.len() != slots {
                return Err(Error::SlotMismatch {
                    expected: slots,
                    found: ket.len(),
                });
            }
            v.accumulate(ket, c);
        }
        Ok(v)
    }

    fn accumulate(&mut self, ket: ProductKet, c: Rational) {
        match self.terms.entry(ket) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) ket order.
    pub fn terms(&self) -> impl Iterator<Item = (&ProductKet, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, ket: &ProductKet) -> Rational {
        self.terms.get(ket).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> StateVector {
        if c.is_zero() {
            return StateVector::zero(self.slots);
        }
        StateVector {
            slots: self.slots,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn negated(&self) -> StateVector {
        StateVector {
            slots: self.slots,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn checked_add(&self, other: &StateVector) -> Result<StateVector> {
        if self.slots != other.slots {
            return Err(Error::SlotMismatch {
                expected: self.slots,
                found: other.slots,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &StateVector) -> Result<StateVector> {
        self.checked_add(&other.negated())
    }

    pub(crate) fn into_row(self) -> BTreeMap<ProductKet, Rational> {
        self.terms
    }
}

/// Canonical text form: `1/2|a,b> - 1/2|b,a>`, `|b,a>`, or `0`.
impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (ket, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            write!(f, "{ket}")?;
        }
        Ok(())
    }
}

/// The interchange `P_ij` of the modes in slots `i` and `j` (1-based).
/// `P_ji` and `P_ij` are the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidTransposition {
                i,
                j,
                reason: "indices must be distinct".into(),
            });
        }
        if i == 0 || j == 0 {
            return Err(Error::InvalidTransposition {
                i,
                j,
                reason: "slot indices start at 1".into(),
            });
        }
        Ok(Transposition {
            i: i.min(j),
            j: i.max(j),
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All transpositions on `n` slots.
    pub fn all(n: usize) -> impl Iterator<Item = Transposition> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| Transposition { i, j }))
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{},{}", self.i, self.j)
    }
}

/// Applies `P_ij` termwise; coefficients are unchanged.
pub fn apply_transposition(t: Transposition, v: &StateVector) -> Result<StateVector> {
    if t.j > v.slots {
        return Err(Error::InvalidTransposition {
            i: t.i,
            j: t.j,
            reason: format!("only {} slots", v.slots),
        });
    }
    let terms = v
        .terms
        .iter()
        .map(|(ket, c)| (ket.swapped(t.i - 1, t.j - 1), c.clone()))
        .collect();
    Ok(StateVector {
        slots: v.slots,
        terms,
    })
}

/// Adjacent swaps `(k, k+1)` (0-based) whose product is `perm`.
fn bubble_decomposition(perm: &[usize]) -> Vec<usize> {
    let mut work = perm.to_vec();
    let mut swaps = Vec::new();
    let n = work.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(pass + 1) {
            if work[k] > work[k + 1] {
                work.swap(k, k + 1);
                swaps.push(k);
            }
        }
    }
    swaps
}

fn group_sum(v: &StateVector, signed: bool) -> StateVector {
    let n = v.slots;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut decompositions = Vec::new();
    loop {
        decompositions.push(bubble_decomposition(&perm));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let order = Rational::from_integer(BigInt::from(decompositions.len()));
    let mut out = StateVector::zero(n);
    for (ket, c) in &v.terms {
        let weight = c / &order;
        for swaps in &decompositions {
            let mut image = ket.clone();
            for &k in swaps {
                image.0.swap(k, k + 1);
            }
            let odd = swaps.len() % 2 == 1;
            let term = if signed && odd {
                -weight.clone()
            } else {
                weight.clone()
            };
            out.accumulate(image, term);
        }
    }
    out
}

/// `S = (1/n!) Σ_σ P_σ`.
pub fn symmetrize(v: &StateVector) -> StateVector {
    group_sum(v, false)
}

/// `A = (1/n!) Σ_σ sgn(σ) P_σ`.
pub fn antisymmetrize(v: &StateVector) -> StateVector {
    group_sum(v, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
    Neither,
    Zero,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::Antisymmetric => "antisymmetric",
            SymmetryClass::Neither => "neither",
            SymmetryClass::Zero => "zero",
        })
    }
}

/// Classifies `v` by its behaviour under every transposition.
pub fn symmetry_class(v: &StateVector) -> SymmetryClass {
    if v.is_zero() {
        return SymmetryClass::Zero;
    }
    let neg = v.negated();
    let mut symmetric = true;
    let mut antisymmetric = true;
    for t in Transposition::all(v.slots) {
        let image = apply_transposition(t, v).expect("transposition within range");
        symmetric &= image == *v;
        antisymmetric &= image == neg;
        if !symmetric && !antisymmetric {
            return SymmetryClass::Neither;
        }
    }
    if symmetric {
        SymmetryClass::Symmetric
    } else {
        SymmetryClass::Antisymmetric
    }
}

/// Every product ket compatible with one measurement outcome.
pub fn exchange_degeneracy_class(outcome: &[ModeLabel]) -> BTreeSet<ProductKet> {
    let mut arrangement = outcome.to_vec();
    arrangement.sort();
    let mut out = BTreeSet::new();
    loop {
        out.insert(ProductKet::new(arrangement.clone()));
        if !next_permutation(&mut arrangement) {
            return out;
        }
    }
}

/// Whether fermions can realise `outcome`: the antisymmetrized ket is
/// non-zero.
pub fn pauli_admissible(outcome: &[ModeLabel]) -> bool {
    let mut arrangement = outcome.to_vec();
    arrangement.sort();
    !antisymmetrize(&StateVector::from_modes(arrangement)).is_zero()
}

/// Dimension of the span of `vectors`, by exact elimination.
pub fn span_dimension(vectors: impl IntoIterator<Item = StateVector>) -> usize {
    linalg::rank(vectors.into_iter().map(StateVector::into_row))
}

/// Modes `m1..mg`.
pub fn numbered_modes(g: usize) -> Vec<ModeLabel> {
    (1..=g).map(|k| ModeLabel::new(format!("m{k}"))).collect()
}

/// All `gⁿ` product kets over `modes`, in lexicographic slot order.
pub fn basis_kets(n: usize, modes: &[ModeLabel]) -> Vec<ProductKet> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<ModeLabel>| {
                modes.iter().map(move |m| {
                    let mut next = prefix.clone();
                    next.push(m.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(ProductKet::new).collect()
}

/// Dimension of `S` applied to every basis ket.
pub fn symmetric_span_dimension(n: usize, modes: &[ModeLabel]) -> usize {
    span_dimension(
        basis_kets(n, modes)
            .into_iter()
            .map(|k| symmetrize(&StateVector::basis(k))),
    )
}

/// Dimension of `A` applied to every basis ket.
pub fn antisymmetric_span_dimension(n: usize, modes: &[ModeLabel]) -> usize {
    span_dimension(
        basis_kets(n, modes)
            .into_iter()
            .map(|k| antisymmetrize(&StateVector::basis(k))),
    )
}
