//! Certified systems of ontologically distinguishable particles.
//!
//! An [`OntoSystem`] can only be obtained from [`crate::validate`], so every
//! value of the type satisfies all seven axioms. Its particles are kept in
//! label-index order, one particle per hidden label.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct SystemId(u64);

impl SystemId {
    fn fresh() -> Self {
        SystemId(NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// The hidden variable of one particle: index `i` in `N = {1..n}` and the
/// exact image `λᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HiddenLabel {
    index: usize,
    value: Rational,
}

impl HiddenLabel {
    pub(crate) fn new(index: usize, value: Rational) -> Self {
        HiddenLabel { index, value }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }
}

/// A measurement record of a complete set of commuting observables.
/// Equality is identifier equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhysicalState(String);

impl PhysicalState {
    pub fn new(id: impl Into<String>) -> Self {
        PhysicalState(id.into())
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PhysicalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Microscopic / macroscopic mark. A certified particle can never carry both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Micro,
    Macro,
    Unspecified,
}

impl Scale {
    pub fn is_micro(self) -> bool {
        self == Scale::Micro
    }

    pub fn is_macro(self) -> bool {
        self == Scale::Macro
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Micro => "micro",
            Scale::Macro => "macro",
            Scale::Unspecified => "unspecified",
        })
    }
}

/// An ordered pair `⟨x, λᵢ⟩` with its scale mark.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Particle {
    name: String,
    state: PhysicalState,
    label: HiddenLabel,
    scale: Scale,
    system: SystemId,
}

impl Particle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state(&self) -> &PhysicalState {
        &self.state
    }

    pub fn label(&self) -> &HiddenLabel {
        &self.label
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }
}

/// A finite structure `⟨λ, X, P, m, M⟩` known to satisfy every axiom.
#[derive(Debug, Clone)]
pub struct OntoSystem {
    id: SystemId,
    labels: Vec<HiddenLabel>,
    states: Vec<PhysicalState>,
    particles: Vec<Particle>,
}

/// Unchecked particle description handed over by the validator.
pub(crate) struct ParticleParts {
    pub name: String,
    pub state: PhysicalState,
    pub label: HiddenLabel,
    pub scale: Scale,
}

impl OntoSystem {
    /// Assembles a system whose axioms have already been verified.
    pub(crate) fn from_validated(
        mut labels: Vec<HiddenLabel>,
        states: Vec<PhysicalState>,
        particles: Vec<ParticleParts>,
    ) -> Self {
        let id = SystemId::fresh();
        labels.sort_by_key(|l| l.index);
        let mut particles: Vec<Particle> = particles
            .into_iter()
            .map(|p| Particle {
                name: p.name,
                state: p.state,
                label: p.label,
                scale: p.scale,
                system: id,
            })
            .collect();
        particles.sort_by_key(|p| p.label.index);
        OntoSystem {
            id,
            labels,
            states,
            particles,
        }
    }

    /// Size of `N`.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[HiddenLabel] {
        &self.labels
    }

    /// The set `X`.
    pub fn states(&self) -> &[PhysicalState] {
        &self.states
    }

    /// The set `P`, ordered by label index.
    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    /// The particle carrying hidden label `index`, if any.
    pub fn particle_by_label(&self, index: usize) -> Option<&Particle> {
        index
            .checked_sub(1)
            .and_then(|k| self.particles.get(k))
            .filter(|p| p.label.index == index)
    }

    fn ensure_member(&self, p: &Particle) -> Result<()> {
        if p.system == self.id {
            Ok(())
        } else {
            Err(Error::ForeignParticle(p.name.clone()))
        }
    }

    /// `p ≡ q`: same physical state and same hidden label.
    pub fn onto_identical(&self, p: &Particle, q: &Particle) -> Result<bool> {
        self.ensure_member(p)?;
        self.ensure_member(q)?;
        Ok(p.state == q.state && p.label.index == q.label.index)
    }

    /// `p ≐ q`: same physical state.
    pub fn phys_identical(&self, p: &Particle, q: &Particle) -> Result<bool> {
        self.ensure_member(p)?;
        self.ensure_member(q)?;
        Ok(p.state == q.state)
    }

    /// `#P`, which equals `n` and the number of distinct label values.
    pub fn particle_count(&self) -> usize {
        self.particles.len()
    }

    /// The `≡` and `≐` matrices over particles in label-index order.
    pub fn identity_matrices(&self) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
        let onto = self
            .particles
            .iter()
            .map(|p| {
                self.particles
                    .iter()
                    .map(|q| p.state == q.state && p.label.index == q.label.index)
                    .collect()
            })
            .collect();
        let phys = self
            .particles
            .iter()
            .map(|p| self.particles.iter().map(|q| p.state == q.state).collect())
            .collect();
        (onto, phys)
    }
}
