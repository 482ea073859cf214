//! Hidden-variable labeling of physically indistinguishable particles.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds the certified system type ([`OntoSystem`]) together with
//!   the ontological (`≡`) and physical (`≐`) identity relations.
//! * [`axioms`] checks the seven axioms on relaxed [`CandidateSystem`]s,
//!   reports violating witnesses, checks the two structural theorems and
//!   enumerates small candidate universes.
//! * [`exchange`] is exact rational algebra on labeled product kets:
//!   transpositions, the symmetrizer and antisymmetrizer, exchange
//!   degeneracy and the exclusion test.
//! * [`stats`] enumerates Maxwell-Boltzmann, Bose-Einstein and Fermi-Dirac
//!   microstates and computes canonical mean occupations.
//! * [`dsl`], [`report`] and [`cli`] implement the text input language and
//!   the `ontolabel` command line tool.

pub mod axioms;
pub mod cli;
pub mod dsl;
mod error;
pub mod exchange;
mod linalg;
pub mod model;
pub mod report;
pub mod stats;

pub use axioms::{
    check_axiom, enumerate_systems, infer_scales, theorem_macro_distinct, theorem_unitary_x_micro,
    validate, AxiomId, AxiomReport, CandidateLabel, CandidateParticle, CandidateSystem,
    TheoremOutcome, Witness,
};
pub use dsl::{parse_spec, render_spec, Diagnostic, ParseError};
pub use error::{Error, Result};
pub use exchange::{
    antisymmetrize, apply_transposition, exchange_degeneracy_class, pauli_admissible, symmetrize,
    symmetry_class, ModeLabel, ProductKet, StateVector, SymmetryClass, Transposition,
};
pub use model::{HiddenLabel, OntoSystem, Particle, PhysicalState, Scale};
pub use stats::{
    be_states_from_symmetrization, count_closed_form, enumerate_microstates,
    fd_states_from_antisymmetrization, mean_occupation, Microstate, MicrostateEnsemble, Mode,
    ModeSpec, StatisticsRule,
};

/// Exact rational number used for hidden-variable values and ket coefficients.
pub type Rational = num_rational::BigRational;
