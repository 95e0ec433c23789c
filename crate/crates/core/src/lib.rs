//! Integral closures of monomial ideals and linear bounds for the growth of
//! closures of `I + m^n`.
//!
//! Ideals are held in a minimal normal form ([`MonomialIdeal`]), closures are
//! decided through exact rational LPs over the Newton polyhedron
//! ([`closure`]) and cross-checked by an LP-free power-witness search
//! ([`witness`]). [`growth`] and [`lemmas`] measure how far the closure of
//! `I + J^n` can reach outside `closure(I) + J^k`.

pub mod closure;
pub mod error;
pub mod exponent;
pub mod expr;
pub mod growth;
pub mod ideal;
pub mod lemmas;
pub mod lp;
pub mod oracle;
pub mod sample;
pub mod witness;

pub use closure::{
    hull_membership, in_closure, integral_closure, is_integrally_closed, newton_vertices, HullCertificate, HullOutcome,
};
pub use error::{Error, Result};
pub use exponent::ExponentVector;
pub use expr::{parse_expr, parse_ideal, parse_monomial, IdealExpr};
pub use growth::{empirical_constant, f_max, growth_report, paper_constant, FMax, Growth, GrowthReport, GrowthRow};
pub use ideal::{Floor, MonomialIdeal};
pub use lemmas::{
    counterexample_check, rees_gap_check, verify_intersection_lemma, verify_radical_swap, CounterexampleReport,
    GapReport, IntersectionReport, RadicalSwapReport,
};
pub use oracle::{run_oracle_check, OracleConfig, OracleReport};
pub use witness::{power_witness, PowerWitness};
