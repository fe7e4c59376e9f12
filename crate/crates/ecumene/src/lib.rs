//! Toolkit for ecumenical natural deduction.
//!
//! Five proof systems share one syntax tree: NE (flavored disjunction,
//! implication and existential beside neutral conjunction and universal),
//! NE_K (every connective flavored), ECI (intuitionistic logic with a
//! classical label on formulas), and plain NJ/NK. On top of the syntax sit
//! a trusted proof checker ([`kernel`]), formula translations between the
//! dialects ([`translate`]), proof-producing constructions ([`transform`]),
//! and independent propositional decision procedures ([`oracle`]).

pub mod kernel;
pub mod oracle;
pub mod parse;
pub mod sexpr;
pub mod syntax;
pub mod transform;
pub mod translate;

pub mod cli;
pub mod gen;
