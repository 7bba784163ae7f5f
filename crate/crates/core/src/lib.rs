//! Sum-closed permutation classes and their growth rates.
//!
//! The crate covers permutation primitives ([`perm`]), reconstruction of
//! sum indecomposable permutations from their children
//! ([`reconstruction`]), finitely based classes ([`class`]), the insertion
//! encoding and its automata ([`encoding`]), exact polynomial and algebraic
//! number arithmetic ([`poly`], [`algebraic`], [`rational`]), the calculus
//! of sum indecomposable counting sequences ([`sequences`]) and the
//! reproducible computations driven by the command line ([`campaign`]).

pub mod algebraic;
pub mod campaign;
pub mod class;
pub mod encoding;
pub mod error;
pub mod perm;
pub mod poly;
pub mod rational;
pub mod reconstruction;
pub mod sequences;

pub use algebraic::{growth_polynomial, growth_rate, largest_real_root, AlgebraicNumber};
pub use campaign::{run_campaign, Campaign, CampaignParams, CampaignReport};
pub use class::{census, Census, ClassSpec};
pub use encoding::{build_automaton, InsertionAutomaton};
pub use error::{Error, Result};
pub use perm::{
    perm, AlternationKind, InversionGraph, MonotoneDecomposition, Permutation, SplitEndVariant,
};
pub use poly::IntPoly;
pub use rational::RationalFunction;
pub use sequences::{classify, ClassificationVerdict, SumSequence};
