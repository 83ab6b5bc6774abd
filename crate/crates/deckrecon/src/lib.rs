//! Deck reconstruction toolkit for the hypercube group Z_2^n.
//!
//! A finite set (or multiset) over Z_2^n is only ever observed through its
//! k-decks: the collection of its size-k pieces, each recorded up to
//! translation. This crate computes decks, decides how deep two sets must be
//! probed before their decks differ (the distinguishing number, via an exact
//! Walsh-Hadamard product oracle), constructs extremal witness pairs that are
//! maximally hard to tell apart, classifies maximally indistinguishable
//! multiset pairs, and verifies the closed-form reconstruction number
//! `floor(n + 1 - log2(n + 1 - log2 n))` exhaustively in small dimension.
//!
//! All arithmetic is exact: spectra are signed integers, products are
//! arbitrary precision, and no floating point is used anywhere outside one
//! test-only cross-check.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod deck;
pub mod error;
pub mod files;
pub mod gf2;
pub mod spectral;
pub mod structure;
pub mod witness;

pub use error::{Error, Result};
