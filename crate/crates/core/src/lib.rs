//! Perfect binary codes under weighted Hamming metrics.
//!
//! A weight vector `pi` assigns a positive integer to every coordinate; the
//! pi-weight of a word is the sum over its support. This crate builds the
//! weight vectors that make (extended) Hamming codes 2- and 3-perfect,
//! constructs 2-perfect linear codes for the two-valued weight vector
//! `(1,..,1,2,..,2)`, and analyses such codes through their character sums.
//! Every construction can be checked against an exhaustive covering of the
//! whole space.

// `len` is the code length n, never empty.
#![allow(clippy::len_without_is_empty)]

pub mod code;
pub mod construct;
pub mod error;
pub mod hamming;
pub mod matrix;
pub mod metric;
pub mod perfect;
pub mod spectrum;
pub mod weights;
pub mod weightsearch;
pub mod word;

pub use code::{ExplicitCode, LinearCode};
pub use error::{Error, Result};
pub use matrix::BitMatrix;
pub use weights::{TwoValuedProfile, WeightVector};
pub use word::BitWord;
