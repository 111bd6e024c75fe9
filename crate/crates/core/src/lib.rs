//! Construction and analysis of check-hybrid generalized LDPC (CH-GLDPC) codes.
//!
//! A CH-GLDPC code starts from a regular LDPC code and converts selected
//! single parity checks into *super checks* that constrain their neighborhood
//! to be a codeword of a short 2-error-correcting component code, decoded
//! locally by bounded distance decoding. Placing super checks on the right
//! checks eliminates the trapping sets that dominate the error floor of
//! hard-decision decoders.
//!
//! The crate provides:
//!
//! * bit-packed GF(2) linear algebra ([`gf2`]), including the GLDPC
//!   parity-check expansion,
//! * Tanner graphs, girth queries and quasi-cyclic constructions ([`tanner`]),
//! * component codes with syndrome-table bounded distance decoding
//!   ([`component`]),
//! * parallel bit-flipping and Gallager B decoders for hybrid codes
//!   ([`decoder`]),
//! * trapping-set enumeration, critical sets and fixed-set checkers
//!   ([`trapset`]),
//! * super-check placement and rate accounting ([`hybrid`]),
//! * guaranteed error-correction verification ([`verify`]),
//! * the small canned subgraphs used throughout the test suite
//!   ([`fixtures`]).
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod component;
pub mod decoder;
pub mod fixtures;
pub mod gf2;
pub mod hybrid;
pub mod tanner;
pub mod trapset;
pub mod verify;

#[cfg(any(test, feature = "brute"))]
pub mod brute;
