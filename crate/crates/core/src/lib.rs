//! Exact decision procedures for tilings of the integers by finite sets.
//!
//! Given a finite set `A` of nonnegative integers, this crate decides
//!
//! * whether `A` tiles `Z` by translations, producing a periodic translation
//!   set as a certificate ([`tiler`]);
//! * whether `A` satisfies the Coven–Meyerowitz conditions (T1) and (T2)
//!   ([`tileset`]);
//! * whether the characteristic polynomial `A(x)` admits a rational spectrum
//!   ([`spectra`]).
//!
//! Polynomials that are products of geometric-series factors
//! `1 + x^m + ... + x^{m(n-1)}` get a dedicated treatment in [`products`]
//! (tower labellings, the lattice of relations, Keller witnesses), and
//! [`analysis`] carries Newton power sums and the prime-power cyclotomic
//! classifier.
//!
//! All arithmetic is exact. The crate is `no_std` (with `alloc`); the default
//! `std` feature only adds a process-wide cache for cyclotomic polynomials.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod arith;
mod error;
pub mod intpoly;
pub mod products;
pub mod spectra;
pub mod tiler;
pub mod tileset;

pub use error::{Error, Result};
pub use intpoly::{cyclotomic, cyclotomic_at_one, divides_cyclotomic, IntPoly};
pub use products::{Factor, KellerWitness, ProductSpec};
pub use spectra::{RationalSpectrum, Theta};
pub use tiler::{TilingCertificate, TilingOutcome};
pub use tileset::{CycloDivisors, IntSet};
