//! Exact algebra for finite racks, quandles and their quandle rings.
//!
//! Racks are stored as Cayley tables on `0..n`. Ring elements carry dense
//! coefficient vectors over ℤ, ℚ, ℤ/m or integer polynomials; ideals of
//! `ℤ[X]` are sublattices of ℤⁿ in Hermite normal form. Heavy scans take an
//! [`Exec`] and run on rayon when the `parallel` feature is enabled.

pub mod assoc;
pub mod catalog;
pub mod coeff;
pub mod error;
pub mod ideals;
pub mod par;
pub mod quandle;
pub mod ring;
pub mod units;
pub mod zlattice;

pub use assoc::{AssocReport, PowerIdentity};
pub use coeff::{CoeffRing, Poly, Scalar};
pub use error::{Error, Result};
pub use ideals::{GradedSeries, IdealHandle, PowerConvention};
pub use par::Exec;
pub use quandle::{Classification, FiniteGroup, FiniteRack, Permutation, QuandleHom};
pub use ring::{ExtElt, RingElt};
pub use units::{CenterLattice, UnitClass, UnitRecord};
pub use zlattice::{IntLattice, QuotientShape, ZVec};
