//! Curves and surfaces in Minkowski 3-space.
//!
//! The crate builds Lorentzian Sabban frames and evolutes for unit-speed
//! space-like curves on de Sitter 2-space and the hyperbolic plane, turns
//! such curves into space-like and time-like Bertrand curves by quadrature,
//! generates space-like constant slope surfaces from them, and checks the
//! identities that tie these objects together numerically.
//!
//! Differentiation is exact up to rounding: curves are evaluated on order-3
//! jets ([`jets::Jet3`]), so curvature, torsion and frame derivatives never
//! go through finite differences.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bertrand;
pub mod curve_dsl;
pub mod error;
pub mod frenet;
pub mod io_export;
pub mod jets;
pub mod lorentz;
pub mod quadrature;
pub mod slope_surface;
pub mod spherical_frames;
pub mod suite;

pub use error::{Error, ParseError, Result};
pub use lorentz::{CausalCharacter, MinkVec3, Sphere};
