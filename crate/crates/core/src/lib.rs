//! Exact computation with convex sets of nonnegative random variables
//! over finite probability spaces.
//!
//! The crate decides whether an element `g` of a polyhedral convex set
//! `C` in the nonnegative orthant is a numeraire — some strictly
//! positive probability `q` makes the conditional expectation
//! `E_q[f/g | g>0]` at most one for every `f` in `C` — and backs every
//! verdict with a certificate that re-verifies by plain rational
//! arithmetic. Around that sit:
//!
//! * [`ratlp`] — a self-contained exact simplex with Farkas and
//!   strict-feasibility certificates,
//! * [`body`] — V-representation bodies with membership and pruning,
//! * [`numeraire`] — the numeraire test, maximality, and the dual
//!   measure constructions,
//! * [`closure`] — the minimal enlargement of `C` stable under short
//!   positions in `g`, with bounded/unbounded witnesses,
//! * [`prooflab`] — a step-by-step re-derivation of the certificate
//!   through reduction, solid hulls, cones and separation,
//! * [`market`] — a two-asset one-period market family with a sharp
//!   feasibility threshold.
//!
//! All arithmetic is exact; nothing in any verdict path rounds.

pub mod body;
pub mod closure;
pub mod error;
pub mod market;
pub mod numeraire;
pub mod prooflab;
pub mod rat;
pub mod ratlp;
pub mod space;

pub use body::ConvexBody;
pub use error::CoreError;
pub use rat::{rat, Rat};
pub use space::{dist_q, FiniteProbSpace, Measure, Rv};
