//! Edit-distance functions of `Forb(C_h^t)`.
//!
//! The crate computes clique spectra of small graphs, the `g`-function of
//! colored regularity graphs (CRGs) exactly over the rationals, decides the
//! graph-to-CRG embedding relation, and evaluates the closed-form curves
//! `gamma_H(p)` and `ed_H(p)` for powers of cycles, together with the checks
//! that tie these routes to each other.

#![allow(clippy::needless_range_loop)]

pub mod closed;
pub mod crg;
pub mod embedding;
mod error;
pub mod facts;
pub mod graph;
pub mod maxpoint;
pub mod par;
pub mod qp;
pub mod rational;
pub mod spectrum;
pub mod verify;

pub use crg::{Crg, EdgeColor, VertexColor};
pub use error::{Error, Result};
pub use graph::{power_cycle, Graph, PowerCycleParams};
pub use qp::{g_exact, g_numeric, g_value, GValue, Mode};
pub use rational::Q;
