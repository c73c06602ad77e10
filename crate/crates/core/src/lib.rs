//! Exact symbolic engine for multi-indexed Jacobi polynomials: Wronskians of
//! Poschl-Teller eigenstates and seed solutions, their Maya-diagram
//! reductions, and the spectra of the deformed Hamiltonians.

pub mod algebra;
pub mod cli;
pub mod domain;
pub mod error;
pub mod maya;
pub mod spectral;
pub mod states;
pub mod wronskian;

pub use algebra::{AffineExp, EtaPoly, ParamPoly, ParamRat, Rational};
pub use domain::{Domain, Point, Symbolic, SymbolicField};
pub use error::{Error, Result};
pub use maya::{DiagramPair, Direction, Ledger, MayaDiagram, ReductionTarget, Which};
pub use spectral::QuasiRat;
pub use states::{QuasiPoly, State, StateTuple, StateType};
