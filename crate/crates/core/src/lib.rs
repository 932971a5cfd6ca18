//! Computational side of the Bogomolov property for fields cut out by
//! modular Galois representations: matrix groups over finite products of
//! local F_p-algebras, ramification filtrations of Lubin–Tate type
//! extensions, explicit height lower bounds, and a checker for the
//! supersingular-prime hypotheses over newform eigenvalue data.

pub mod finite_algebra;
pub mod fp;
pub mod heights;
pub mod subspace;

pub mod matgroup;
pub mod modforms;
pub mod ramification;

mod bigstr;
