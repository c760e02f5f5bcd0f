//! Exact computer algebra for quantum symmetric pairs at odd roots of unity.

pub mod qcoeff;
pub mod lattice;
pub mod rootdata;
pub mod satake;
pub mod catalog;
pub mod twistedpoly;
pub mod gradedqsp;
pub mod uq;
pub mod iqg;
