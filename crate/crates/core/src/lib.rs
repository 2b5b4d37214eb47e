//! Coisotropic triples of finite-dimensional algebras: reduction, bimodules,
//! Morita equivalence data and classical limits, all with exact arithmetic.

pub mod exact_core;
pub mod finalg;
pub mod report;
pub mod error;
pub mod coiso;
pub mod cbimod;
pub mod morita;
pub mod classlim;
pub mod model;
pub mod cli;
