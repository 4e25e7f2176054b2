//! Exact lattice arithmetic for Mukai lattices of K3 surfaces.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod mukai;
pub mod pseudoheight;
pub mod scenarios;

pub use cohomology::{cyclic_cohomology, AbelianGroupModel};
pub use error::{Error, Result};
pub use lattice::{IntLattice, LatticeVector, Signature, SublatticeSpan};
pub use isometry::{build_named, build_word, MukaiIsometry, Sign};
pub use matrix::IntMatrix;
pub use mukai::{K3Model, MukaiVector};
pub use pseudoheight::{connectedness_verdict, pseudoheight, ConnectednessVerdict, Degree, ExtDegreeTable};
pub use scenarios::{list_scenarios, run_all, run_scenario, solve_wall_equation, ScenarioReport};
