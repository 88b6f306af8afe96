//! Exact symbolic engine for theta-deformed spheres, twistor algebras and
//! the ADHM construction of instantons on them.

pub mod adhm;
pub mod dga;
pub mod geom;
pub mod matrix;
pub mod parse;
pub mod qsym;
pub mod reduce;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod twistalg;
