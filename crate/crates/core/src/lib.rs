pub mod algebra;
pub mod bounds;
pub mod elim;
pub mod error;
pub mod oracle;
pub mod pencil;
pub mod solver;
pub mod systems;
