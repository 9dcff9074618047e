pub mod axes;
pub mod cli;
pub mod error;
pub mod fischer;
pub mod flip;
pub mod groups;
pub mod linalg;
pub mod matsuo;
pub mod scalar;
pub mod structure;
pub mod text;
