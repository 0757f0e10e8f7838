pub mod error;
pub mod fusion;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod registry;
pub mod spec;
pub mod genfunc;
pub mod divisor;
pub mod verify;
pub mod cache;
pub mod cli;
