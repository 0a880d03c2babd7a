pub mod cli;
pub mod fields;
mod linalg;
pub mod oracle;
pub mod quadspace;
pub mod quaternion;
pub mod selftest;
pub mod slots;
pub mod symbols;
