pub mod affine;
pub mod exact;
pub mod fusion;
pub mod liealg;
pub mod modular;
pub mod theory;
pub mod simplecurrent;
pub mod blocks;
pub mod orbifold;
pub mod boundary;
pub mod characters;
pub mod cli;
