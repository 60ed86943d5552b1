pub mod cartan;
pub mod config;
pub mod deform;
pub mod freehalf;
pub mod k0;
pub mod klr;
pub mod nilhecke;
pub mod poly;
pub mod qring;
pub mod report;
pub mod serre;
pub mod suite;
