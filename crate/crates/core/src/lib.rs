pub mod cli;
pub mod graph;
pub mod mds_det;
pub mod mds_rand;
pub mod oracle;
pub mod packing;
pub mod rational;
pub mod simulator;
