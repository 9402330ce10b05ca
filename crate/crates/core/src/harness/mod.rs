//! Oracles, random problems, traces and the fuzzing campaign.

pub mod fuzz;
pub mod generate;
pub mod oracle;
pub mod trace;
