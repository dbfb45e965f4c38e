//! Genus-two Lefschetz fibrations through mapping class group words, Hurwitz
//! systems and charts.

pub mod mcg;
pub mod hurwitz;
pub mod chart;
pub mod stabilize;
pub mod cli;
