//! Support library of the `swe` binary: problem configuration, built-in
//! fixtures with their frozen reference numbers, the selectable L1 error
//! norm, and run artifacts (CSV / gnuplot / JSON / classification text).

pub mod config;
pub mod fixtures;
pub mod l1;
pub mod report;
