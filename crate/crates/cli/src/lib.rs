//! Library side of the `csd` command line tool: file formats plus the
//! benchmark suites. The binary in `main.rs` is a thin dispatcher over
//! these modules and the `cosecure` crate.

pub mod bench;
pub mod format;
