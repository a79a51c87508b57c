//! Shared pieces of the `kscf` command-line tool: file formats, seeded
//! instance generation, and trace export. The binary in `main.rs` is a thin
//! dispatcher over these and the core library.

pub mod format;
pub mod gen;
pub mod trace_out;
