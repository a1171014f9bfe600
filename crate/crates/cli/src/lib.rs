//! Library surface of the runfall CLI: subcommand implementations, CSV
//! formats, and the SVG emitters. The binary in `main.rs` is a thin
//! argument-parsing shell over this.

pub mod commands;
pub mod formats;
pub mod svg;
