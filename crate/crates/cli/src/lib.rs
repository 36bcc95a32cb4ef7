//! Text formats, commands and rendering for the `pltg` tool.

pub mod build;
pub mod commands;
pub mod export;
pub mod render;
pub mod tgf;
