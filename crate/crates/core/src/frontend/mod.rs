//! Problem files in, reports and presentations out.

mod compute;
mod parse;
mod render;

pub use compute::{compute, count, groebner, ComputeOp, Output, OutputItem};
pub use parse::{parse, print, ParseError, ProblemFile};
pub use render::{render_json, render_text, Format, RenderOptions};

/// JSON schema of the `--json` output.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/output.schema.json");
