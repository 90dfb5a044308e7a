//! Command-line front end: input documents, subcommands and exit codes.
//!
//! Exit codes are `0` for success, `1` for a negative answer (with a
//! certificate on standard output) and `2` for unusable input.

mod commands;
pub mod json;
pub mod parse;

pub use commands::{run_command, Outcome};
pub use json::{deserialize_resolution, serialize_resolution, JsonError};
pub use parse::{parse_document, parse_marked_element, parse_polynomial, InputDocument, MonomialKind, Object, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
