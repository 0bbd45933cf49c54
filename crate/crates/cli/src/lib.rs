//! Presentation-language front end (parser, printer, lowering) and the
//! subcommand implementations behind the `sullivan` binary.

pub mod ast;
pub mod commands;
pub mod parser;
pub mod printer;
pub mod semantics;

pub use commands::{run, USAGE};
pub use parser::{parse_expr_text, parse_source, ParseError};
pub use printer::{print_expr, print_source};
pub use semantics::Context;
