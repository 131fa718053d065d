//! Text formats: the operator grammar, integral notation, Graphviz DOT and
//! rewrite traces.

mod dot;
mod parse;
mod print;
mod trace;

pub use dot::render_dot;
pub use parse::{parse, parse_bytes, ParseError, ParseErrorKind, MAX_NESTING};
pub use print::{print_integral, print_operator, tree_to_operator};
pub use trace::{format_trace, TraceParseError, TraceRecord};
