//! Text syntax for superfunctions, fields and forms.

mod eval;
mod lexer;
mod parser;
mod print;

pub use eval::{eval_str, evaluate, Environment, Object, Value};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, Expr, NameRef, SplitPart, Symbol};
pub use print::{print_field, print_form, print_scalar, print_superfunction, print_value};
