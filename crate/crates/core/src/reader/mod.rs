//! Clojure reader: tokenizer, form reader and renderer.
//!
//! Forms carry byte-exact spans. Comments are collected beside the tree
//! rather than inside it.

mod form;
mod lexer;
mod pos;
mod read;
mod render;

pub use form::{Form, FormKind, Keyword, MapPrefix, Number, NumberKind, Symbol};
pub use lexer::{lex, tokenize, CommentKind, CommentRecord, Delim, LexError, LexOutput, Token, TokenKind, Tokens};
pub use pos::{SourcePos, Span};
pub use read::{read_forms, read_one, ReadError, ReadResult};
pub use render::{render, render_all};
