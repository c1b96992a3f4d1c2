//! Lexical analysis of Clojure source text.
//!
//! Every byte of the input ends up in exactly one token, comment, or
//! whitespace run. Problems that only spoil a single token (a bad
//! character literal, a bad string escape) are reported as
//! [`TokenKind::Invalid`] so the reader can keep going; an unterminated
//! string or regex ends the scan.

use super::pos::{SourcePos, Span};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delim {
    Paren,
    Bracket,
    Brace,
}

impl Delim {
    pub fn open_char(self) -> char {
        match self {
            Delim::Paren => '(',
            Delim::Bracket => '[',
            Delim::Brace => '{',
        }
    }

    pub fn close_char(self) -> char {
        match self {
            Delim::Paren => ')',
            Delim::Bracket => ']',
            Delim::Brace => '}',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Open(Delim),
    Close(Delim),
    /// `#{`
    SetOpen,
    /// `#(`
    AnonFnOpen,
    /// `#?(` or `#?@(`
    ReaderCondOpen { splicing: bool },
    /// `#:ns`, `#::`, `#::alias`; payload is the text after `#:`.
    NsMapPrefix(String),
    Quote,
    SyntaxQuote,
    Unquote,
    UnquoteSplicing,
    Deref,
    Meta,
    VarQuote,
    Discard,
    /// `#tag`; payload is the tag text.
    Tag(String),
    /// Decoded string literal.
    Str(String),
    /// Raw regex pattern text.
    Regex(String),
    Char(char),
    /// Symbol, keyword, number, `nil`, `true` or `false`, unclassified.
    Atom(String),
    /// `##Inf` and friends; payload is the text after `##`.
    Symbolic(String),
    /// A malformed token with the reason.
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommentKind {
    Line,
    Shebang,
}

/// A comment collected beside the form tree. `text` excludes the leading
/// `;` (or `#!`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentRecord {
    pub text: String,
    pub span: Span,
    pub kind: CommentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {pos}")]
pub struct LexError {
    pub message: String,
    pub pos: SourcePos,
}

/// Raw output of a lexer run.
#[derive(Debug, Clone, Default)]
pub struct LexOutput {
    pub tokens: Vec<Token>,
    pub comments: Vec<CommentRecord>,
    pub whitespace_bytes: usize,
    /// Set when scanning had to stop before the end of input.
    pub fatal: Option<LexError>,
}

/// Tokenized source: tokens plus side-band comments.
#[derive(Debug, Clone, Default)]
pub struct Tokens {
    pub tokens: Vec<Token>,
    pub comments: Vec<CommentRecord>,
    pub whitespace_bytes: usize,
}

/// Tokenizes `source`, failing on the first lexical problem, including a
/// closing delimiter that has no matching opener.
pub fn tokenize(source: &str) -> Result<Tokens, LexError> {
    let out = lex(source);
    let mut first: Option<LexError> = out.fatal.clone();
    let mut note = |err: LexError| {
        if first.as_ref().is_none_or(|f| err.pos.offset < f.pos.offset) {
            first = Some(err);
        }
    };
    let mut stack: Vec<Delim> = Vec::new();
    for tok in &out.tokens {
        match &tok.kind {
            TokenKind::Invalid(msg) => {
                note(LexError { message: msg.clone(), pos: tok.span.start });
            }
            TokenKind::Open(d) => stack.push(*d),
            TokenKind::SetOpen => stack.push(Delim::Brace),
            TokenKind::AnonFnOpen | TokenKind::ReaderCondOpen { .. } => stack.push(Delim::Paren),
            TokenKind::Close(d) => {
                if stack.last() == Some(d) {
                    stack.pop();
                } else {
                    note(LexError {
                        message: format!("unmatched delimiter: {}", d.close_char()),
                        pos: tok.span.start,
                    });
                }
            }
            _ => {}
        }
    }
    match first {
        Some(err) => Err(err),
        None => Ok(Tokens {
            tokens: out.tokens,
            comments: out.comments,
            whitespace_bytes: out.whitespace_bytes,
        }),
    }
}

pub fn is_whitespace(ch: char) -> bool {
    ch.is_whitespace() || ch == ','
}

/// Characters that end a token.
fn is_terminating(ch: char) -> bool {
    matches!(ch, '"' | ';' | '@' | '^' | '`' | '~' | '(' | ')' | '[' | ']' | '{' | '}' | '\\')
}

fn is_token_char(ch: char) -> bool {
    !is_whitespace(ch) && !is_terminating(ch)
}

/// Runs the lexer without failing: malformed tokens become `Invalid`.
pub fn lex(source: &str) -> LexOutput {
    Lexer::new(source).run()
}

struct Lexer<'s> {
    src: &'s str,
    pos: SourcePos,
    out: LexOutput,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str) -> Self {
        Lexer { src, pos: SourcePos::START, out: LexOutput::default() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos.offset..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos.offset..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos = self.pos.advance(ch);
        Some(ch)
    }

    fn bump_while(&mut self, pred: impl Fn(char) -> bool) {
        while let Some(ch) = self.peek() {
            if !pred(ch) {
                break;
            }
            self.bump();
        }
    }

    fn push(&mut self, kind: TokenKind, start: SourcePos) {
        self.out.tokens.push(Token { kind, span: Span::new(start, self.pos) });
    }

    fn run(mut self) -> LexOutput {
        while let Some(ch) = self.peek() {
            let start = self.pos;
            if is_whitespace(ch) {
                self.bump_while(is_whitespace);
                self.out.whitespace_bytes += self.pos.offset - start.offset;
                continue;
            }
            if self.out.fatal.is_some() {
                break;
            }
            match ch {
                ';' => {
                    self.bump();
                    self.line_comment(start, CommentKind::Line);
                }
                '(' | '[' | '{' => {
                    self.bump();
                    let d = match ch {
                        '(' => Delim::Paren,
                        '[' => Delim::Bracket,
                        _ => Delim::Brace,
                    };
                    self.push(TokenKind::Open(d), start);
                }
                ')' | ']' | '}' => {
                    self.bump();
                    let d = match ch {
                        ')' => Delim::Paren,
                        ']' => Delim::Bracket,
                        _ => Delim::Brace,
                    };
                    self.push(TokenKind::Close(d), start);
                }
                '\'' => {
                    self.bump();
                    self.push(TokenKind::Quote, start);
                }
                '`' => {
                    self.bump();
                    self.push(TokenKind::SyntaxQuote, start);
                }
                '~' => {
                    self.bump();
                    if self.peek() == Some('@') {
                        self.bump();
                        self.push(TokenKind::UnquoteSplicing, start);
                    } else {
                        self.push(TokenKind::Unquote, start);
                    }
                }
                '@' => {
                    self.bump();
                    self.push(TokenKind::Deref, start);
                }
                '^' => {
                    self.bump();
                    self.push(TokenKind::Meta, start);
                }
                '"' => {
                    self.bump();
                    self.string(start);
                }
                '\\' => {
                    self.bump();
                    self.character(start);
                }
                '#' => {
                    self.bump();
                    self.dispatch(start);
                }
                _ => {
                    self.bump_while(is_token_char);
                    if self.pos.offset == start.offset {
                        // unreachable for well-formed char classes, but never loop forever
                        self.bump();
                    }
                    let text = self.src[start.offset..self.pos.offset].to_string();
                    self.push(TokenKind::Atom(text), start);
                }
            }
        }
        self.out
    }

    fn line_comment(&mut self, start: SourcePos, kind: CommentKind) {
        let text_start = self.pos.offset;
        self.bump_while(|c| c != '\n');
        let text = self.src[text_start..self.pos.offset].to_string();
        self.out.comments.push(CommentRecord { text, span: Span::new(start, self.pos), kind });
    }

    fn string(&mut self, start: SourcePos) {
        let mut value = String::new();
        let mut problem: Option<String> = None;
        loop {
            let Some(ch) = self.bump() else {
                self.out.fatal = Some(LexError { message: "unterminated string".into(), pos: start });
                return;
            };
            match ch {
                '"' => break,
                '\\' => {
                    let Some(esc) = self.bump() else {
                        self.out.fatal =
                            Some(LexError { message: "unterminated string".into(), pos: start });
                        return;
                    };
                    match esc {
                        't' => value.push('\t'),
                        'r' => value.push('\r'),
                        'n' => value.push('\n'),
                        'b' => value.push('\u{8}'),
                        'f' => value.push('\u{c}'),
                        '\\' => value.push('\\'),
                        '"' => value.push('"'),
                        'u' => {
                            let digits: String =
                                (0..4).filter_map(|i| self.peek_at(i)).take_while(char::is_ascii_hexdigit).collect();
                            for _ in 0..digits.len() {
                                self.bump();
                            }
                            match u32::from_str_radix(&digits, 16).ok().filter(|_| digits.len() == 4).and_then(char::from_u32) {
                                Some(c) => value.push(c),
                                None => {
                                    problem.get_or_insert_with(|| format!("invalid unicode escape: \\u{digits}"));
                                }
                            }
                        }
                        '0'..='7' => {
                            let mut digits = esc.to_string();
                            while digits.len() < 3 {
                                match self.peek() {
                                    Some(c @ '0'..='7') => {
                                        digits.push(c);
                                        self.bump();
                                    }
                                    _ => break,
                                }
                            }
                            match u32::from_str_radix(&digits, 8) {
                                Ok(n) if n <= 0o377 => value.push(char::from_u32(n).unwrap_or('\0')),
                                _ => {
                                    problem.get_or_insert_with(|| "octal escape sequence must be in range [0, 377]".into());
                                }
                            }
                        }
                        other => {
                            problem.get_or_insert_with(|| format!("unsupported escape character: \\{other}"));
                        }
                    }
                }
                c => value.push(c),
            }
        }
        match problem {
            Some(msg) => self.push(TokenKind::Invalid(msg), start),
            None => self.push(TokenKind::Str(value), start),
        }
    }

    fn regex(&mut self, start: SourcePos) {
        let body_start = self.pos.offset;
        loop {
            let Some(ch) = self.bump() else {
                self.out.fatal = Some(LexError { message: "unterminated regex".into(), pos: start });
                return;
            };
            match ch {
                '"' => break,
                '\\' if self.bump().is_none() => {
                    self.out.fatal = Some(LexError { message: "unterminated regex".into(), pos: start });
                    return;
                }
                _ => {}
            }
        }
        let text = self.src[body_start..self.pos.offset - 1].to_string();
        self.push(TokenKind::Regex(text), start);
    }

    fn character(&mut self, start: SourcePos) {
        let Some(first) = self.bump() else {
            self.push(TokenKind::Invalid("EOF while reading character".into()), start);
            return;
        };
        self.bump_while(is_token_char);
        let text = &self.src[start.offset + 1..self.pos.offset];
        let kind = match char_literal(first, text) {
            Ok(c) => TokenKind::Char(c),
            Err(msg) => TokenKind::Invalid(msg),
        };
        self.push(kind, start);
    }

    fn dispatch(&mut self, start: SourcePos) {
        let Some(ch) = self.peek() else {
            self.push(TokenKind::Invalid("EOF while reading dispatch macro".into()), start);
            return;
        };
        match ch {
            '{' => {
                self.bump();
                self.push(TokenKind::SetOpen, start);
            }
            '(' => {
                self.bump();
                self.push(TokenKind::AnonFnOpen, start);
            }
            '_' => {
                self.bump();
                self.push(TokenKind::Discard, start);
            }
            '\'' => {
                self.bump();
                self.push(TokenKind::VarQuote, start);
            }
            '^' => {
                self.bump();
                self.push(TokenKind::Meta, start);
            }
            '"' => {
                self.bump();
                self.regex(start);
            }
            '!' => {
                self.bump();
                self.line_comment(start, CommentKind::Shebang);
            }
            '?' => {
                self.bump();
                let splicing = self.peek() == Some('@');
                if splicing {
                    self.bump();
                }
                if self.peek() == Some('(') {
                    self.bump();
                    self.push(TokenKind::ReaderCondOpen { splicing }, start);
                } else {
                    self.push(TokenKind::Invalid("reader conditional body must be a list".into()), start);
                }
            }
            ':' => {
                self.bump();
                let name_start = self.pos.offset;
                if self.peek() == Some(':') {
                    self.bump();
                }
                self.bump_while(is_token_char);
                let text = self.src[name_start..self.pos.offset].to_string();
                self.push(TokenKind::NsMapPrefix(text), start);
            }
            '#' => {
                self.bump();
                let name_start = self.pos.offset;
                self.bump_while(is_token_char);
                let text = self.src[name_start..self.pos.offset].to_string();
                self.push(TokenKind::Symbolic(text), start);
            }
            c if c.is_alphabetic() => {
                let name_start = self.pos.offset;
                self.bump_while(is_token_char);
                let text = self.src[name_start..self.pos.offset].to_string();
                self.push(TokenKind::Tag(text), start);
            }
            c => {
                self.bump();
                self.push(TokenKind::Invalid(format!("no dispatch macro for: {c}")), start);
            }
        }
    }
}

/// Decodes the text after a `\` into a character.
fn char_literal(first: char, text: &str) -> Result<char, String> {
    if text.chars().count() == 1 {
        return Ok(first);
    }
    match text {
        "newline" => return Ok('\n'),
        "space" => return Ok(' '),
        "tab" => return Ok('\t'),
        "backspace" => return Ok('\u{8}'),
        "formfeed" => return Ok('\u{c}'),
        "return" => return Ok('\r'),
        _ => {}
    }
    if let Some(hex) = text.strip_prefix('u') {
        if hex.len() == 4 {
            let code = u32::from_str_radix(hex, 16).map_err(|_| format!("invalid unicode character: \\{text}"))?;
            return char::from_u32(code).ok_or_else(|| format!("invalid character constant: \\{text}"));
        }
    }
    if let Some(oct) = text.strip_prefix('o') {
        if (1..=3).contains(&oct.len()) {
            let code = u32::from_str_radix(oct, 8).map_err(|_| format!("invalid octal escape sequence: \\{text}"))?;
            if code > 0o377 {
                return Err("octal escape sequence must be in range [0, 377]".into());
            }
            return char::from_u32(code).ok_or_else(|| format!("invalid character constant: \\{text}"));
        }
    }
    Err(format!("unsupported character: \\{text}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().tokens.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn simple_list() {
        assert_eq!(
            kinds("(+ 1 2)"),
            vec![
                TokenKind::Open(Delim::Paren),
                TokenKind::Atom("+".into()),
                TokenKind::Atom("1".into()),
                TokenKind::Atom("2".into()),
                TokenKind::Close(Delim::Paren),
            ]
        );
    }

    #[test]
    fn comment_is_side_band() {
        let toks = tokenize(";; hi\n1").unwrap();
        assert_eq!(toks.tokens.len(), 1);
        assert_eq!(toks.tokens[0].kind, TokenKind::Atom("1".into()));
        assert_eq!(toks.comments.len(), 1);
        assert_eq!(toks.comments[0].text, "; hi");
        assert_eq!(toks.comments[0].kind, CommentKind::Line);
    }

    #[test]
    fn unterminated_string() {
        let err = tokenize("\"abc").unwrap_err();
        assert_eq!(err.pos.offset, 0);
        assert!(err.message.contains("unterminated string"));
    }

    #[test]
    fn unterminated_regex() {
        let err = tokenize("  #\"a\\\"").unwrap_err();
        assert_eq!(err.pos.offset, 2);
    }

    #[test]
    fn stray_close() {
        let err = tokenize("(a))").unwrap_err();
        assert_eq!(err.pos.offset, 3);
        let err = tokenize("(a]").unwrap_err();
        assert_eq!(err.pos.offset, 2);
    }

    #[test]
    fn invalid_char_literal() {
        let err = tokenize("\\abc").unwrap_err();
        assert!(err.message.contains("unsupported character"), "{err}");
    }

    #[test]
    fn character_literals() {
        assert_eq!(
            kinds(r"\a \newline \u0041 \o101 \( \space"),
            vec![
                TokenKind::Char('a'),
                TokenKind::Char('\n'),
                TokenKind::Char('A'),
                TokenKind::Char('A'),
                TokenKind::Char('('),
                TokenKind::Char(' '),
            ]
        );
    }

    #[test]
    fn string_escapes() {
        assert_eq!(kinds(r#""a\n\"é\101""#), vec![TokenKind::Str("a\n\"éA".into())]);
        assert!(tokenize(r#""\q""#).is_err());
    }

    #[test]
    fn dispatch_tokens() {
        assert_eq!(
            lex("#{} #() #_ #' #?( #?@( #:a{ #::{ #inst ##Inf #\"x\\d\"")
                .tokens
                .into_iter()
                .map(|t| t.kind)
                .collect::<Vec<_>>(),
            vec![
                TokenKind::SetOpen,
                TokenKind::Close(Delim::Brace),
                TokenKind::AnonFnOpen,
                TokenKind::Close(Delim::Paren),
                TokenKind::Discard,
                TokenKind::VarQuote,
                TokenKind::ReaderCondOpen { splicing: false },
                TokenKind::ReaderCondOpen { splicing: true },
                TokenKind::NsMapPrefix("a".into()),
                TokenKind::Open(Delim::Brace),
                TokenKind::NsMapPrefix(":".into()),
                TokenKind::Open(Delim::Brace),
                TokenKind::Tag("inst".into()),
                TokenKind::Symbolic("Inf".into()),
                TokenKind::Regex("x\\d".into()),
            ]
        );
    }

    #[test]
    fn shebang_comment() {
        let out = lex("#!/usr/bin/env bb\n(x)");
        assert_eq!(out.comments[0].kind, CommentKind::Shebang);
        assert_eq!(out.comments[0].text, "/usr/bin/env bb");
    }

    #[test]
    fn columns_count_characters() {
        let toks = tokenize("\"é\" x").unwrap();
        let x = &toks.tokens[1];
        assert_eq!(x.span.start.col, 5);
        assert_eq!(x.span.start.offset, 5);
    }
}
