use super::form::{Form, FormKind, Keyword, MapPrefix, Number, NumberKind, Symbol};
use super::lexer::{lex, CommentRecord, Delim, LexError, Token, TokenKind};
use super::pos::{SourcePos, Span};
use regex::Regex;
use std::sync::LazyLock;
use thiserror::Error;

/// A recoverable reader problem. Forms containing one are dropped; reading
/// resumes with the next top-level form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct ReadError {
    pub message: String,
    pub span: Span,
}

#[derive(Debug, Clone, Default)]
pub struct ReadResult {
    pub forms: Vec<Form>,
    pub comments: Vec<CommentRecord>,
    pub errors: Vec<ReadError>,
}

/// Reads every top-level form of `source`.
pub fn read_forms(source: &str) -> ReadResult {
    let lexed = lex(source);
    let end = end_position(source);
    let mut reader = Reader { tokens: &lexed.tokens, idx: 0, errors: Vec::new(), fatal: lexed.fatal.clone(), end };
    let mut forms = Vec::new();
    while let Some(tok) = reader.peek() {
        if let TokenKind::Close(d) = tok.kind {
            let span = tok.span;
            reader.idx += 1;
            reader.error(format!("unmatched delimiter: {}", d.close_char()), span);
            continue;
        }
        let before = reader.errors.len();
        match reader.read_form() {
            Ok(form) => {
                if reader.errors.len() == before {
                    forms.push(form);
                }
            }
            Err(Eof) => break,
        }
    }
    let mut errors = reader.errors;
    if let Some(LexError { message, pos }) = lexed.fatal {
        errors.push(ReadError { message, span: Span::new(pos, end) });
    }
    errors.sort_by_key(|e| e.span.start.offset);
    ReadResult { forms, comments: lexed.comments, errors }
}

/// Reads exactly one form, failing on any read error or on trailing forms.
pub fn read_one(source: &str) -> Result<Form, ReadError> {
    let mut result = read_forms(source);
    if let Some(err) = result.errors.into_iter().next() {
        return Err(err);
    }
    match result.forms.len() {
        1 => Ok(result.forms.remove(0)),
        n => Err(ReadError {
            message: format!("expected exactly one form, found {n}"),
            span: Span::new(SourcePos::START, end_position(source)),
        }),
    }
}

fn end_position(source: &str) -> SourcePos {
    source.chars().fold(SourcePos::START, SourcePos::advance)
}

/// Input ended inside an unfinished form.
struct Eof;

struct Reader<'t> {
    tokens: &'t [Token],
    idx: usize,
    errors: Vec<ReadError>,
    fatal: Option<LexError>,
    end: SourcePos,
}

impl<'t> Reader<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.idx)
    }

    fn next(&mut self) -> Option<&'t Token> {
        let tok = self.tokens.get(self.idx)?;
        self.idx += 1;
        Some(tok)
    }

    fn error(&mut self, message: impl Into<String>, span: Span) {
        self.errors.push(ReadError { message: message.into(), span });
    }

    fn eof(&mut self, start: SourcePos) -> Eof {
        // an unterminated string/regex already explains the early end
        if self.fatal.is_none() {
            self.error("EOF while reading", Span::new(start, self.end));
        }
        Eof
    }

    fn read_form(&mut self) -> Result<Form, Eof> {
        let Some(tok) = self.next() else {
            return Err(self.eof(self.end));
        };
        let start = tok.span.start;
        let form = match &tok.kind {
            TokenKind::Open(Delim::Paren) => {
                let (items, end) = self.read_seq(start, Delim::Paren)?;
                Form::new(FormKind::List(items), Span::new(start, end))
            }
            TokenKind::Open(Delim::Bracket) => {
                let (items, end) = self.read_seq(start, Delim::Bracket)?;
                Form::new(FormKind::Vector(items), Span::new(start, end))
            }
            TokenKind::Open(Delim::Brace) => {
                let (items, end) = self.read_seq(start, Delim::Brace)?;
                let span = Span::new(start, end);
                if !Form::live(&items).count().is_multiple_of(2) {
                    self.error("map literal must contain an even number of forms", span);
                }
                Form::new(FormKind::Map(items), span)
            }
            TokenKind::SetOpen => {
                let (items, end) = self.read_seq(start, Delim::Brace)?;
                Form::new(FormKind::Set(items), Span::new(start, end))
            }
            TokenKind::AnonFnOpen => self.read_anon_fn(tok)?,
            TokenKind::ReaderCondOpen { splicing } => self.read_reader_cond(tok, *splicing)?,
            TokenKind::NsMapPrefix(prefix) => self.read_ns_map(tok, prefix)?,
            TokenKind::Quote => self.wrap(tok, "quote", FormKind::Quote)?,
            TokenKind::SyntaxQuote => self.wrap(tok, "syntax-quote", FormKind::SyntaxQuote)?,
            TokenKind::Unquote => self.wrap(tok, "unquote", FormKind::Unquote)?,
            TokenKind::UnquoteSplicing => self.wrap(tok, "unquote-splicing", FormKind::UnquoteSplicing)?,
            TokenKind::Deref => self.wrap(tok, "deref", FormKind::Deref)?,
            TokenKind::VarQuote => self.wrap(tok, "var-quote", FormKind::VarQuote)?,
            TokenKind::Discard => self.wrap(tok, "discard", FormKind::Discard)?,
            TokenKind::Meta => self.read_meta(tok)?,
            TokenKind::Tag(tag) => {
                let tag_sym = match parse_symbol(tag) {
                    Some(sym) => sym,
                    None => {
                        self.error(format!("invalid tag: #{tag}"), tok.span);
                        Symbol::simple(tag.clone())
                    }
                };
                match self.read_target(start)? {
                    Some(form) => {
                        let span = Span::new(start, form.span.end);
                        Form::new(FormKind::Tagged { tag: tag_sym, form: Box::new(form) }, span)
                    }
                    None => {
                        self.error(format!("tagged literal #{tag} has no form"), tok.span);
                        Form::new(FormKind::Nil, tok.span)
                    }
                }
            }
            TokenKind::Str(s) => Form::new(FormKind::Str(s.clone()), tok.span),
            TokenKind::Regex(s) => Form::new(FormKind::Regex(s.clone()), tok.span),
            TokenKind::Char(c) => Form::new(FormKind::Char(*c), tok.span),
            TokenKind::Atom(text) => match classify_atom(text) {
                Ok(kind) => Form::new(kind, tok.span),
                Err(msg) => {
                    self.error(msg, tok.span);
                    Form::new(FormKind::Nil, tok.span)
                }
            },
            TokenKind::Symbolic(text) => {
                if !matches!(text.as_str(), "Inf" | "-Inf" | "NaN") {
                    self.error(format!("unknown symbolic value: ##{text}"), tok.span);
                }
                let number = Number { text: format!("##{text}"), kind: NumberKind::Symbolic };
                Form::new(FormKind::Number(number), tok.span)
            }
            TokenKind::Invalid(msg) => {
                self.error(msg.clone(), tok.span);
                Form::new(FormKind::Nil, tok.span)
            }
            TokenKind::Close(d) => {
                // callers peek for closers; reaching here means a stray one
                self.error(format!("unmatched delimiter: {}", d.close_char()), tok.span);
                Form::new(FormKind::Nil, tok.span)
            }
        };
        Ok(form)
    }

    /// Reads children up to the matching closer; returns them with the end
    /// position just past the closer.
    fn read_seq(&mut self, start: SourcePos, delim: Delim) -> Result<(Vec<Form>, SourcePos), Eof> {
        let mut items = Vec::new();
        loop {
            let Some(tok) = self.peek() else {
                return Err(self.eof(start));
            };
            if let TokenKind::Close(d) = tok.kind {
                self.idx += 1;
                if d == delim {
                    return Ok((items, tok.span.end));
                }
                self.error(format!("unmatched delimiter: {}", d.close_char()), tok.span);
                continue;
            }
            items.push(self.read_form()?);
        }
    }

    /// Reads the next form that is not a `#_` discard; `None` if a closing
    /// delimiter comes first.
    fn read_target(&mut self, start: SourcePos) -> Result<Option<Form>, Eof> {
        loop {
            match self.peek() {
                None => return Err(self.eof(start)),
                Some(Token { kind: TokenKind::Close(_), .. }) => return Ok(None),
                Some(_) => {
                    let form = self.read_form()?;
                    if !form.is_discard() {
                        return Ok(Some(form));
                    }
                }
            }
        }
    }

    fn wrap(&mut self, tok: &Token, what: &str, make: fn(Box<Form>) -> FormKind) -> Result<Form, Eof> {
        let start = tok.span.start;
        match self.read_target(start)? {
            Some(form) => {
                let span = Span::new(start, form.span.end);
                Ok(Form::new(make(Box::new(form)), span))
            }
            None => {
                self.error(format!("{what} has no target form"), tok.span);
                Ok(Form::new(FormKind::Nil, tok.span))
            }
        }
    }

    fn read_meta(&mut self, tok: &Token) -> Result<Form, Eof> {
        let start = tok.span.start;
        let Some(meta) = self.read_target(start)? else {
            self.error("metadata with no target", tok.span);
            return Ok(Form::new(FormKind::Nil, tok.span));
        };
        if !matches!(meta.kind, FormKind::Symbol(_) | FormKind::Keyword(_) | FormKind::Str(_) | FormKind::Map(_)) {
            self.error("metadata must be a symbol, keyword, string or map", meta.span);
        }
        match self.read_target(start)? {
            Some(target) => {
                let span = Span::new(start, target.span.end);
                Ok(Form::new(FormKind::Meta { meta: Box::new(meta), target: Box::new(target) }, span))
            }
            None => {
                let span = Span::new(start, meta.span.end);
                self.error("metadata with no target", span);
                Ok(Form::new(FormKind::Nil, span))
            }
        }
    }

    fn read_anon_fn(&mut self, tok: &Token) -> Result<Form, Eof> {
        let start = tok.span.start;
        let body_start = SourcePos { line: start.line, col: start.col + 1, offset: start.offset + 1 };
        let (items, end) = self.read_seq(start, Delim::Paren)?;
        let body = Form::new(FormKind::List(items), Span::new(body_start, end));
        let span = Span::new(start, end);
        let mut max_arg = 0;
        let mut rest = false;
        let mut nested = false;
        scan_args(&body, &mut max_arg, &mut rest, &mut nested);
        if nested {
            self.error("nested #()s are not allowed", span);
        }
        Ok(Form::new(FormKind::AnonFn { body: Box::new(body), max_arg, rest }, span))
    }

    fn read_reader_cond(&mut self, tok: &Token, splicing: bool) -> Result<Form, Eof> {
        let start = tok.span.start;
        let (items, end) = self.read_seq(start, Delim::Paren)?;
        let span = Span::new(start, end);
        let live: Vec<Form> = items.into_iter().filter(|f| !f.is_discard()).collect();
        if !live.len().is_multiple_of(2) {
            self.error("reader conditional requires an even number of forms", span);
        }
        let mut branches = Vec::with_capacity(live.len() / 2);
        let mut iter = live.into_iter();
        while let (Some(feature), Some(form)) = (iter.next(), iter.next()) {
            if feature.as_keyword().is_none() {
                self.error("feature in reader conditional must be a keyword", feature.span);
            }
            branches.push((feature, form));
        }
        Ok(Form::new(FormKind::ReaderCond { splicing, branches }, span))
    }

    fn read_ns_map(&mut self, tok: &Token, prefix: &str) -> Result<Form, Eof> {
        let start = tok.span.start;
        let prefix = match prefix {
            "" => {
                self.error("namespaced map must specify a namespace", tok.span);
                MapPrefix::Named(String::new())
            }
            ":" => MapPrefix::Current,
            p if p.starts_with(':') => MapPrefix::Alias(p[1..].to_string()),
            p => MapPrefix::Named(p.to_string()),
        };
        match self.peek() {
            Some(Token { kind: TokenKind::Open(Delim::Brace), .. }) => {
                let map = self.read_form()?;
                let span = Span::new(start, map.span.end);
                Ok(Form::new(FormKind::NamespacedMap { prefix, map: Box::new(map) }, span))
            }
            None => Err(self.eof(start)),
            Some(_) => {
                self.error("namespaced map must specify a map", tok.span);
                Ok(Form::new(FormKind::Nil, tok.span))
            }
        }
    }
}

fn scan_args(form: &Form, max_arg: &mut u32, rest: &mut bool, nested: &mut bool) {
    match &form.kind {
        FormKind::Symbol(sym) if sym.ns.is_none() => {
            if let Some(arg) = sym.name.strip_prefix('%') {
                if arg.is_empty() {
                    *max_arg = (*max_arg).max(1);
                } else if arg == "&" {
                    *rest = true;
                } else if let Ok(n) = arg.parse::<u32>() {
                    *max_arg = (*max_arg).max(n);
                }
            }
        }
        FormKind::AnonFn { .. } => *nested = true,
        FormKind::Discard(_) => {}
        _ => {
            for child in form.children() {
                scan_args(child, max_arg, rest, nested);
            }
        }
    }
}

static INT_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^[-+]?(?:(0)|([1-9][0-9]*)|0[xX]([0-9A-Fa-f]+)|0([0-7]+)|([1-9][0-9]?)[rR]([0-9A-Za-z]+)|(0[0-9]+))(N)?$")
        .expect("valid integer pattern")
});
static FLOAT_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^[-+]?[0-9]+(\.[0-9]*)?([eE][-+]?[0-9]+)?(M)?$").expect("valid float pattern")
});
static RATIO_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[-+]?[0-9]+/[0-9]+$").expect("valid ratio pattern"));

fn classify_number(text: &str) -> Option<NumberKind> {
    if let Some(c) = INT_RE.captures(text) {
        if c.get(7).is_some() {
            return None;
        }
        if let (Some(radix), Some(digits)) = (c.get(5), c.get(6)) {
            let radix: u32 = radix.as_str().parse().ok()?;
            if !(2..=36).contains(&radix) || !digits.as_str().chars().all(|d| d.is_digit(radix)) {
                return None;
            }
        }
        let kind = if c.get(8).is_some() {
            NumberKind::BigInt
        } else if c.get(3).is_some() {
            NumberKind::Hex
        } else if c.get(4).is_some() {
            NumberKind::Octal
        } else if c.get(5).is_some() {
            NumberKind::Radix
        } else {
            NumberKind::Integer
        };
        return Some(kind);
    }
    if let Some(c) = FLOAT_RE.captures(text) {
        return Some(if c.get(3).is_some() { NumberKind::BigDecimal } else { NumberKind::Float });
    }
    RATIO_RE.is_match(text).then_some(NumberKind::Ratio)
}

/// Splits `ns/name`; the namespace takes everything up to the last slash,
/// except that a lone `/` (or `ns//`) names the division symbol.
fn split_qualified(text: &str) -> Option<(Option<&str>, &str)> {
    if text == "/" {
        return Some((None, "/"));
    }
    if let Some(ns) = text.strip_suffix("//") {
        return (!ns.is_empty()).then_some((Some(ns), "/"));
    }
    match text.rfind('/') {
        None => Some((None, text)),
        Some(i) => {
            let (ns, name) = (&text[..i], &text[i + 1..]);
            (!ns.is_empty() && !name.is_empty()).then_some((Some(ns), name))
        }
    }
}

pub(crate) fn parse_symbol(text: &str) -> Option<Symbol> {
    if text.is_empty() || text.starts_with(':') || text.contains("::") || text.ends_with(':') && text.len() > 1 {
        return None;
    }
    let (ns, name) = split_qualified(text)?;
    Some(Symbol { ns: ns.map(str::to_string), name: name.to_string() })
}

fn parse_keyword(text: &str) -> Option<Keyword> {
    let (auto_resolved, rest) = match text.strip_prefix("::") {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix(':')?),
    };
    if rest.is_empty() || rest.starts_with(':') || rest.contains("::") {
        return None;
    }
    let (ns, name) = split_qualified(rest)?;
    Some(Keyword { ns: ns.map(str::to_string), name: name.to_string(), auto_resolved })
}

fn classify_atom(text: &str) -> Result<FormKind, String> {
    match text {
        "nil" => return Ok(FormKind::Nil),
        "true" => return Ok(FormKind::Bool(true)),
        "false" => return Ok(FormKind::Bool(false)),
        _ => {}
    }
    let mut chars = text.chars();
    let first = chars.next().unwrap_or(' ');
    let second = chars.next();
    let numeric = first.is_ascii_digit() || (matches!(first, '+' | '-') && second.is_some_and(|c| c.is_ascii_digit()));
    if numeric {
        return classify_number(text)
            .map(|kind| FormKind::Number(Number { text: text.to_string(), kind }))
            .ok_or_else(|| format!("invalid number: {text}"));
    }
    if first == ':' {
        return parse_keyword(text).map(FormKind::Keyword).ok_or_else(|| format!("invalid token: {text}"));
    }
    parse_symbol(text).map(FormKind::Symbol).ok_or_else(|| format!("invalid token: {text}"))
}
