use serde::Serialize;
use std::fmt;

/// A location in source text. `line` and `col` are 1-based and count
/// characters; `offset` is a 0-based byte index into the UTF-8 source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourcePos {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
}

impl SourcePos {
    pub const START: SourcePos = SourcePos { line: 1, col: 1, offset: 0 };

    /// Position reached after consuming `ch` at this position.
    pub fn advance(self, ch: char) -> SourcePos {
        if ch == '\n' {
            SourcePos { line: self.line + 1, col: 1, offset: self.offset + 1 }
        } else {
            SourcePos { line: self.line, col: self.col + 1, offset: self.offset + ch.len_utf8() }
        }
    }
}

impl Default for SourcePos {
    fn default() -> Self {
        SourcePos::START
    }
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Half-open source range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Span {
    pub start: SourcePos,
    pub end: SourcePos,
}

impl Span {
    pub fn new(start: SourcePos, end: SourcePos) -> Span {
        Span { start, end }
    }

    pub fn point(pos: SourcePos) -> Span {
        Span { start: pos, end: pos }
    }

    pub fn len(&self) -> usize {
        self.end.offset - self.start.offset
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start.offset <= other.start.offset && other.end.offset <= self.end.offset
    }

    pub fn join(&self, other: &Span) -> Span {
        Span {
            start: if other.start.offset < self.start.offset { other.start } else { self.start },
            end: if other.end.offset > self.end.offset { other.end } else { self.end },
        }
    }

    /// The source text covered by this span.
    pub fn slice<'s>(&self, source: &'s str) -> &'s str {
        &source[self.start.offset..self.end.offset]
    }

    /// Last line touched by the span (the end position is exclusive).
    pub fn last_line(&self) -> u32 {
        if self.end.col == 1 && self.end.line > self.start.line {
            self.end.line - 1
        } else {
            self.end.line
        }
    }

    /// Number of source lines the span touches.
    pub fn line_count(&self) -> u32 {
        self.last_line() - self.start.line + 1
    }
}
