//! Python tokenizer with synthesized layout tokens.

use crate::ast::SourceSpan;
use crate::error::LexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PyTokenKind {
    Keyword,
    Name,
    Number,
    String,
    Op,
    Newline,
    Indent,
    Dedent,
    Comment,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyToken {
    pub kind: PyTokenKind,
    /// Source slice; empty for layout tokens. Comments keep their `#`.
    pub text: String,
    pub span: SourceSpan,
    /// For comments: nothing but whitespace precedes it on its line.
    pub own_line: bool,
}

impl PyToken {
    pub fn is(&self, kind: PyTokenKind, text: &str) -> bool {
        self.kind == kind && self.text == text
    }

    pub fn is_op(&self, text: &str) -> bool {
        self.is(PyTokenKind::Op, text)
    }

    pub fn is_keyword(&self, text: &str) -> bool {
        self.is(PyTokenKind::Keyword, text)
    }
}

pub const KEYWORDS: [&str; 35] = [
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class", "continue", "def",
    "del", "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in", "is",
    "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while", "with", "yield",
];

pub(crate) const OPERATORS: [&str; 47] = [
    "**=", "//=", ">>=", "<<=", "...", "**", "//", "<<", ">>", "<=", ">=", "==", "!=", "->", "+=", "-=",
    "*=", "/=", "%=", "@=", "&=", "|=", "^=", ":=", "+", "-", "*", "/", "%", "@", "&", "|", "^", "~", "<",
    ">", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "=",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

pub fn is_ident_start(c: char) -> bool {
    c == '_' || c.is_alphabetic()
}

pub fn is_ident_continue(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

/// Tokenize a module. A leading BOM is skipped.
pub fn lex_python(source: &str) -> Result<Vec<PyToken>, LexError> {
    Lexer::new(source).run()
}

struct PendingComment {
    token: PyToken,
    col: usize,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    out: Vec<PyToken>,
    /// (tab-8 column, tab-1 column) of each open block.
    indents: Vec<(usize, usize)>,
    depth: usize,
    /// Own-line comments seen since the last logical line ended. Their
    /// block membership is settled once the next line's indentation is known.
    pending: Vec<PendingComment>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let pos = if src.starts_with('\u{feff}') { 3 } else { 0 };
        Self {
            src,
            pos,
            out: Vec::new(),
            indents: vec![(0, 0)],
            depth: 0,
            pending: Vec::new(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn span(&self, start: usize) -> SourceSpan {
        SourceSpan::new(start, self.pos)
    }

    fn push(&mut self, kind: PyTokenKind, start: usize) {
        let text = self.src[start..self.pos].to_string();
        let span = self.span(start);
        self.out.push(PyToken {
            kind,
            text,
            span,
            own_line: false,
        });
    }

    fn push_layout(&mut self, kind: PyTokenKind) {
        self.out.push(PyToken {
            kind,
            text: String::new(),
            span: SourceSpan::new(self.pos, self.pos),
            own_line: false,
        });
    }

    fn run(mut self) -> Result<Vec<PyToken>, LexError> {
        let mut at_line_start = true;
        loop {
            if at_line_start && self.depth == 0 {
                if !self.line_start()? {
                    break;
                }
                at_line_start = false;
            }
            let Some(c) = self.peek() else { break };
            let start = self.pos;
            match c {
                ' ' | '\t' | '\x0c' => self.pos += 1,
                '\r' | '\n' => {
                    self.eat_newline();
                    if self.depth == 0 {
                        self.out.push(PyToken {
                            kind: PyTokenKind::Newline,
                            text: String::new(),
                            span: self.span(start),
                            own_line: false,
                        });
                        at_line_start = true;
                    }
                }
                '\\' => {
                    self.pos += 1;
                    match self.peek() {
                        Some('\n') | Some('\r') => self.eat_newline(),
                        None => {
                            return Err(LexError::new(
                                "unexpected end of file after line continuation",
                                self.span(start),
                            ))
                        }
                        _ => {
                            return Err(LexError::new(
                                "unexpected character after line continuation",
                                self.span(start),
                            ))
                        }
                    }
                }
                '#' => {
                    self.skip_to_eol();
                    self.push(PyTokenKind::Comment, start);
                }
                '"' | '\'' => self.string(start, 0)?,
                c if c.is_ascii_digit() => self.number(start)?,
                '.' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => self.number(start)?,
                c if is_ident_start(c) => {
                    let prefix_len = string_prefix_len(self.rest());
                    if prefix_len > 0 {
                        self.string(start, prefix_len)?;
                    } else {
                        self.word(start);
                    }
                }
                _ => self.operator(start)?,
            }
        }
        let end = self.src.len();
        self.pos = end;
        if self.depth > 0 {
            return Err(LexError::new(
                "unexpected end of file inside brackets",
                SourceSpan::new(end, end),
            ));
        }
        if let Some(last) = self.out.last() {
            if !matches!(
                last.kind,
                PyTokenKind::Newline | PyTokenKind::Dedent | PyTokenKind::Indent
            ) && !(last.kind == PyTokenKind::Comment && last.own_line)
            {
                self.push_layout(PyTokenKind::Newline);
            }
        }
        self.close_blocks(0, 0);
        self.push_layout(PyTokenKind::Eof);
        Ok(self.out)
    }

    fn eat_newline(&mut self) {
        if self.rest().starts_with("\r\n") {
            self.pos += 2;
        } else {
            self.pos += 1;
        }
    }

    fn skip_to_eol(&mut self) {
        let n = self.rest().find(['\n', '\r']).unwrap_or(self.rest().len());
        self.pos += n;
    }

    /// Handles blank lines, comment-only lines and indentation before the
    /// first token of a logical line. Returns false at end of input.
    fn line_start(&mut self) -> Result<bool, LexError> {
        loop {
            let line_begin = self.pos;
            let (mut col, mut alt) = (0usize, 0usize);
            while let Some(c) = self.peek() {
                match c {
                    ' ' => {
                        col += 1;
                        alt += 1;
                    }
                    '\t' => {
                        col = (col / 8 + 1) * 8;
                        alt += 1;
                    }
                    '\x0c' => {
                        col = 0;
                        alt = 0;
                    }
                    _ => break,
                }
                self.pos += 1;
            }
            match self.peek() {
                None => return Ok(false),
                Some('\n') | Some('\r') => {
                    self.eat_newline();
                }
                Some('#') => {
                    let start = self.pos;
                    self.skip_to_eol();
                    let token = PyToken {
                        kind: PyTokenKind::Comment,
                        text: self.src[start..self.pos].to_string(),
                        span: self.span(start),
                        own_line: true,
                    };
                    self.pending.push(PendingComment { token, col });
                    if self.peek().is_some() {
                        self.eat_newline();
                    }
                }
                Some('\\') if matches!(self.peek_at(1), Some('\n') | Some('\r')) => {
                    // A continuation on an otherwise empty line joins nothing.
                    self.pos += 1;
                    self.eat_newline();
                }
                Some(_) => {
                    self.indent_to(col, alt, line_begin)?;
                    return Ok(true);
                }
            }
        }
    }

    fn indent_to(&mut self, col: usize, alt: usize, line_begin: usize) -> Result<(), LexError> {
        let (top, top_alt) = *self.indents.last().expect("indent stack never empty");
        let here = SourceSpan::new(line_begin, self.pos);
        if col > top {
            if alt <= top_alt {
                return Err(LexError::new("inconsistent use of tabs and spaces", here));
            }
            self.indents.push((col, alt));
            self.push_layout(PyTokenKind::Indent);
            self.flush_pending(0);
        } else if col == top {
            if alt != top_alt {
                return Err(LexError::new("inconsistent use of tabs and spaces", here));
            }
            self.flush_pending(0);
        } else {
            if !self.indents.iter().any(|&(c, _)| c == col) {
                return Err(LexError::new(
                    "unindent does not match any outer indentation level",
                    here,
                ));
            }
            self.close_blocks(col, alt);
            let (_, top_alt) = *self.indents.last().expect("indent stack never empty");
            if alt != top_alt {
                return Err(LexError::new("inconsistent use of tabs and spaces", here));
            }
        }
        Ok(())
    }

    /// Pops blocks deeper than `col`. Pending comments indented at least as
    /// far as a block stay inside it.
    fn close_blocks(&mut self, col: usize, _alt: usize) {
        while let Some(&(top, _)) = self.indents.last() {
            if top <= col {
                break;
            }
            self.flush_pending(top);
            self.indents.pop();
            self.push_layout(PyTokenKind::Dedent);
        }
        self.flush_pending(0);
    }

    /// Emits the leading run of pending comments at column >= `min_col`.
    fn flush_pending(&mut self, min_col: usize) {
        let n = self.pending.iter().take_while(|p| p.col >= min_col).count();
        for p in self.pending.drain(..n) {
            self.out.push(p.token);
        }
    }

    fn word(&mut self, start: usize) {
        while self.peek().is_some_and(is_ident_continue) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        let kind = if is_keyword(&self.src[start..self.pos]) {
            PyTokenKind::Keyword
        } else {
            PyTokenKind::Name
        };
        self.push(kind, start);
    }

    fn string(&mut self, start: usize, prefix_len: usize) -> Result<(), LexError> {
        self.pos = scan_string(self.src, start, prefix_len)?;
        self.push(PyTokenKind::String, start);
        Ok(())
    }

    fn number(&mut self, start: usize) -> Result<(), LexError> {
        self.pos = scan_number(self.src, start)?;
        self.push(PyTokenKind::Number, start);
        Ok(())
    }

    fn operator(&mut self, start: usize) -> Result<(), LexError> {
        let Some(op) = OPERATORS.iter().find(|op| self.rest().starts_with(**op)) else {
            let c = self.peek().unwrap_or_default();
            self.pos += c.len_utf8();
            return Err(LexError::new(
                format!("illegal character {c:?}"),
                self.span(start),
            ));
        };
        self.pos += op.len();
        match *op {
            "(" | "[" | "{" => self.depth += 1,
            ")" | "]" | "}" => {
                if self.depth == 0 {
                    return Err(LexError::new(format!("unmatched {op:?}"), self.span(start)));
                }
                self.depth -= 1;
            }
            _ => {}
        }
        self.push(PyTokenKind::Op, start);
        Ok(())
    }
}

/// Length of a string prefix (`rb`, `f`, ...) at the start of `rest` if one
/// is immediately followed by a quote.
pub(crate) fn string_prefix_len(rest: &str) -> usize {
    let bytes = rest.as_bytes();
    let n = bytes
        .iter()
        .take_while(|b| matches!(b.to_ascii_lowercase(), b'r' | b'b' | b'u' | b'f'))
        .count();
    if n == 0 || n > 2 || !matches!(bytes.get(n), Some(b'"') | Some(b'\'')) {
        return 0;
    }
    match rest[..n].to_ascii_lowercase().as_str() {
        "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf" => n,
        _ => 0,
    }
}

/// Scans a string literal starting at `start` (prefix included); returns the
/// end offset.
pub(crate) fn scan_string(src: &str, start: usize, prefix_len: usize) -> Result<usize, LexError> {
    let mut pos = start + prefix_len;
    let rest = |pos: usize| &src[pos..];
    let quote = rest(pos).chars().next().expect("caller checked for a quote");
    let triple: String = std::iter::repeat_n(quote, 3).collect();
    let is_triple = rest(pos).starts_with(&triple);
    pos += if is_triple { 3 } else { 1 };
    let unterminated = |pos: usize| LexError::new("unterminated string literal", SourceSpan::new(start, pos));
    loop {
        let Some(c) = rest(pos).chars().next() else {
            return Err(unterminated(pos));
        };
        match c {
            '\\' => {
                pos += 1;
                if rest(pos).starts_with("\r\n") {
                    pos += 2;
                } else if let Some(c) = rest(pos).chars().next() {
                    pos += c.len_utf8();
                }
            }
            '\n' | '\r' if !is_triple => return Err(unterminated(pos)),
            c if c == quote => {
                if !is_triple {
                    return Ok(pos + 1);
                }
                if rest(pos).starts_with(&triple) {
                    return Ok(pos + 3);
                }
                pos += 1;
            }
            c => pos += c.len_utf8(),
        }
    }
}

/// Scans a numeric literal starting at `start`; returns the end offset.
pub(crate) fn scan_number(src: &str, start: usize) -> Result<usize, LexError> {
    let mut pos = start;
    let peek = |pos: usize| src[pos..].chars().next();
    let digits = |pos: &mut usize, valid: &dyn Fn(char) -> bool| {
        while peek(*pos).is_some_and(|c| valid(c) || c == '_') {
            *pos += 1;
        }
    };
    let radix = if peek(pos) == Some('0') {
        src[pos + 1..].chars().next().map(|c| c.to_ascii_lowercase())
    } else {
        None
    };
    match radix {
        Some('x') => {
            pos += 2;
            digits(&mut pos, &|c| c.is_ascii_hexdigit());
        }
        Some('o') => {
            pos += 2;
            digits(&mut pos, &|c| c.is_digit(8));
        }
        Some('b') => {
            pos += 2;
            digits(&mut pos, &|c| c == '0' || c == '1');
        }
        _ => {
            digits(&mut pos, &|c| c.is_ascii_digit());
            if peek(pos) == Some('.') {
                pos += 1;
                digits(&mut pos, &|c| c.is_ascii_digit());
            }
            if matches!(peek(pos), Some('e') | Some('E')) {
                let save = pos;
                pos += 1;
                if matches!(peek(pos), Some('+') | Some('-')) {
                    pos += 1;
                }
                if peek(pos).is_some_and(|c| c.is_ascii_digit()) {
                    digits(&mut pos, &|c| c.is_ascii_digit());
                } else {
                    pos = save;
                }
            }
            if matches!(peek(pos), Some('j') | Some('J')) {
                pos += 1;
            }
        }
    }
    if let Some(c) = peek(pos).filter(|&c| is_ident_continue(c)) {
        return Err(LexError::new(
            format!("invalid character {c:?} in number"),
            SourceSpan::new(pos, pos + c.len_utf8()),
        ));
    }
    Ok(pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PyTokenKind::*;

    fn kinds(src: &str) -> Vec<(PyTokenKind, std::string::String)> {
        lex_python(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    fn texts(src: &str) -> Vec<std::string::String> {
        lex_python(src)
            .unwrap()
            .into_iter()
            .map(|t| match t.kind {
                Newline => "NEWLINE".to_string(),
                Indent => "INDENT".to_string(),
                Dedent => "DEDENT".to_string(),
                Eof => "EOF".to_string(),
                _ => t.text,
            })
            .collect()
    }

    #[test]
    fn empty_source() {
        assert_eq!(texts(""), ["EOF"]);
    }

    #[test]
    fn block_layout() {
        assert_eq!(
            texts("if x:\n    y\n"),
            ["if", "x", ":", "NEWLINE", "INDENT", "y", "NEWLINE", "DEDENT", "EOF"]
        );
    }

    #[test]
    fn implicit_joining() {
        let t = texts("a = (1 +\n 2)");
        assert_eq!(t, ["a", "=", "(", "1", "+", "2", ")", "NEWLINE", "EOF"]);
    }

    #[test]
    fn backslash_continuation() {
        assert_eq!(
            texts("x = 1 + \\\n  2\n"),
            ["x", "=", "1", "+", "2", "NEWLINE", "EOF"]
        );
    }

    #[test]
    fn comments_follow_their_block() {
        let src = "if x:\n    y\n    # inner\n# outer\nz\n";
        assert_eq!(
            texts(src),
            [
                "if", "x", ":", "NEWLINE", "INDENT", "y", "NEWLINE", "# inner", "DEDENT", "# outer", "z",
                "NEWLINE", "EOF"
            ]
        );
    }

    #[test]
    fn comment_before_indented_line_belongs_to_block() {
        let src = "if x:\n# c\n    y\n";
        assert_eq!(
            texts(src),
            ["if", "x", ":", "NEWLINE", "INDENT", "# c", "y", "NEWLINE", "DEDENT", "EOF"]
        );
    }

    #[test]
    fn string_forms() {
        let toks = kinds("rb'a\\'' \"\"\"x\n\"y\"\"\" f'{a!r}'");
        assert_eq!(toks[0], (String, "rb'a\\''".into()));
        assert_eq!(toks[1], (String, "\"\"\"x\n\"y\"\"\"".into()));
        assert_eq!(toks[2], (String, "f'{a!r}'".into()));
    }

    #[test]
    fn numbers() {
        let toks = kinds("0x1F 1_000 1.5e-3 .5 3j 1e5 7.");
        let nums: Vec<_> = toks
            .iter()
            .filter(|t| t.0 == Number)
            .map(|t| t.1.as_str())
            .collect();
        assert_eq!(nums, ["0x1F", "1_000", "1.5e-3", ".5", "3j", "1e5", "7."]);
    }

    #[test]
    fn tabs_count_to_eight() {
        assert!(lex_python("if x:\n\ty\n\tz\n").is_ok());
        assert!(lex_python("if x:\n    \ty\n\tz\n").is_err());
    }

    #[test]
    fn errors() {
        assert!(lex_python("x = 'abc\n").is_err());
        assert!(lex_python("if x:\n    y\n  z\n").is_err());
        assert!(lex_python("x = $\n").is_err());
        assert!(lex_python("x = (1,\n").is_err());
    }

    #[test]
    fn bom_is_skipped() {
        assert_eq!(texts("\u{feff}x\n"), ["x", "NEWLINE", "EOF"]);
    }
}
