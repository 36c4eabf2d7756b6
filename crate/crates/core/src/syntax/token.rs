use crate::ast::SourceSpan;

/// Token kinds the shared parser sees. Python and SimPy tokens both map
/// onto these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokKind {
    Name,
    Keyword,
    Number,
    String,
    Op,
    Placeholder,
    /// SimPy comment payload following the comment placeholder.
    CommentText,
    /// Python comment, including its `#`.
    Comment,
    Newline,
    Indent,
    Dedent,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tok {
    pub kind: TokKind,
    pub text: String,
    pub span: SourceSpan,
    pub own_line: bool,
}

impl Tok {
    pub fn eof(at: usize) -> Self {
        Tok {
            kind: TokKind::Eof,
            text: String::new(),
            span: SourceSpan::new(at, at),
            own_line: false,
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            TokKind::Newline => "NEWLINE".into(),
            TokKind::Indent => "INDENT".into(),
            TokKind::Dedent => "DEDENT".into(),
            TokKind::Eof => "end of input".into(),
            _ => format!("{:?}", self.text),
        }
    }
}
