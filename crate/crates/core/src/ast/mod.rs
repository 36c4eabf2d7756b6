//! The abstract syntax tree shared by the Python and SimPy frontends.
//!
//! Both grammars parse into, and emit from, exactly these types. Equality is
//! structural: source spans never participate, and comments compare by text
//! only (whether a comment sat on its own line or trailed a statement is
//! layout).

mod dump;
mod serial;
mod validate;
pub mod visit;

use serde::{Deserialize, Serialize};

pub use dump::ast_dump;
pub use serial::{deserialize, serialize, SerialError, FORMAT_VERSION};
pub use validate::{is_identifier, validate};

/// Byte offsets into the text a node was parsed from. Diagnostics only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub start_byte: usize,
    pub end_byte: usize,
}

impl SourceSpan {
    pub fn new(start_byte: usize, end_byte: usize) -> Self {
        debug_assert!(start_byte <= end_byte, "span start after end");
        Self { start_byte, end_byte }
    }

    pub fn to(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(
            self.start_byte.min(other.start_byte),
            self.end_byte.max(other.end_byte),
        )
    }
}

/// Root of every tree.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Module {
    pub body: Vec<Stmt>,
}

/// Structural equality, ignoring spans and comment placement.
pub fn ast_equal(a: &Module, b: &Module) -> bool {
    a == b
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Stmt {
    pub kind: StmtKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SourceSpan>,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Stmt {
    pub fn new(kind: StmtKind) -> Self {
        Self { kind, span: None }
    }

    pub fn with_span(kind: StmtKind, span: SourceSpan) -> Self {
        Self {
            kind,
            span: Some(span),
        }
    }

    pub fn is_comment(&self) -> bool {
        matches!(self.kind, StmtKind::Comment(_))
    }

    /// Compound statements own at least one block.
    pub fn is_compound(&self) -> bool {
        matches!(
            self.kind,
            StmtKind::FunctionDef(_)
                | StmtKind::ClassDef(_)
                | StmtKind::If { .. }
                | StmtKind::While { .. }
                | StmtKind::For { .. }
                | StmtKind::With { .. }
                | StmtKind::Try { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(clippy::large_enum_variant)]
pub enum StmtKind {
    FunctionDef(FunctionDef),
    ClassDef(ClassDef),
    If {
        test: Expr,
        body: Vec<Stmt>,
        elifs: Vec<ElifClause>,
        orelse: Option<Vec<Stmt>>,
    },
    While {
        test: Expr,
        body: Vec<Stmt>,
        orelse: Option<Vec<Stmt>>,
    },
    For {
        target: Expr,
        iter: Expr,
        body: Vec<Stmt>,
        orelse: Option<Vec<Stmt>>,
    },
    With {
        items: Vec<WithItem>,
        body: Vec<Stmt>,
    },
    Try {
        body: Vec<Stmt>,
        handlers: Vec<ExceptHandler>,
        orelse: Option<Vec<Stmt>>,
        finalbody: Option<Vec<Stmt>>,
    },
    Import(Vec<Alias>),
    ImportFrom {
        level: u32,
        module: Option<String>,
        names: Vec<Alias>,
    },
    Return(Option<Expr>),
    Pass,
    Break,
    Continue,
    Raise {
        exc: Option<Expr>,
        cause: Option<Expr>,
    },
    Assert {
        test: Expr,
        msg: Option<Expr>,
    },
    Assign {
        targets: Vec<Expr>,
        value: Expr,
    },
    AugAssign {
        target: Expr,
        op: BinOpKind,
        value: Expr,
    },
    AnnAssign {
        target: Expr,
        annotation: Expr,
        value: Option<Expr>,
    },
    Expr(Expr),
    Global(Vec<String>),
    Nonlocal(Vec<String>),
    Delete(Vec<Expr>),
    Comment(Comment),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionDef {
    pub name: String,
    pub params: Params,
    pub returns: Option<Expr>,
    pub decorators: Vec<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDef {
    pub name: String,
    pub bases: Vec<Expr>,
    pub keywords: Vec<Keyword>,
    pub decorators: Vec<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElifClause {
    pub test: Expr,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WithItem {
    pub context: Expr,
    pub target: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptHandler {
    pub kind: Option<Expr>,
    pub name: Option<String>,
    pub body: Vec<Stmt>,
}

/// `import a.b as c` / `from m import a as c`; `*` is a name of its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alias {
    pub name: String,
    pub asname: Option<String>,
}

/// Parameter list of a `def` or `lambda`.
///
/// Positional parameters with defaults must trail those without, across
/// `posonly` and `args` together. `kwonly` without a `vararg` is written
/// with a bare `*` marker.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub posonly: Vec<Param>,
    pub args: Vec<Param>,
    pub vararg: Option<Param>,
    pub kwonly: Vec<Param>,
    pub kwarg: Option<Param>,
}

impl Params {
    pub fn is_empty(&self) -> bool {
        self.posonly.is_empty()
            && self.args.is_empty()
            && self.vararg.is_none()
            && self.kwonly.is_empty()
            && self.kwarg.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub annotation: Option<Expr>,
    pub default: Option<Expr>,
}

impl Param {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            annotation: None,
            default: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CommentPlacement {
    OwnLine,
    Trailing,
}

/// `text` is everything after the `#`, trailing whitespace removed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Comment {
    pub text: String,
    pub placement: CommentPlacement,
}

impl PartialEq for Comment {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expr {
    pub kind: ExprKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SourceSpan>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Self { kind, span: None }
    }

    pub fn with_span(kind: ExprKind, span: SourceSpan) -> Self {
        Self {
            kind,
            span: Some(span),
        }
    }

    pub fn name(id: impl Into<String>) -> Self {
        Self::new(ExprKind::Name(id.into()))
    }

    pub fn int(raw: impl Into<String>) -> Self {
        Self::new(ExprKind::Int(raw.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ExprKind {
    Name(String),
    /// Integer literal, source text verbatim (`0x1F`, `1_000`).
    Int(String),
    /// Float or imaginary literal, source text verbatim.
    Float(String),
    /// One or more adjacent string literals; two or more parts is implicit
    /// concatenation.
    Str(Vec<StrPart>),
    Bool(bool),
    NoneLit,
    Tuple(Vec<Expr>),
    List(Vec<Expr>),
    Set(Vec<Expr>),
    Dict(Vec<DictItem>),
    ListComp {
        elt: Box<Expr>,
        generators: Vec<Comprehension>,
    },
    SetComp {
        elt: Box<Expr>,
        generators: Vec<Comprehension>,
    },
    DictComp {
        key: Box<Expr>,
        value: Box<Expr>,
        generators: Vec<Comprehension>,
    },
    GenExp {
        elt: Box<Expr>,
        generators: Vec<Comprehension>,
    },
    BinOp {
        left: Box<Expr>,
        op: BinOpKind,
        right: Box<Expr>,
    },
    UnaryOp {
        op: UnaryOpKind,
        operand: Box<Expr>,
    },
    BoolOp {
        op: BoolOpKind,
        values: Vec<Expr>,
    },
    Compare {
        left: Box<Expr>,
        ops: Vec<(CmpOp, Expr)>,
    },
    Call {
        func: Box<Expr>,
        args: Vec<Expr>,
        keywords: Vec<Keyword>,
    },
    Attribute {
        value: Box<Expr>,
        attr: String,
    },
    Subscript {
        value: Box<Expr>,
        index: Box<Expr>,
    },
    Slice {
        lower: Option<Box<Expr>>,
        upper: Option<Box<Expr>>,
        step: Option<Box<Expr>>,
    },
    Lambda {
        params: Box<Params>,
        body: Box<Expr>,
    },
    IfExp {
        test: Box<Expr>,
        body: Box<Expr>,
        orelse: Box<Expr>,
    },
    Starred(Box<Expr>),
}

/// One literal of a (possibly concatenated) string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StrPart {
    /// Prefix, quotes and escapes exactly as written.
    Plain(String),
    Formatted(FString),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FString {
    /// Prefix as written, e.g. `f`, `rf`, `F`.
    pub prefix: String,
    /// Opening and closing quote, e.g. `"` or `'''`.
    pub quote: String,
    pub pieces: Vec<FPiece>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FPiece {
    /// Literal text as written, with `{{`/`}}` escapes left in place.
    Literal(String),
    Interpolation {
        expr: Box<Expr>,
        conversion: Option<char>,
        format_spec: Option<Vec<FPiece>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DictItem {
    Pair(Expr, Expr),
    Unpack(Expr),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comprehension {
    pub target: Expr,
    pub iter: Expr,
    pub ifs: Vec<Expr>,
}

/// `arg: None` is a `**mapping` unpack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Keyword {
    pub arg: Option<String>,
    pub value: Expr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinOpKind {
    Add,
    Sub,
    Mult,
    MatMult,
    Div,
    Mod,
    Pow,
    LShift,
    RShift,
    BitOr,
    BitXor,
    BitAnd,
    FloorDiv,
}

impl BinOpKind {
    pub const ALL: [BinOpKind; 13] = [
        BinOpKind::Add,
        BinOpKind::Sub,
        BinOpKind::Mult,
        BinOpKind::MatMult,
        BinOpKind::Div,
        BinOpKind::Mod,
        BinOpKind::Pow,
        BinOpKind::LShift,
        BinOpKind::RShift,
        BinOpKind::BitOr,
        BinOpKind::BitXor,
        BinOpKind::BitAnd,
        BinOpKind::FloorDiv,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOpKind::Add => "+",
            BinOpKind::Sub => "-",
            BinOpKind::Mult => "*",
            BinOpKind::MatMult => "@",
            BinOpKind::Div => "/",
            BinOpKind::Mod => "%",
            BinOpKind::Pow => "**",
            BinOpKind::LShift => "<<",
            BinOpKind::RShift => ">>",
            BinOpKind::BitOr => "|",
            BinOpKind::BitXor => "^",
            BinOpKind::BitAnd => "&",
            BinOpKind::FloorDiv => "//",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.symbol() == s)
    }

    /// Augmented assignment spelling, e.g. `+=`.
    pub fn aug_symbol(self) -> String {
        format!("{}=", self.symbol())
    }

    pub fn from_aug_symbol(s: &str) -> Option<Self> {
        s.strip_suffix('=').and_then(Self::from_symbol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnaryOpKind {
    Invert,
    Not,
    UAdd,
    USub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoolOpKind {
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CmpOp {
    Eq,
    NotEq,
    Lt,
    LtE,
    Gt,
    GtE,
    Is,
    IsNot,
    In,
    NotIn,
}

impl CmpOp {
    pub const ALL: [CmpOp; 10] = [
        CmpOp::Eq,
        CmpOp::NotEq,
        CmpOp::Lt,
        CmpOp::LtE,
        CmpOp::Gt,
        CmpOp::GtE,
        CmpOp::Is,
        CmpOp::IsNot,
        CmpOp::In,
        CmpOp::NotIn,
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(value: &str) -> Module {
        Module {
            body: vec![Stmt::new(StmtKind::Assign {
                targets: vec![Expr::name("x")],
                value: Expr::int(value),
            })],
        }
    }

    #[test]
    fn empty_modules_are_equal() {
        assert!(ast_equal(&Module::default(), &Module::default()));
    }

    #[test]
    fn payload_difference_breaks_equality() {
        assert!(!ast_equal(&assign("1"), &assign("2")));
    }

    #[test]
    fn spans_do_not_participate() {
        let mut a = assign("1");
        a.body[0].span = Some(SourceSpan::new(0, 5));
        assert!(ast_equal(&a, &assign("1")));
    }

    #[test]
    fn comment_placement_is_layout() {
        let c = |placement| {
            Stmt::new(StmtKind::Comment(Comment {
                text: " note".into(),
                placement,
            }))
        };
        assert_eq!(c(CommentPlacement::OwnLine), c(CommentPlacement::Trailing));
        let other = Stmt::new(StmtKind::Comment(Comment {
            text: " other".into(),
            placement: CommentPlacement::OwnLine,
        }));
        assert_ne!(c(CommentPlacement::OwnLine), other);
    }

    #[test]
    fn aug_symbols_round_trip() {
        for op in BinOpKind::ALL {
            assert_eq!(BinOpKind::from_aug_symbol(&op.aug_symbol()), Some(op));
        }
    }
}
