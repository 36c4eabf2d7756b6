//! Every terminal the two grammars share, identified by where it occurs.
//!
//! A `Term` knows its Python spelling, how Python spaces it, and the
//! `(terminal, context)` key under which the grammar table may respell it for
//! SimPy. Terms that occur in several productions with the same meaning share
//! a key.

use crate::ast::{BinOpKind, CmpOp};

/// Python spacing class, used by the canonical Python renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PySpace {
    /// Operand-like: names, literals, `True`.
    Word,
    /// Keyword surrounded by spaces: `in`, `lambda`, `return`.
    Keyword,
    /// Binary operator surrounded by spaces: `+`, `=`, `->`.
    Binary,
    /// Glued to what follows: unary `-`, `*args`, `@decorator`, import dots.
    Prefix,
    /// Glued on both sides: `.`, keyword `=`, slice `:`.
    Tight,
    /// Space after only: `,`.
    Comma,
    /// Space after only: dict, annotation, lambda and block `:`.
    Colon,
    Open,
    Close,
    /// Layout; never rendered inline.
    Layout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    // Statement keywords.
    Def,
    Class,
    If,
    Elif,
    Else,
    While,
    For,
    Try,
    Except,
    Finally,
    With,
    Return,
    Pass,
    Break,
    Continue,
    Raise,
    Assert,
    Import,
    From,
    Global,
    Nonlocal,
    Del,
    // Other keywords.
    In,
    As,
    Lambda,
    And,
    Or,
    Not,
    Is,
    True,
    False,
    None,
    // Keywords respelled by context.
    ExprIf,
    ExprElse,
    CompFor,
    RaiseFrom,
    FromImport,
    RelativeImport,
    NotIn,
    IsNot,
    Decorator,
    DoubleStar,
    VarArg,
    KwOnly,
    PosOnly,
    // Layout.
    BlockStart,
    BlockEnd,
    LineSep,
    Concat,
    CommentMark,
    // Operators.
    Bin(BinOpKind),
    Cmp(CmpOp),
    Aug(BinOpKind),
    Arrow,
    UMinus,
    UPlus,
    Invert,
    Star,
    ImportDot,
    // Delimiters.
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Assign,
    KwEq,
    DictColon,
    SliceColon,
    AnnColon,
    LambdaColon,
    Semicolon,
    // Delimiters respelled by context.
    DefLParen,
    DefRParen,
    DefComma,
    WithComma,
    DefColon,
    ClassColon,
    IfColon,
    ElifColon,
    ElseColon,
    WhileColon,
    ForColon,
    WithColon,
    TryColon,
    ExceptColon,
    FinallyColon,
}

impl Term {
    /// Python spelling. Layout terms have none.
    pub fn python(self) -> &'static str {
        use Term::*;
        match self {
            Def => "def",
            Class => "class",
            If | ExprIf => "if",
            Elif => "elif",
            Else | ExprElse => "else",
            While => "while",
            For | CompFor => "for",
            Try => "try",
            Except => "except",
            Finally => "finally",
            With => "with",
            Return => "return",
            Pass => "pass",
            Break => "break",
            Continue => "continue",
            Raise => "raise",
            Assert => "assert",
            Import | FromImport | RelativeImport => "import",
            From | RaiseFrom => "from",
            Global => "global",
            Nonlocal => "nonlocal",
            Del => "del",
            In => "in",
            As => "as",
            Lambda => "lambda",
            And => "and",
            Or => "or",
            Not => "not",
            Is => "is",
            True => "True",
            False => "False",
            None => "None",
            NotIn => "not in",
            IsNot => "is not",
            Decorator => "@",
            DoubleStar => "**",
            VarArg | KwOnly | Star => "*",
            PosOnly => "/",
            BlockStart | BlockEnd | LineSep | Concat => "",
            CommentMark => "#",
            Bin(op) => op.symbol(),
            Cmp(op) => cmp_symbol(op),
            Aug(op) => aug_symbol(op),
            Arrow => "->",
            UMinus => "-",
            UPlus => "+",
            Invert => "~",
            ImportDot | Dot => ".",
            LParen | DefLParen => "(",
            RParen | DefRParen => ")",
            LBracket => "[",
            RBracket => "]",
            LBrace => "{",
            RBrace => "}",
            Comma | DefComma | WithComma => ",",
            Assign | KwEq => "=",
            DictColon | SliceColon | AnnColon | LambdaColon | DefColon | ClassColon | IfColon | ElifColon
            | ElseColon | WhileColon | ForColon | WithColon | TryColon | ExceptColon | FinallyColon => ":",
            Semicolon => ";",
        }
    }

    /// `(terminal, context)` key for grammar-table lookup.
    pub fn key(self) -> (&'static str, &'static str) {
        use Term::*;
        match self {
            ExprIf => ("if", "expression"),
            ExprElse => ("else", "expression"),
            CompFor => ("for", "for_if_clause"),
            RaiseFrom => ("from", "raise_stmt"),
            FromImport => ("import", "import_from"),
            RelativeImport => ("import", "import_from_relative"),
            NotIn => ("not in", "comparison"),
            IsNot => ("is not", "comparison"),
            Decorator => ("@", "decorators"),
            DoubleStar => ("**", "double_star"),
            VarArg => ("*", "star_etc"),
            KwOnly => ("* ,", "star_etc"),
            PosOnly => ("/", "slash_params"),
            BlockStart => ("NEWLINE INDENT", "block"),
            BlockEnd => ("DEDENT", "block"),
            LineSep => ("NEWLINE", "simple_stmts"),
            Concat => ("STRING STRING", "strings"),
            CommentMark => ("#", "comment"),
            DefLParen => ("(", "function_def"),
            DefRParen => (")", "function_def"),
            DefComma => (",", "function_def"),
            DefColon => (":", "function_def"),
            WithComma => (",", "with_stmt"),
            ClassColon => (":", "class_def"),
            IfColon => (":", "if_stmt"),
            ElifColon => (":", "elif_stmt"),
            ElseColon => (":", "else_block"),
            WhileColon => (":", "while_stmt"),
            ForColon => (":", "for_stmt"),
            WithColon => (":", "with_stmt"),
            TryColon => (":", "try_stmt"),
            ExceptColon => (":", "except_block"),
            FinallyColon => (":", "finally_block"),
            other => (other.python(), "global"),
        }
    }

    pub fn py_space(self) -> PySpace {
        use Term::*;
        match self {
            True | False | None | PosOnly => PySpace::Word,
            Def | Class | If | Elif | Else | While | For | Try | Except | Finally | With | Return | Pass
            | Break | Continue | Raise | Assert | Import | From | Global | Nonlocal | Del | In | As
            | Lambda | And | Or | Not | Is | ExprIf | ExprElse | CompFor | RaiseFrom | FromImport
            | RelativeImport | NotIn | IsNot => PySpace::Keyword,
            Bin(_) | Cmp(_) | Aug(_) | Arrow | Assign => PySpace::Binary,
            Decorator | DoubleStar | VarArg | KwOnly | Star | UMinus | UPlus | Invert | ImportDot => {
                PySpace::Prefix
            }
            Dot | KwEq | SliceColon => PySpace::Tight,
            Comma | DefComma | WithComma | Semicolon => PySpace::Comma,
            DictColon | AnnColon | LambdaColon | DefColon | ClassColon | IfColon | ElifColon | ElseColon
            | WhileColon | ForColon | WithColon | TryColon | ExceptColon | FinallyColon => PySpace::Colon,
            LParen | DefLParen | LBracket | LBrace => PySpace::Open,
            RParen | DefRParen | RBracket | RBrace => PySpace::Close,
            BlockStart | BlockEnd | LineSep | Concat | CommentMark => PySpace::Layout,
        }
    }

    /// Terms that can begin a statement and nothing else.
    pub fn is_statement_initial(self) -> bool {
        use Term::*;
        matches!(
            self,
            Def | Class
                | If
                | While
                | For
                | Try
                | With
                | Return
                | Pass
                | Break
                | Continue
                | Raise
                | Assert
                | Import
                | From
                | Global
                | Nonlocal
                | Del
                | Decorator
                | CommentMark
        )
    }

    /// Terms that can directly follow a complete expression and extend it
    /// or the construct around it. A separator spelled like one of these
    /// cannot be elided.
    pub fn continues_expression(self) -> bool {
        use Term::*;
        matches!(
            self,
            In | As
                | And
                | Or
                | Not
                | Is
                | ExprIf
                | ExprElse
                | CompFor
                | RaiseFrom
                | FromImport
                | RelativeImport
                | NotIn
                | IsNot
                | Concat
                | Bin(_)
                | Cmp(_)
                | Aug(_)
                | Arrow
                | UMinus
                | UPlus
                | Star
                | LParen
                | LBracket
                | Comma
                | Dot
                | Assign
                | KwEq
                | DictColon
                | SliceColon
                | AnnColon
                | LambdaColon
                | DefLParen
                | DefComma
                | WithComma
                | DefColon
                | ClassColon
                | IfColon
                | ElifColon
                | ElseColon
                | WhileColon
                | ForColon
                | WithColon
                | TryColon
                | ExceptColon
                | FinallyColon
                | BlockStart
                | LineSep
        )
    }

    /// Every term, for building lookup tables.
    pub fn all() -> Vec<Term> {
        use Term::*;
        let mut all = vec![
            Def,
            Class,
            If,
            Elif,
            Else,
            While,
            For,
            Try,
            Except,
            Finally,
            With,
            Return,
            Pass,
            Break,
            Continue,
            Raise,
            Assert,
            Import,
            From,
            Global,
            Nonlocal,
            Del,
            In,
            As,
            Lambda,
            And,
            Or,
            Not,
            Is,
            True,
            False,
            None,
            ExprIf,
            ExprElse,
            CompFor,
            RaiseFrom,
            FromImport,
            RelativeImport,
            NotIn,
            IsNot,
            Decorator,
            DoubleStar,
            VarArg,
            KwOnly,
            PosOnly,
            BlockStart,
            BlockEnd,
            LineSep,
            Concat,
            CommentMark,
            Arrow,
            UMinus,
            UPlus,
            Invert,
            Star,
            ImportDot,
            LParen,
            RParen,
            LBracket,
            RBracket,
            LBrace,
            RBrace,
            Comma,
            Dot,
            Assign,
            KwEq,
            DictColon,
            SliceColon,
            AnnColon,
            LambdaColon,
            Semicolon,
            DefLParen,
            DefRParen,
            DefComma,
            WithComma,
            DefColon,
            ClassColon,
            IfColon,
            ElifColon,
            ElseColon,
            WhileColon,
            ForColon,
            WithColon,
            TryColon,
            ExceptColon,
            FinallyColon,
        ];
        all.extend(BinOpKind::ALL.iter().map(|&op| Bin(op)));
        all.extend(BinOpKind::ALL.iter().map(|&op| Aug(op)));
        all.extend(
            CmpOp::ALL
                .iter()
                .filter(|op| !matches!(op, CmpOp::In | CmpOp::NotIn | CmpOp::Is | CmpOp::IsNot))
                .map(|&op| Cmp(op)),
        );
        all
    }
}

pub fn cmp_symbol(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "==",
        CmpOp::NotEq => "!=",
        CmpOp::Lt => "<",
        CmpOp::LtE => "<=",
        CmpOp::Gt => ">",
        CmpOp::GtE => ">=",
        CmpOp::Is => "is",
        CmpOp::IsNot => "is not",
        CmpOp::In => "in",
        CmpOp::NotIn => "not in",
    }
}

fn aug_symbol(op: BinOpKind) -> &'static str {
    match op {
        BinOpKind::Add => "+=",
        BinOpKind::Sub => "-=",
        BinOpKind::Mult => "*=",
        BinOpKind::MatMult => "@=",
        BinOpKind::Div => "/=",
        BinOpKind::Mod => "%=",
        BinOpKind::Pow => "**=",
        BinOpKind::LShift => "<<=",
        BinOpKind::RShift => ">>=",
        BinOpKind::BitOr => "|=",
        BinOpKind::BitXor => "^=",
        BinOpKind::BitAnd => "&=",
        BinOpKind::FloorDiv => "//=",
    }
}

/// Term for a comparison operator.
pub fn cmp_term(op: CmpOp) -> Term {
    match op {
        CmpOp::In => Term::In,
        CmpOp::NotIn => Term::NotIn,
        CmpOp::Is => Term::Is,
        CmpOp::IsNot => Term::IsNot,
        other => Term::Cmp(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn all_is_exhaustive_and_unique() {
        let all = Term::all();
        let set: HashSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), all.len());
        assert_eq!(all.len(), 86 + 13 + 13 + 6);
    }

    #[test]
    fn shared_keys_share_python_text() {
        let mut seen = std::collections::HashMap::new();
        for t in Term::all() {
            if let Some(prev) = seen.insert(t.key(), t) {
                assert_eq!(prev.python(), t.python(), "{prev:?} vs {t:?}");
            }
        }
    }
}
