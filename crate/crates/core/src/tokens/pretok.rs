//! Pre-tokenizers, written out by hand from the published split patterns.
//!
//! `Gpt2`:
//! `'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+`
//!
//! `Cl100k`:
//! `(?i:'s|'t|'re|'ve|'m|'ll|'d)|[^\r\n\p{L}\p{N}]?\p{L}+|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n]*|\s*[\r\n]+|\s+(?!\S)|\s+`
//!
//! `\p{L}` and `\p{N}` are approximated by `char::is_alphabetic` and
//! `char::is_numeric`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pretokenizer {
    Gpt2,
    Cl100k,
}

impl std::str::FromStr for Pretokenizer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gpt2" => Ok(Self::Gpt2),
            "cl100k" => Ok(Self::Cl100k),
            other => Err(format!(
                "unknown pre-tokenizer {other:?} (expected gpt2 or cl100k)"
            )),
        }
    }
}

impl std::fmt::Display for Pretokenizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Gpt2 => "gpt2",
            Self::Cl100k => "cl100k",
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Class {
    Letter,
    Number,
    Space,
    Other,
}

fn class(c: char) -> Class {
    if c.is_alphabetic() {
        Class::Letter
    } else if c.is_numeric() {
        Class::Number
    } else if c.is_whitespace() {
        Class::Space
    } else {
        Class::Other
    }
}

fn is_newline(c: char) -> bool {
    c == '\r' || c == '\n'
}

const CONTRACTIONS: [&str; 7] = ["s", "t", "re", "ve", "m", "ll", "d"];

impl Pretokenizer {
    /// Splits `text` into pieces whose concatenation is `text`.
    pub fn split(self, text: &str) -> Vec<&str> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let n = match self {
                Self::Gpt2 => gpt2_piece(&chars, i),
                Self::Cl100k => cl100k_piece(&chars, i),
            };
            debug_assert!(n > 0);
            let start = chars[i].0;
            let end = chars.get(i + n).map_or(text.len(), |c| c.0);
            out.push(&text[start..end]);
            i += n;
        }
        out
    }
}

fn run(chars: &[(usize, char)], from: usize, pred: impl Fn(char) -> bool) -> usize {
    chars[from..].iter().take_while(|(_, c)| pred(*c)).count()
}

fn contraction(chars: &[(usize, char)], i: usize, ignore_case: bool) -> usize {
    if chars[i].1 != '\'' {
        return 0;
    }
    for c in CONTRACTIONS {
        let matched = c.chars().enumerate().all(|(k, want)| {
            chars.get(i + 1 + k).is_some_and(|&(_, got)| {
                if ignore_case {
                    got.to_lowercase().eq(want.to_lowercase())
                } else {
                    got == want
                }
            })
        });
        if matched {
            return 1 + c.len();
        }
    }
    0
}

/// `\s+(?!\S)|\s+` at a whitespace char.
fn trailing_space(chars: &[(usize, char)], i: usize) -> usize {
    let n = run(chars, i, char::is_whitespace);
    if i + n == chars.len() || n == 1 {
        n
    } else {
        n - 1
    }
}

fn gpt2_piece(chars: &[(usize, char)], i: usize) -> usize {
    let n = contraction(chars, i, false);
    if n > 0 {
        return n;
    }
    let c = chars[i].1;
    let (lead, body) = match (c, chars.get(i + 1)) {
        (' ', Some(&(_, next))) if class(next) != Class::Space => (1, next),
        _ => (0, c),
    };
    match class(body) {
        Class::Letter => lead + run(chars, i + lead, |c| class(c) == Class::Letter),
        Class::Number => lead + run(chars, i + lead, |c| class(c) == Class::Number),
        Class::Other => lead + run(chars, i + lead, |c| class(c) == Class::Other),
        Class::Space => trailing_space(chars, i),
    }
}

fn cl100k_piece(chars: &[(usize, char)], i: usize) -> usize {
    let n = contraction(chars, i, true);
    if n > 0 {
        return n;
    }
    let c = chars[i].1;
    let letters = |from: usize| run(chars, from, |c| class(c) == Class::Letter);
    if class(c) == Class::Letter {
        return letters(i);
    }
    if !is_newline(c) && class(c) != Class::Number && i + 1 < chars.len() && letters(i + 1) > 0 {
        return 1 + letters(i + 1);
    }
    if class(c) == Class::Number {
        return run(chars, i, |c| class(c) == Class::Number).min(3);
    }
    let lead = usize::from(c == ' ' && chars.get(i + 1).is_some_and(|&(_, n)| class(n) == Class::Other));
    if class(chars[i + lead].1) == Class::Other {
        let body = run(chars, i + lead, |c| class(c) == Class::Other);
        let nl = run(chars, i + lead + body, is_newline);
        return lead + body + nl;
    }
    // Whitespace from here on.
    let n = run(chars, i, char::is_whitespace);
    if let Some(last_nl) = (0..n).rev().find(|&k| is_newline(chars[i + k].1)) {
        return last_nl + 1;
    }
    trailing_space(chars, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gpt2_examples() {
        let p = Pretokenizer::Gpt2;
        assert_eq!(
            p.split("Hello world's 42x"),
            ["Hello", " world", "'s", " 42", "x"]
        );
        assert_eq!(
            p.split("def f(nums):\n    return"),
            ["def", " f", "(", "nums", "):", "\n   ", " return"]
        );
        assert_eq!(p.split("a  \n"), ["a", "  \n"]);
        assert_eq!(p.split("x\n\ny"), ["x", "\n", "\n", "y"]);
        assert!(p.split("").is_empty());
    }

    #[test]
    fn cl100k_examples() {
        let p = Pretokenizer::Cl100k;
        assert_eq!(p.split("len(nums)"), ["len", "(nums", ")"]);
        assert_eq!(p.split("12345"), ["123", "45"]);
        assert_eq!(p.split("I'LL go"), ["I", "'LL", " go"]);
        assert_eq!(p.split("x:\n    y"), ["x", ":\n", "   ", " y"]);
        assert_eq!(p.split("a \n\n  b"), ["a", " \n\n", " ", " b"]);
        assert_eq!(p.split(" += 1"), [" +=", " ", "1"]);
    }
}
