//! Fenced code blocks inside message text.

use std::ops::Range;

/// A fenced block tagged `python` or `simpy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpan {
    /// From the opening backticks through the closing backticks.
    pub range: Range<usize>,
    pub lang: String,
    pub body: Range<usize>,
}

impl CodeSpan {
    pub fn body<'a>(&self, content: &'a str) -> &'a str {
        &content[self.body.clone()]
    }
}

pub const TAGS: [&str; 2] = ["python", "simpy"];

fn lines(content: &str) -> impl Iterator<Item = (usize, &str)> {
    content.split_inclusive('\n').scan(0, |pos, line| {
        let start = *pos;
        *pos += line.len();
        Some((start, line))
    })
}

fn strip_eol(line: &str) -> &str {
    line.strip_suffix('\n')
        .map_or(line, |l| l.strip_suffix('\r').unwrap_or(l))
}

/// Triple-backtick blocks tagged `python` or `simpy`, in order. A fence
/// opens at the start of a line and closes at the next line that is only
/// backticks; an unclosed fence is plain text.
pub fn extract_code_spans(content: &str) -> Vec<CodeSpan> {
    let mut spans = Vec::new();
    let mut open: Option<(usize, usize, String)> = None;
    for (start, line) in lines(content) {
        let text = strip_eol(line);
        match &open {
            None => {
                if let Some(info) = text.strip_prefix("```") {
                    if !info.contains('`') {
                        open = Some((start, start + line.len(), info.trim().to_string()));
                    }
                }
            }
            Some((fence_start, body_start, lang)) => {
                if text.trim_end() == "```" {
                    if TAGS.contains(&lang.as_str()) {
                        spans.push(CodeSpan {
                            range: *fence_start..start + text.len(),
                            lang: lang.clone(),
                            body: *body_start..start,
                        });
                    }
                    open = None;
                }
            }
        }
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_code() {
        assert!(extract_code_spans("hello").is_empty());
    }

    #[test]
    fn one_python_fence() {
        let s = "see:\n```python\nx = 1\n```\nbye";
        let spans = extract_code_spans(s);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].body(s), "x = 1\n");
        assert_eq!(&s[spans[0].range.clone()], "```python\nx = 1\n```");
    }

    #[test]
    fn other_tags_are_skipped() {
        let s = "```text\nx = 1\n```\n```python\npass\n```\n```\nraw\n```";
        let spans = extract_code_spans(s);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].body(s), "pass\n");
    }

    #[test]
    fn unclosed_fence_is_text() {
        assert!(extract_code_spans("```python\nx = 1\n").is_empty());
    }

    #[test]
    fn crlf_and_empty_body() {
        let s = "```simpy\r\n```\r\n";
        let spans = extract_code_spans(s);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].body(s), "");
    }
}
