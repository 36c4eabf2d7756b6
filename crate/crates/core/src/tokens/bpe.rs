//! Byte-level BPE vocabularies in the GPT-2 interchange format.

use std::collections::HashMap;
use std::path::Path;

use super::bytes::{byte_char, decode_symbols};
use super::pretok::Pretokenizer;
use crate::grammar::GrammarTokenTable;

/// Id emitted for a symbol the vocab cannot spell. Only vocabs without
/// full byte coverage ever produce it.
pub const UNKNOWN_ID: u32 = u32::MAX;

#[derive(Debug, thiserror::Error)]
pub enum VocabError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("vocab is not a JSON object of token to id: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vocab ids are not dense: id {0} is missing")]
    SparseIds(u32),
    #[error("id {id} is used by both {first:?} and {second:?}")]
    DuplicateId { id: u32, first: String, second: String },
    #[error("merges line {line}: {message}")]
    Merge { line: usize, message: String },
    #[error("placeholder {0:?} is already in the vocab")]
    Collision(String),
}

#[derive(Debug, Clone)]
pub struct BpeVocab {
    name: String,
    pretokenizer: Pretokenizer,
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
    merges: Vec<(u32, u32)>,
    /// (left, right) -> (rank, merged id)
    ranks: HashMap<(u32, u32), (u32, u32)>,
    byte_ids: [u32; 256],
    /// Placeholders added by `extend_vocab`, longest first.
    atomic: Vec<(String, u32)>,
    base_len: usize,
}

impl BpeVocab {
    /// Builds a vocab from ordered token strings (ids are positions) and
    /// merge rules given as pairs of token strings.
    pub fn from_parts(
        name: impl Into<String>,
        pretokenizer: Pretokenizer,
        tokens: Vec<String>,
        merges: &[(String, String)],
    ) -> Result<Self, VocabError> {
        let mut ids = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if let Some(prev) = ids.insert(t.clone(), i as u32) {
                return Err(VocabError::DuplicateId {
                    id: i as u32,
                    first: tokens[prev as usize].clone(),
                    second: t.clone(),
                });
            }
        }
        let mut rules = Vec::with_capacity(merges.len());
        let mut ranks = HashMap::with_capacity(merges.len());
        for (rank, (a, b)) in merges.iter().enumerate() {
            let line = rank + 1;
            let id = |s: &str| {
                ids.get(s).copied().ok_or_else(|| VocabError::Merge {
                    line,
                    message: format!("unknown symbol {s:?}"),
                })
            };
            let (l, r) = (id(a)?, id(b)?);
            let merged = id(&format!("{a}{b}"))?;
            rules.push((l, r));
            ranks.entry((l, r)).or_insert((rank as u32, merged));
        }
        let mut byte_ids = [UNKNOWN_ID; 256];
        for b in 0..=255u8 {
            if let Some(&id) = ids.get(byte_char(b).to_string().as_str()) {
                byte_ids[b as usize] = id;
            }
        }
        let base_len = tokens.len();
        Ok(Self {
            name: name.into(),
            pretokenizer,
            tokens,
            ids,
            merges: rules,
            ranks,
            byte_ids,
            atomic: Vec::new(),
            base_len,
        })
    }

    /// Parses `vocab.json` and `merges.txt` contents.
    pub fn parse(
        name: impl Into<String>,
        pretokenizer: Pretokenizer,
        vocab_json: &str,
        merges_txt: &str,
    ) -> Result<Self, VocabError> {
        let map: HashMap<String, u32> = serde_json::from_str(vocab_json)?;
        let mut tokens: Vec<Option<String>> = vec![None; map.len()];
        for (tok, id) in map {
            match tokens.get_mut(id as usize) {
                Some(slot @ None) => *slot = Some(tok),
                Some(Some(prev)) => {
                    return Err(VocabError::DuplicateId {
                        id,
                        first: prev.clone(),
                        second: tok,
                    })
                }
                None => {}
            }
        }
        if let Some(missing) = tokens.iter().position(Option::is_none) {
            return Err(VocabError::SparseIds(missing as u32));
        }
        let tokens: Vec<String> = tokens.into_iter().map(|t| t.expect("all slots filled")).collect();
        let mut merges = Vec::new();
        for (i, line) in merges_txt.lines().enumerate() {
            if line.starts_with("#version") || line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => {
                    merges.push((a.to_string(), b.to_string()))
                }
                _ => {
                    return Err(VocabError::Merge {
                        line: i + 1,
                        message: format!("expected two space-separated symbols, got {line:?}"),
                    })
                }
            }
        }
        Self::from_parts(name, pretokenizer, tokens, &merges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pretokenizer(&self) -> Pretokenizer {
        self.pretokenizer
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn merge_count(&self) -> usize {
        self.merges.len()
    }

    /// True when every byte has its own symbol, so any text is encodable.
    pub fn is_byte_level(&self) -> bool {
        !self.byte_ids.contains(&UNKNOWN_ID)
    }

    pub fn is_extended(&self) -> bool {
        !self.atomic.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    /// Writes `vocab.json` and `merges.txt` for the base (unextended) vocab.
    pub fn to_files(&self) -> (String, String) {
        let map: serde_json::Map<String, serde_json::Value> = self.tokens[..self.base_len]
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), serde_json::Value::from(i)))
            .collect();
        let mut merges = String::from("#version: 0.2\n");
        for &(a, b) in &self.merges {
            merges.push_str(&self.tokens[a as usize]);
            merges.push(' ');
            merges.push_str(&self.tokens[b as usize]);
            merges.push('\n');
        }
        (serde_json::to_string(&map).expect("string map"), merges)
    }

    fn encode_piece(&self, piece: &str, out: &mut Vec<u32>) {
        let mut syms: Vec<u32> = piece.bytes().map(|b| self.byte_ids[b as usize]).collect();
        loop {
            let best = syms
                .windows(2)
                .filter_map(|w| self.ranks.get(&(w[0], w[1])))
                .min_by_key(|(rank, _)| *rank);
            let Some(&(rank, merged)) = best else { break };
            let (l, r) = self.merges[rank as usize];
            let mut next = Vec::with_capacity(syms.len());
            let mut i = 0;
            while i < syms.len() {
                if i + 1 < syms.len() && syms[i] == l && syms[i + 1] == r {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(syms[i]);
                    i += 1;
                }
            }
            syms = next;
        }
        out.extend(syms);
    }

    fn encode_plain(&self, text: &str, out: &mut Vec<u32>) {
        for piece in self.pretokenizer.split(text) {
            self.encode_piece(piece, out);
        }
    }
}

/// Loads a GPT-2 format vocab pair from disk.
pub fn load_vocab(
    vocab_file: &Path,
    merges_file: &Path,
    pretokenizer: Pretokenizer,
) -> Result<BpeVocab, VocabError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|source| VocabError::Io {
            path: p.display().to_string(),
            source,
        })
    };
    let name = vocab_file
        .parent()
        .and_then(|d| d.file_name())
        .map_or("external".to_string(), |n| n.to_string_lossy().into_owned());
    BpeVocab::parse(name, pretokenizer, &read(vocab_file)?, &read(merges_file)?)
}

/// Adds every placeholder of `table` as one atomic token with a fresh id.
pub fn extend_vocab(vocab: &BpeVocab, table: &GrammarTokenTable) -> Result<BpeVocab, VocabError> {
    let mut out = vocab.clone();
    for p in table.placeholders() {
        if out.ids.contains_key(p) {
            return Err(VocabError::Collision(p.to_string()));
        }
        let id = out.tokens.len() as u32;
        out.tokens.push(p.to_string());
        out.ids.insert(p.to_string(), id);
        out.atomic.push((p.to_string(), id));
    }
    out.atomic
        .sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Byte-level BPE: pre-tokenize, apply merges by rank, map to ids.
/// Placeholders of an extended vocab are never split.
pub fn tokenize(vocab: &BpeVocab, text: &str) -> Vec<u32> {
    let mut out = Vec::new();
    if vocab.atomic.is_empty() {
        vocab.encode_plain(text, &mut out);
        return out;
    }
    let mut plain_start = 0;
    let mut i = 0;
    while i < text.len() {
        if text.as_bytes()[i] == b'<' {
            let hit = vocab
                .atomic
                .iter()
                .find(|(p, _)| text[i..].starts_with(p.as_str()));
            if let Some((p, id)) = hit {
                vocab.encode_plain(&text[plain_start..i], &mut out);
                out.push(*id);
                i += p.len();
                plain_start = i;
                continue;
            }
        }
        i += 1;
    }
    vocab.encode_plain(&text[plain_start..], &mut out);
    out
}

pub fn count_tokens(vocab: &BpeVocab, text: &str) -> usize {
    tokenize(vocab, text).len()
}

/// Inverse of [`tokenize`] for byte-level vocabs. Unknown ids are skipped.
pub fn detokenize(vocab: &BpeVocab, ids: &[u32]) -> String {
    let mut bytes = Vec::new();
    for &id in ids {
        let Some(tok) = vocab.token(id) else { continue };
        if (id as usize) >= vocab.base_len {
            bytes.extend_from_slice(tok.as_bytes());
        } else if let Some(b) = decode_symbols(tok) {
            bytes.extend(b);
        } else {
            bytes.extend_from_slice(tok.as_bytes());
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> BpeVocab {
        let tokens = ["a", "b", "ab", "Ġ", "Ġab"].map(String::from).to_vec();
        let merges = [("a", "b"), ("Ġ", "ab")].map(|(a, b)| (a.to_string(), b.to_string()));
        BpeVocab::from_parts("toy", Pretokenizer::Gpt2, tokens, &merges).unwrap()
    }

    #[test]
    fn two_token_vocab_loads() {
        let v = BpeVocab::parse("t", Pretokenizer::Gpt2, r#"{"a": 0, "b": 1}"#, "#version: 0.2\n").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.merge_count(), 0);
        assert!(!v.is_byte_level());
    }

    #[test]
    fn bad_files_are_rejected() {
        let unknown = BpeVocab::parse("t", Pretokenizer::Gpt2, r#"{"a": 0, "b": 1}"#, "a c\n");
        assert!(matches!(unknown, Err(VocabError::Merge { line: 1, .. })));
        let no_result = BpeVocab::parse("t", Pretokenizer::Gpt2, r#"{"a": 0, "b": 1}"#, "a b\n");
        assert!(matches!(no_result, Err(VocabError::Merge { .. })));
        let sparse = BpeVocab::parse("t", Pretokenizer::Gpt2, r#"{"a": 0, "b": 2}"#, "");
        assert!(matches!(sparse, Err(VocabError::SparseIds(1))));
        assert!(BpeVocab::parse("t", Pretokenizer::Gpt2, "[1]", "").is_err());
    }

    #[test]
    fn merges_apply_in_rank_order() {
        let v = toy();
        assert_eq!(tokenize(&v, ""), Vec::<u32>::new());
        assert_eq!(tokenize(&v, "ab"), vec![2]);
        assert_eq!(tokenize(&v, "ab ab"), vec![2, 4]);
        assert_eq!(tokenize(&v, "ba"), vec![1, 0]);
        assert_eq!(tokenize(&v, "c"), vec![UNKNOWN_ID]);
    }

    #[test]
    fn files_round_trip() {
        let v = toy();
        let (json, merges) = v.to_files();
        let back = BpeVocab::parse("toy", Pretokenizer::Gpt2, &json, &merges).unwrap();
        assert_eq!(tokenize(&back, "ab ab ba"), tokenize(&v, "ab ab ba"));
    }

    #[test]
    fn extension_is_atomic_and_prefix_stable() {
        let table = GrammarTokenTable::default_table();
        let v = toy();
        let x = extend_vocab(&v, &table).unwrap();
        assert_eq!(x.len(), v.len() + 78);
        for id in 0..v.len() as u32 {
            assert_eq!(x.token(id), v.token(id));
        }
        let def = x.id("<def_stmt>").unwrap();
        assert_eq!(tokenize(&x, "<def_stmt>"), vec![def]);
        assert!(def as usize >= v.len());
        assert!(matches!(extend_vocab(&x, &table), Err(VocabError::Collision(_))));
        assert_eq!(detokenize(&x, &tokenize(&x, "ab<def_stmt>ab")), "ab<def_stmt>ab");
    }
}
