//! Corpus-level token counts for Python text and its SimPy conversion.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::bpe::{count_tokens, extend_vocab, BpeVocab, VocabError};
use crate::convert::py_to_simpy;
use crate::corpus::{load_sources, CorpusError};
use crate::grammar::GrammarTokenTable;

#[derive(Debug, thiserror::Error)]
pub enum TokenError {
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Clone, Serialize)]
pub struct FileTokens {
    pub file_id: String,
    pub python_tokens: usize,
    pub simpy_tokens: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub vocab: String,
    pub files: usize,
    pub failed: usize,
    pub python_tokens: u64,
    pub simpy_tokens: u64,
    pub reduction_percent: f64,
    pub rows: Vec<FileTokens>,
}

pub fn reduction_percent(python: u64, simpy: u64) -> f64 {
    if python == 0 {
        0.0
    } else {
        100.0 * (1.0 - simpy as f64 / python as f64)
    }
}

/// Python text is counted under `vocab`; its SimPy form under `vocab`
/// extended with the table's placeholders. Failed files are excluded from
/// the sums.
pub fn compare_sources(
    sources: &[(String, String)],
    vocab: &BpeVocab,
    table: &GrammarTokenTable,
) -> Result<ReductionReport, TokenError> {
    let extended = extend_vocab(vocab, table)?;
    let rows: Vec<FileTokens> = sources
        .par_iter()
        .map(|(id, text)| match py_to_simpy(text, table) {
            Ok(simpy) => FileTokens {
                file_id: id.clone(),
                python_tokens: count_tokens(vocab, text),
                simpy_tokens: count_tokens(&extended, &simpy),
                error: None,
            },
            Err(e) => FileTokens {
                file_id: id.clone(),
                python_tokens: 0,
                simpy_tokens: 0,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let ok = rows.iter().filter(|r| r.error.is_none());
    let python_tokens: u64 = ok.clone().map(|r| r.python_tokens as u64).sum();
    let simpy_tokens: u64 = ok.map(|r| r.simpy_tokens as u64).sum();
    Ok(ReductionReport {
        vocab: vocab.name().to_string(),
        files: rows.len(),
        failed: rows.iter().filter(|r| r.error.is_some()).count(),
        python_tokens,
        simpy_tokens,
        reduction_percent: reduction_percent(python_tokens, simpy_tokens),
        rows,
    })
}

pub fn compare_corpus(
    corpus: &Path,
    vocab: &BpeVocab,
    table: &GrammarTokenTable,
) -> Result<ReductionReport, TokenError> {
    compare_sources(&load_sources(corpus)?, vocab, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokens::{train_bpe, Pretokenizer};

    #[test]
    fn pass_shrinks() {
        let v = train_bpe("t", Pretokenizer::Gpt2, &["pass\n"], 10, 1).unwrap();
        let t = GrammarTokenTable::default_table();
        let r = compare_sources(&[("a".into(), "pass\n".into())], &v, &t).unwrap();
        assert_eq!(r.simpy_tokens, 1);
        assert!(r.simpy_tokens <= r.python_tokens);
        let bad = compare_sources(&[("b".into(), "x = = 1\n".into())], &v, &t).unwrap();
        assert_eq!((bad.failed, bad.python_tokens), (1, 0));
        assert_eq!(bad.reduction_percent, 0.0);
    }
}
