//! Byte-level BPE tokenization and SimPy token-reduction measurement.

mod bpe;
mod bytes;
mod pretok;
mod report;
mod train;

pub use bpe::{
    count_tokens, detokenize, extend_vocab, load_vocab, tokenize, BpeVocab, VocabError, UNKNOWN_ID,
};
pub use pretok::Pretokenizer;
pub use report::{
    compare_corpus, compare_sources, reduction_percent, FileTokens, ReductionReport, TokenError,
};
pub use train::train_bpe;

/// The two vocabs shipped with the crate, trained by `examples/train_bpe.rs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VocabClass {
    /// Trained on prose with the GPT-2 split pattern.
    Web,
    /// Trained on Python source with the cl100k split pattern.
    Code,
}

impl VocabClass {
    pub const ALL: [VocabClass; 2] = [VocabClass::Web, VocabClass::Code];

    pub fn name(self) -> &'static str {
        match self {
            Self::Web => "web",
            Self::Code => "code",
        }
    }
}

impl std::str::FromStr for VocabClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "web" => Ok(Self::Web),
            "code" => Ok(Self::Code),
            other => Err(format!("unknown bundled vocab {other:?} (expected web or code)")),
        }
    }
}

pub fn bundled_vocab(class: VocabClass) -> BpeVocab {
    let (json, merges, pretok) = match class {
        VocabClass::Web => (
            include_str!("../../data/vocab/web/vocab.json"),
            include_str!("../../data/vocab/web/merges.txt"),
            Pretokenizer::Gpt2,
        ),
        VocabClass::Code => (
            include_str!("../../data/vocab/code/vocab.json"),
            include_str!("../../data/vocab/code/merges.txt"),
            Pretokenizer::Cl100k,
        ),
    };
    BpeVocab::parse(class.name(), pretok, json, merges).expect("bundled vocab is valid")
}
