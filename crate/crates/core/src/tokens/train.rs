//! BPE training: repeatedly merge the most frequent adjacent symbol pair.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::bpe::{BpeVocab, VocabError};
use super::bytes::{base_order, encode_bytes};
use super::pretok::Pretokenizer;

type Pair = (u32, u32);

fn pairs(word: &[u32]) -> impl Iterator<Item = Pair> + '_ {
    word.windows(2).map(|w| (w[0], w[1]))
}

/// Learns up to `merges` rules from `texts`. Pairs seen fewer than
/// `min_count` times are never merged. Ties go to the smaller id pair.
pub fn train_bpe(
    name: &str,
    pretokenizer: Pretokenizer,
    texts: &[&str],
    merges: usize,
    min_count: u64,
) -> Result<BpeVocab, VocabError> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for text in texts {
        for piece in pretokenizer.split(text) {
            *counts.entry(encode_bytes(piece)).or_default() += 1;
        }
    }
    let mut vocab_words: Vec<(String, u64)> = counts.into_iter().collect();
    vocab_words.sort();

    let mut tokens: Vec<String> = base_order().iter().map(|&b| encode_bytes_one(b)).collect();
    let mut ids: HashMap<String, u32> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();
    let mut words: Vec<Vec<u32>> = vocab_words
        .iter()
        .map(|(w, _)| w.chars().map(|c| ids[&c.to_string()]).collect())
        .collect();
    let freq: Vec<i64> = vocab_words.iter().map(|(_, c)| *c as i64).collect();

    let mut pair_count: HashMap<Pair, i64> = HashMap::new();
    let mut pair_words: HashMap<Pair, Vec<usize>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        for p in pairs(w) {
            *pair_count.entry(p).or_default() += freq[i];
            pair_words.entry(p).or_default().push(i);
        }
    }
    let mut heap: BinaryHeap<(i64, Reverse<Pair>)> =
        pair_count.iter().map(|(&p, &c)| (c, Reverse(p))).collect();

    let mut rules: Vec<(String, String)> = Vec::new();
    let mut stamp = vec![usize::MAX; words.len()];
    while rules.len() < merges {
        let Some((c, Reverse(pair))) = heap.pop() else {
            break;
        };
        if pair_count.get(&pair).copied().unwrap_or(0) != c {
            continue;
        }
        if c < min_count as i64 {
            break;
        }
        let (a, b) = pair;
        let merged_text = format!("{}{}", tokens[a as usize], tokens[b as usize]);
        let merged = *ids.entry(merged_text.clone()).or_insert_with(|| {
            tokens.push(merged_text);
            tokens.len() as u32 - 1
        });
        rules.push((tokens[a as usize].clone(), tokens[b as usize].clone()));

        let mut changed: HashSet<Pair> = HashSet::new();
        let round = rules.len();
        for wi in pair_words.remove(&pair).unwrap_or_default() {
            if stamp[wi] == round {
                continue;
            }
            stamp[wi] = round;
            let word = &words[wi];
            if !pairs(word).any(|p| p == pair) {
                continue;
            }
            for p in pairs(word) {
                *pair_count.get_mut(&p).expect("counted") -= freq[wi];
                changed.insert(p);
            }
            let mut next = Vec::with_capacity(word.len());
            let mut i = 0;
            while i < word.len() {
                if i + 1 < word.len() && word[i] == a && word[i + 1] == b {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(word[i]);
                    i += 1;
                }
            }
            for p in pairs(&next) {
                *pair_count.entry(p).or_default() += freq[wi];
                pair_words.entry(p).or_default().push(wi);
                changed.insert(p);
            }
            words[wi] = next;
        }
        let mut changed: Vec<Pair> = changed.into_iter().collect();
        changed.sort();
        for p in changed {
            let c = pair_count[&p];
            if c > 0 && p != pair {
                heap.push((c, Reverse(p)));
            }
        }
    }
    BpeVocab::from_parts(name, pretokenizer, tokens, &rules)
}

fn encode_bytes_one(b: u8) -> String {
    super::bytes::byte_char(b).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokens::{count_tokens, detokenize, tokenize};

    #[test]
    fn learns_frequent_words() {
        let text = "the cat the hat the bat ".repeat(50);
        let v = train_bpe("t", Pretokenizer::Gpt2, &[&text], 20, 2).unwrap();
        assert!(v.is_byte_level());
        assert_eq!(v.len(), 256 + v.merge_count());
        assert_eq!(count_tokens(&v, " the"), 1);
        assert_eq!(detokenize(&v, &tokenize(&v, "the zebra")), "the zebra");
        assert!(v.id("Ġthe").is_some());
    }

    #[test]
    fn training_is_deterministic() {
        let text = "def f(x):\n    return x + 1\n".repeat(20);
        let a = train_bpe("t", Pretokenizer::Cl100k, &[&text], 30, 2).unwrap();
        let b = train_bpe("t", Pretokenizer::Cl100k, &[&text], 30, 2).unwrap();
        assert_eq!(a.to_files(), b.to_files());
    }

    #[test]
    fn stops_below_min_count() {
        let v = train_bpe("t", Pretokenizer::Gpt2, &["abc"], 100, 2).unwrap();
        assert_eq!(v.merge_count(), 0);
    }
}
