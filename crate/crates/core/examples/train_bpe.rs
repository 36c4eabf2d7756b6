//! Trains the bundled vocabs.
//!
//!     cargo run --release -p simpy-core --example train_bpe -- data/train crates/core/data/vocab [MERGES]

use std::path::PathBuf;

use simpy_core::tokens::{train_bpe, Pretokenizer};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 2 {
        eprintln!("usage: train_bpe TRAIN_DIR OUT_DIR [MERGES]");
        std::process::exit(2);
    }
    let (train, out) = (PathBuf::from(&args[0]), PathBuf::from(&args[1]));
    let merges: usize = args
        .get(2)
        .map_or(8000, |m| m.parse().expect("MERGES is a number"));
    for (class, file, pretok) in [
        ("web", "web.txt", Pretokenizer::Gpt2),
        ("code", "code.txt", Pretokenizer::Cl100k),
    ] {
        let text = std::fs::read_to_string(train.join(file)).expect("training text");
        let started = std::time::Instant::now();
        let vocab = train_bpe(class, pretok, &[&text], merges, 2).expect("valid vocab");
        let (json, merges_txt) = vocab.to_files();
        let dir = out.join(class);
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("vocab.json"), json).unwrap();
        std::fs::write(dir.join("merges.txt"), merges_txt).unwrap();
        println!(
            "{class}: {} tokens, {} merges, {:.1}s",
            vocab.len(),
            vocab.merge_count(),
            started.elapsed().as_secs_f64()
        );
    }
}
