"""Reference tokenizations for the Rust BPE tests.

    bpe.py split PATTERN FILE...          -> JSON list of piece lists
    bpe.py encode PATTERN VOCAB_JSON FILE... -> JSON list of id lists

PATTERN is gpt2 or cl100k. Splitting uses the `regex` module; encoding
uses tiktoken with ranks taken from the vocab ids.
"""
import json
import sys

import regex

PATTERNS = {
    "gpt2": r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+""",
    "cl100k": r"""(?i:'s|'t|'re|'ve|'m|'ll|'d)|[^\r\n\p{L}\p{N}]?\p{L}+|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n]*|\s*[\r\n]+|\s+(?!\S)|\s+""",
}


def byte_decoder():
    bs = list(range(ord("!"), ord("~") + 1)) + list(range(ord("¡"), ord("¬") + 1)) + list(range(ord("®"), ord("ÿ") + 1))
    cs = bs[:]
    n = 0
    for b in range(256):
        if b not in bs:
            bs.append(b)
            cs.append(256 + n)
            n += 1
    return {chr(c): b for b, c in zip(bs, cs)}


def read(path):
    with open(path, encoding="utf-8", newline="") as f:
        return f.read()


def main():
    mode, pattern = sys.argv[1], sys.argv[2]
    if mode == "split":
        rx = regex.compile(PATTERNS[pattern])
        print(json.dumps([rx.findall(read(p)) for p in sys.argv[3:]]))
        return
    import tiktoken

    dec = byte_decoder()
    with open(sys.argv[3], encoding="utf-8") as f:
        vocab = json.load(f)
    ranks = {bytes(dec[c] for c in tok): i for tok, i in vocab.items()}
    enc = tiktoken.Encoding("oracle", pat_str=PATTERNS[pattern], mergeable_ranks=ranks, special_tokens={})
    print(json.dumps([enc.encode_ordinary(read(p)) for p in sys.argv[4:]]))


if __name__ == "__main__":
    main()
