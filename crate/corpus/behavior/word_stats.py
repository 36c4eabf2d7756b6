import re
from collections import Counter, defaultdict

WORD = re.compile(r"[a-z']+")


def tokenize(text):
    return WORD.findall(text.lower())


def stats(text, *, top=3):
    words = tokenize(text)
    counts = Counter(words)
    by_len = defaultdict(set)
    for w in words:
        by_len[len(w)].add(w)
    return {
        'total': len(words),
        'distinct': len(counts),
        'top': [w for w, _ in counts.most_common(top)],
        'longest': max(by_len) if by_len else 0,
        'lengths': {k: sorted(v) for k, v in by_len.items() if len(v) > 1},
    }
