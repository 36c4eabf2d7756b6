"""A small program exercising several statements together."""
import sys
from collections import Counter


class Tally:

    def __init__(self, words):
        self.counts = Counter(words)

    def top(self, n=3):
        return [w for w, _ in self.counts.most_common(n)]


def main(argv=None):
    argv = argv or sys.argv[1:]
    tally = Tally(' '.join(argv).split())
    for word in tally.top():
        print(f'{word}: {tally.counts[word]}')
    return 0


if __name__ == '__main__':
    sys.exit(main())
