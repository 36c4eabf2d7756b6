# leading comment
import sys  # trailing comment


def main(argv):
    # inside a body
    if not argv:  # nothing to do
        return 1
    # before return
    return 0
# at the end
