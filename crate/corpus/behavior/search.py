def binary_search(items, target):
    lo, hi = 0, len(items) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if items[mid] == target:
            return mid
        elif items[mid] < target:
            lo = mid + 1
        else:
            hi = mid - 1
    else:
        return -1


def first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            break
        seen.add(x)
    else:
        return None
    return x


def chunked(seq, n):
    return [seq[i:i + n] for i in range(0, len(seq), n)]
