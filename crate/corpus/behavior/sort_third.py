def sort_third(l: list):
    l = list(l)
    l[::3] = sorted(l[::3])
    return l


def unique(l: list):
    return sorted(list(set(l)))


def max_element(l: list):
    m = l[0]
    for e in l:
        if e > m:
            m = e
    return m
