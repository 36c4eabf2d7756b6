def test_factorize():
    assert factorize(2) == [2]
    assert factorize(57) == [3, 19]
    assert factorize(3 * 19 * 19 * 19) == [3, 19, 19, 19]

def test_dedupe():
    assert remove_duplicates([1, 2, 3, 2, 4, 3, 5]) == [1, 4, 5]
