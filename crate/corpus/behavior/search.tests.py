def test_found():
    assert binary_search([1, 3, 5, 7, 9], 7) == 3

def test_missing():
    assert binary_search([1, 3, 5], 4) == -1

def test_duplicate():
    assert first_duplicate([3, 1, 4, 1, 5]) == 1
    assert first_duplicate([1, 2]) is None

def test_chunks():
    assert chunked('abcdefg', 3) == ['abc', 'def', 'g']
