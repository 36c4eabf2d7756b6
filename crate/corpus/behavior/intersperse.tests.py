def test_empty():
    assert intersperse([], 7) == []

def test_values():
    assert intersperse([5, 6, 3, 2], 8) == [5, 8, 6, 8, 3, 8, 2]

def test_repeat():
    assert intersperse([2, 2, 2], 2) == [2, 2, 2, 2, 2]
