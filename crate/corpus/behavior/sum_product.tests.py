def test_empty():
    assert sum_product([]) == (0, 1)

def test_values():
    assert sum_product([3, 5, 7]) == (15, 105)

def test_rolling():
    assert rolling_max([1, 2, 3, 2, 3, 4, 2]) == [1, 2, 3, 3, 3, 4, 4]
