def test_transpose():
    assert transpose([[1, 2, 3], [4, 5, 6]]) == [[1, 4], [2, 5], [3, 6]]

def test_fib_power():
    assert power([[1, 1], [1, 0]], 10)[0][1] == 55

def test_identity():
    assert power([[2, 0], [0, 2]], 0) == identity(2)
