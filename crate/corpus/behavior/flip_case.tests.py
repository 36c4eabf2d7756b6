def test_flip():
    assert flip_case('Hello!') == 'hELLO!'

def test_concat():
    assert concatenate(['x', 'y', 'z']) == 'xyz'

def test_prefix():
    assert filter_by_prefix(['abc', 'bcd', 'cde', 'array'], 'a') == ['abc', 'array']

def test_positive():
    assert get_positive([-1, 2, -4, 5, 6]) == [2, 5, 6]
