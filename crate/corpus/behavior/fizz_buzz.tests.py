def test_fizz():
    assert fizz_buzz(50) == 0
    assert fizz_buzz(78) == 2
    assert fizz_buzz(79) == 3

def test_sort_even():
    assert sort_even([5, 6, 3, 4]) == [3, 6, 5, 4]
