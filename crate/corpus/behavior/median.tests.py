def test_median():
    assert median([3, 1, 2, 4, 5]) == 3
    assert median([-10, 4, 6, 1000, 10, 20]) == 8.0

def test_palindrome():
    assert is_palindrome('aba')
    assert not is_palindrome('zbcd')

def test_modp():
    assert modp(1101, 101) == 2
