def test_empty():
    assert make_palindrome('') == ''

def test_cases():
    assert make_palindrome('x') == 'x'
    assert make_palindrome('xyz') == 'xyzyx'
    assert make_palindrome('jerry') == 'jerryrrej'
