def test_xor():
    assert string_xor('111000', '101010') == '010010'

def test_longest():
    assert longest(['x', 'yyy', 'zzzz', 'www', 'kkkk', 'abc']) == 'zzzz'
    assert longest([]) is None
