def test_wrap():
    assert wrap('the quick brown fox jumps over the lazy dog', 10) == ['the quick', 'brown fox', 'jumps over', 'the lazy', 'dog']

def test_justify():
    assert justify('a bb c', 10) == 'a   bb   c'
    assert justify('solo', 6) == 'solo  '
