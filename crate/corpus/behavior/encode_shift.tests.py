def test_round_trip():
    for word in ['abc', 'hello', 'zzz']:
        assert decode_shift(encode_shift(word)) == word

def test_vowels():
    assert remove_vowels('abcdef\nghijklm') == 'bcdf\nghjklm'
