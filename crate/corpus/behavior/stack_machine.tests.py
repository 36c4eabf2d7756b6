def test_arith():
    assert evaluate('3 4 + 2 *') == 14

def test_words():
    assert evaluate('2 dup * 3 swap - 7 drop') == -1

def test_power():
    assert evaluate('2 10 **') == 1024

def test_unreduced():
    evaluate('1 2')
