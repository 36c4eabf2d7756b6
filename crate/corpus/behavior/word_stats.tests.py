TEXT = "The cat and the hat. The bat can't sit; the cat can."

def test_counts():
    s = stats(TEXT)
    assert s['total'] == 12
    assert s['top'][0] == 'the'

def test_lengths():
    s = stats(TEXT, top=1)
    assert s['lengths'][3] == ['and', 'bat', 'can', 'cat', 'hat', 'sit', 'the']
    assert s['longest'] == 5

def test_empty():
    assert stats('')['longest'] == 0
