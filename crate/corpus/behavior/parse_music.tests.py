def test_music():
    assert parse_music('o o| .| o| o| .| .| .| .| o o') == [4, 2, 1, 2, 2, 1, 1, 1, 1, 4, 4]

def test_unknown_note():
    parse_music('x')

def test_overlaps():
    assert how_many_times('aaaa', 'aa') == 3
    assert how_many_times('', 'x') == 0
