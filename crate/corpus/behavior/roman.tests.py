def test_to_roman():
    assert to_roman(1994) == 'MCMXCIV'
    assert to_roman(3999) == 'MMMCMXCIX'

def test_range():
    to_roman(0)

def test_from_roman_simple():
    assert from_roman('MDCLXVI') == 1666

def test_from_roman_subtractive():
    assert from_roman('IV') == 4
