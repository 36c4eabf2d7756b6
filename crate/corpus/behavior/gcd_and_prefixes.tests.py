def test_gcd():
    assert greatest_common_divisor(3, 7) == 1
    assert greatest_common_divisor(49, 14) == 7

def test_prefixes():
    assert all_prefixes('asdfgh') == ['a', 'as', 'asd', 'asdf', 'asdfg', 'asdfgh']

def test_sequence():
    assert string_sequence(3) == '0 1 2 3'
