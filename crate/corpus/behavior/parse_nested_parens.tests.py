def test_mixed():
    assert parse_nested_parens('(()()) ((())) () ((())()())') == [2, 3, 1, 3]

def test_deep():
    assert parse_nested_parens('(((())))') == [4]
