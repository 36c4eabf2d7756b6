def test_groups():
    assert separate_paren_groups('(()()) ((())) () ((())()())') == ['(()())', '((()))', '()', '((())()())']

def test_single():
    assert separate_paren_groups('( ) (( )) (( )( ))') == ['()', '(())', '(()())']
