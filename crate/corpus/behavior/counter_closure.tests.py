def test_counter():
    c = make_counter(10, step=5)
    c()
    assert c() == 20

def test_tracked():
    before = calls()
    assert add(1) == 6
    assert add(1, 1, c=1) == 3
    assert calls() == before + 2
    assert add.__name__ == 'add'
