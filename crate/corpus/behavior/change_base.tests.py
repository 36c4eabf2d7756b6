def test_base():
    assert change_base(8, 3) == "22"
    assert change_base(7, 2) == "111"

def test_area():
    assert triangle_area(5, 3) == 7.5

def test_fib4():
    assert fib4(5) == 4
    assert fib4(10) == 104
