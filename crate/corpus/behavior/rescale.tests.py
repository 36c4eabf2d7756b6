def test_rescale():
    assert rescale_to_unit([2.0, 49.9]) == [0.0, 1.0]
    assert rescale_to_unit([1.0, 2.0, 3.0, 4.0, 5.0]) == [0.0, 0.25, 0.5, 0.75, 1.0]

def test_rescale_constant():
    rescale_to_unit([3.0, 3.0])

def test_filter():
    assert filter_integers([4, {}, [], 23.2, 9, 'adasd', True]) == [4, 9]
