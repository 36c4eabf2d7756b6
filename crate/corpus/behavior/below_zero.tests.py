def test_never():
    assert below_zero([1, 2, -3, 1, 2, -3]) is False

def test_dips():
    assert below_zero([1, -2, 2]) is True

def test_mad():
    assert abs(mean_absolute_deviation([1.0, 2.0, 3.0, 4.0]) - 1.0) < 1e-6

def test_mad_empty():
    mean_absolute_deviation([])
