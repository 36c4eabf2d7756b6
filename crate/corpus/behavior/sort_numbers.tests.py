def test_sort():
    assert sort_numbers('three one five') == 'one three five'
    assert sort_numbers('') == ''

def test_closest():
    assert find_closest_elements([1.0, 2.0, 3.9, 4.0, 5.0, 2.2]) == (3.9, 4.0)
