def test_triples():
    assert triples_sum_to_zero([1, 3, -2, 1])
    assert not triples_sum_to_zero([1, 2, 3, 7])

def test_race():
    assert car_race_collision(8) == 64

def test_incr():
    assert incr_list([5, 2, 5, 2, 3, 3, 9, 0, 123]) == [6, 3, 6, 3, 4, 4, 10, 1, 124]
