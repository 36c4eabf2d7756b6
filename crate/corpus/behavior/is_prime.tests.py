def test_primes():
    assert is_prime(101)
    assert is_prime(13441)
    assert not is_prime(6)

def test_one_is_not_prime():
    assert not is_prime(1)

def test_zero():
    assert abs(poly([-6, 11, -6, 1], find_zero([-6, 11, -6, 1]))) < 1e-4
