def test_prime_fib():
    assert [prime_fib(i) for i in range(1, 8)] == [2, 3, 5, 13, 89, 233, 1597]
