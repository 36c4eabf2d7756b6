def check(value):
    assert value is not None, 'value required'
    assert isinstance(value, int)
    if value < 0:
        raise ValueError('negative')
    raise
