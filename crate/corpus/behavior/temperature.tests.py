def test_convert():
    assert convert(212, 'F') == 100.0
    assert convert(0, 'K') == -273.15

def test_convert_all():
    out, events = convert_all([(32, 'F'), (10, 'C')])
    assert out == [0.0, 10]
    assert events == ['enter', 'exit:ok']

def test_swallowed():
    r = Recorder()
    with r:
        {}['missing']
    assert r.events == ['enter', 'exit:KeyError']
