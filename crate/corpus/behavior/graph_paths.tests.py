G = {'a': ['b', 'c'], 'b': ['d'], 'c': ['d', 'e'], 'd': ['f'], 'e': ['f']}

def test_bfs():
    assert bfs(G, 'a', 'f') == ['a', 'b', 'd', 'f']
    assert bfs(G, 'f', 'a') is None

def test_topo():
    assert topo_sort({'x': ['y'], 'y': ['z'], 'z': []}) == ['z', 'y', 'x']

def test_cycle():
    topo_sort({'p': ['q'], 'q': ['p']})
