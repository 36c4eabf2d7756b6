def make():
    inv = Inventory()
    inv.add(Item(2.5, 'pen', ['office']), Item(1.25, 'clip', ['office', 'metal']), Item(9.99, 'lamp'))
    return inv

def test_cheapest():
    assert make().cheapest(2) == ['clip', 'pen']

def test_tags():
    assert make().tagged('office') == {'pen', 'clip'}

def test_total_and_len():
    inv = make()
    assert inv.total() == 13.74
    assert len(inv) == 3 and 'lamp' in inv and 'sofa' not in inv
