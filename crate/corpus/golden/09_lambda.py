key = lambda item: item[1]
adder = lambda a, b=1, *rest, **kw: a + b
ordered = sorted({'b': 2, 'a': 1}.items(), key=lambda kv: -kv[1])
pick = lambda flag: 'yes' if flag else 'no'
