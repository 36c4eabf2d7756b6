name = 'world'
greeting = f'hello {name}!'
padded = f'{name:>10}|{len(name)!r}'
raw = r'\d+\.\d*'
data = b'\x00\xff'
message = 'one' 'two'
doc = """multi
line"""
width = 8
table = f'{3.14159:{width}.2f}'
