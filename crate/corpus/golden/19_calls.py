print('a', 'b', sep='-', end='\n')
result = max(range(10), key=lambda n: n % 3)
chained = ' '.join(str(n) for n in range(3)).upper().split()
method = 'abc'.replace('a', 'z')
