x = 1
y = x + 2 * 3
a = b = [1, 2, 3]
first, *rest = a
total: int = 0
count: int
x += 1
y **= 2
flags = a[1:] + a[:-1] + a[::2]
