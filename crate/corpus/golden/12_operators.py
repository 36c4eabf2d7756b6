a = 5
b = a << 2 | a >> 1 & 3 ^ 7
c = -a + +b - ~a
d = a // 3 % 2 @ b if a else b
e = not a and b or c
f = a is not None and b not in [1, 2]
g = 2 ** -1
