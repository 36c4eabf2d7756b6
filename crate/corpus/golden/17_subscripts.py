grid = [[0] * 3 for _ in range(3)]
grid[1][2] = 5
row = grid[-1]
corner = grid[0][0]
view = grid[1:][::-1]
cells = {}
cells[1, 2] = 'x'
del cells[1, 2]
