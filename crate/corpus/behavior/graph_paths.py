from collections import deque


def bfs(graph, start, goal):
    queue = deque([[start]])
    visited = {start}
    while queue:
        path = queue.popleft()
        node = path[-1]
        if node == goal:
            return path
        for nxt in sorted(graph.get(node, ())):
            if nxt not in visited:
                visited.add(nxt)
                queue.append(path + [nxt])
    return None


def topo_sort(deps):
    order, state = [], {}

    def visit(n):
        if state.get(n) == 'done':
            return
        if state.get(n) == 'active':
            raise ValueError(f'cycle at {n}')
        state[n] = 'active'
        for m in sorted(deps.get(n, [])):
            visit(m)
        state[n] = 'done'
        order.append(n)

    for n in sorted(deps):
        visit(n)
    return order
