def scan(items, target):
    for i, item in enumerate(items):
        if item == target:
            break
    else:
        i = -1
    while i > 0:
        i -= 1
        if i % 2:
            continue
    return i
