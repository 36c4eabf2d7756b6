import operator

OPS = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '//': operator.floordiv,
    '%': operator.mod,
    '**': pow,
}


def evaluate(program):
    stack = []
    for token in program.split():
        if token in OPS:
            b, a = stack.pop(), stack.pop()
            stack.append(OPS[token](a, b))
        elif token == 'dup':
            stack.append(stack[-1])
        elif token == 'swap':
            stack[-1], stack[-2] = stack[-2], stack[-1]
        elif token == 'drop':
            del stack[-1]
        else:
            stack.append(int(token))
    assert len(stack) == 1, f"stack not reduced: {stack}"
    return stack[0]
