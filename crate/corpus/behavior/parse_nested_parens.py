def parse_nested_parens(paren_string: str):
    def depth_of(group):
        depth = max_depth = 0
        for ch in group:
            if ch == '(':
                depth += 1
                max_depth = max(depth, max_depth)
            else:
                depth -= 1
        return max_depth

    return [depth_of(x) for x in paren_string.split(' ') if x]
