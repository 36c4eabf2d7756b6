def triples_sum_to_zero(l: list):
    for i in range(len(l)):
        for j in range(i + 1, len(l)):
            for k in range(j + 1, len(l)):
                if l[i] + l[j] + l[k] == 0:
                    return True
    return False


def car_race_collision(n: int):
    return n ** 2


def incr_list(l: list):
    return [(e + 1) for e in l]
