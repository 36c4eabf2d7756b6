counter = 0


def bump():
    global counter
    counter += 1

    def inner():
        nonlocal_value = counter
        return nonlocal_value
    return inner()


def outer():
    x = 0

    def inc():
        nonlocal x
        x += 1
    inc()
    del x
