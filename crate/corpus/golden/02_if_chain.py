def classify(n):
    if n < 0:
        return 'negative'
    elif n == 0:
        return 'zero'
    elif 0 < n <= 9:
        return 'digit'
    else:
        return 'large'
