import codecs


def decode(input, errors='strict'):
    return codecs.utf_16_be_decode(input, errors, True)
