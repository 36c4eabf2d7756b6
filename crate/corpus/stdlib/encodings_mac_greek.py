import codecs


class StreamWriter(Codec,codecs.StreamWriter):
    pass
