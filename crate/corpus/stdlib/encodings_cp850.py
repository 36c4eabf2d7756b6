import codecs


class StreamReader(Codec,codecs.StreamReader):
    pass
