import codecs


class StreamWriter(Codec,codecs.StreamWriter):
    pass


class StreamReader(Codec,codecs.StreamReader):
    pass
