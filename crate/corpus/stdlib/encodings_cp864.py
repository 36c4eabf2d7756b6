import codecs


class IncrementalEncoder(codecs.IncrementalEncoder):
    def encode(self, input, final=False):
        return codecs.charmap_encode(input,self.errors,encoding_map)[0]


class StreamReader(Codec,codecs.StreamReader):
    pass
