import codecs


class IncrementalEncoder(codecs.IncrementalEncoder):
    def encode(self, input, final=False):
        return codecs.charmap_encode(input,self.errors,encoding_table)[0]


class StreamWriter(Codec,codecs.StreamWriter):
    pass
