import codecs


class IncrementalEncoder(codecs.IncrementalEncoder):
    def encode(self, input, final=False):
        return codecs.utf_32_be_encode(input, self.errors)[0]


class StreamWriter(codecs.StreamWriter):
    encode = codecs.utf_32_be_encode
