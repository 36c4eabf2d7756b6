import _codecs_tw, codecs
import _multibytecodec as mbc


class StreamReader(Codec, mbc.MultibyteStreamReader, codecs.StreamReader):
    codec = codec
