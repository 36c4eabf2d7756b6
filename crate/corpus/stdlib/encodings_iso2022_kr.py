import _codecs_iso2022, codecs
import _multibytecodec as mbc


class StreamReader(Codec, mbc.MultibyteStreamReader, codecs.StreamReader):
    codec = codec
