import re
import sys
import urllib   # For urllib.parse.unquote
from string import hexdigits
from operator import itemgetter
from email import _encoded_words as _ew
from email import errors
from email import utils


class InvalidParameter(Parameter):

    token_type = 'invalid-parameter'
