import errno
import re
import socket
import sys


class error_proto(Exception): pass
