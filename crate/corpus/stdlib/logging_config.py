import errno
import io
import logging
import logging.handlers
import re
import struct
import sys
import threading
import traceback
from socketserver import ThreadingTCPServer, StreamRequestHandler


def _strip_spaces(alist):
    return map(str.strip, alist)


def _clearExistingHandlers():
    """Clear and close existing handlers"""
    logging._handlers.clear()
    logging.shutdown(logging._handlerList[:])
    del logging._handlerList[:]
