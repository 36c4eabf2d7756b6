import collections
import logging
import threading
import time
import types


class Error(Exception):
    """Base class for all future-related exceptions."""
    pass
