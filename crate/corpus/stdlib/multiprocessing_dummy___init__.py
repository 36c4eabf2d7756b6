import threading
import sys
import weakref
import array
from .connection import Pipe
from threading import Lock, RLock, Semaphore, BoundedSemaphore
from threading import Event, Condition, Barrier
from queue import Queue


def Manager():
    return sys.modules[__name__]


def Array(typecode, sequence, lock=True):
    return array.array(typecode, sequence)
