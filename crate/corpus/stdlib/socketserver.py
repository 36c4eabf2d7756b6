import socket
import selectors
import os
import sys
import threading
from io import BufferedIOBase
from time import monotonic as time


class ThreadingTCPServer(ThreadingMixIn, TCPServer): pass


class ThreadingUDPServer(ThreadingMixIn, UDPServer): pass
