import os
import os.path as osp
from collections import OrderedDict, defaultdict as dd
from . import sibling
from ..parent import thing
from json import *
