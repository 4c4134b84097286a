"""Tile self-assembly models with geometric hindrance and duples."""
from .errors import *
from .model import *
from .dynamics import *

__version__ = "0.1.0"
