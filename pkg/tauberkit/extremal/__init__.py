from .window import *
from .zigzag import *
from .lp import *

__all__ = [_ for _ in dir() if not _.startswith("_")]
