from .constants import *
from .convolution import *
from .report import *

__all__ = [_ for _ in dir() if not _.startswith("_")]
