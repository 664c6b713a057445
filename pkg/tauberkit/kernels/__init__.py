from .band_limited import *
from .extremum import *

__all__ = [_ for _ in dir() if not _.startswith("_")]
