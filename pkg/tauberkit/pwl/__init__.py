from .function import *
from .examples import *
from .moduli import *
from .mollified import *

__all__ = [_ for _ in dir() if not _.startswith("_")]
