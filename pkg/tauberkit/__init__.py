__version__ = '0.1.0'

from . import bounds
from . import extremal
from . import kernels
from . import pwl

from .bounds import *
from .extremal import *
from .kernels import *
from .pwl import *

from .config import *
from .laplace import *
from .quadrature import *
from .utils import *
from .verify import *
