from .errors import *
from .algebra import *
from .moebius import *
from .words import *
from .dynamics import *
from .sync import *
from .relations import *
from .config import *
from .report import *
