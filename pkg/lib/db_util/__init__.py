from .interval_table import *