from .constants import *
from .errors import LabError
from .logger import LabLogger, logger
