import logging

from .settings import *

DEBUG = True

CARTANHOL_LOG_LEVEL = 'DEBUG'
logging.getLogger().setLevel(CARTANHOL_LOG_LEVEL)
