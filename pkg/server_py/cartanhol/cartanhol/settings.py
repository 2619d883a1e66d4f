"""
Django settings for the cartanhol project.

The project has no web surface: Django provides configuration, the
management-command CLI and the test runner. Numerical defaults can be
overridden from the environment or from a .env file.
"""

import logging.config
import os
import subprocess
from pathlib import Path

from dotenv import load_dotenv

import cartanhol

load_dotenv(verbose=True)

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent
try:
    cartanhol.__build__ = subprocess.check_output(
        ["git", "describe", "--tags", "--always"], cwd=BASE_DIR, stderr=subprocess.DEVNULL
    ).decode('utf-8').strip()
except Exception:
    cartanhol.__build__ = cartanhol.__version__ + " ?"

SECRET_KEY = os.getenv('SECRET_KEY', 'cartanhol-local-only')

if os.getenv('DJANGO_SETTINGS_MODULE') == "cartanhol.dev":
    DEBUG = True
else:
    DEBUG = False

ALLOWED_HOSTS = ['localhost']

INSTALLED_APPS = [
    'rest_framework',

    'lie',
    'homogeneous',
    'automorphisms',
    'spheres',
    'common',
]

# no models and no database
DATABASES = {}

USE_TZ = True
TIME_ZONE = 'UTC'

# Numerical defaults
CARTANHOL_TOLERANCE = float(os.getenv('CARTANHOL_TOLERANCE', '1e-9'))
# pivots within [tol, factor * tol] are reported as tolerance-ambiguous
CARTANHOL_AMBIGUITY_FACTOR = float(os.getenv('CARTANHOL_AMBIGUITY_FACTOR', '10'))
CARTANHOL_FLOAT_DIGITS = int(os.getenv('CARTANHOL_FLOAT_DIGITS', '12'))

CARTANHOL_LOG_LEVEL = os.getenv('CARTANHOL_LOG_LEVEL', 'WARNING')

logging.config.dictConfig({
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'console': {
            # exact format is not important, this is the minimum information
            'format': '%(asctime)s %(name)-12s %(levelname)-8s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'console',
        },
    },
    'loggers': {
        '': {
            'level': CARTANHOL_LOG_LEVEL,
            'handlers': ['console'],
        },
    },
})
