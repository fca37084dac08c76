"""
Django settings for the eqlc project.

The project carries no database, views or templates; Django provides the
settings layer, logging configuration, management commands and the test
runner for the ``selc`` engine app.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path

from dotenv import load_dotenv
import os

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'eqlc-local-engine')

DEBUG = os.getenv('DEBUG', '0') == '1'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'selc',
]

DATABASES = {}

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Engine configuration
# Every value can be set in the environment or in a .env file next to manage.py.

# Root of the persistent cache (character tables, conf decompositions, generator modules).
EQLC_CACHE_DIR = Path(os.getenv('EQLC_CACHE_DIR', BASE_DIR / '.eqlc-cache'))

# Largest basis c(n, n-i) the straightening oracle will trace.
EQLC_ORACLE_BUDGET = int(os.getenv('EQLC_ORACLE_BUDGET', '300000'))

# Degrees above the vanishing bound that h_zero re-checks.
EQLC_CONSISTENCY_SLACK = int(os.getenv('EQLC_CONSISTENCY_SLACK', '1'))

# Grid on which the plethystic tier is calibrated against the oracle.
EQLC_CALIBRATION_MAX_DEGREE = int(os.getenv('EQLC_CALIBRATION_MAX_DEGREE', '3'))
EQLC_CALIBRATION_MAX_POINTS = int(os.getenv('EQLC_CALIBRATION_MAX_POINTS', '8'))

# Default worker count for `verify`.
EQLC_JOBS = int(os.getenv('EQLC_JOBS', '1'))

EQLC_LOG_LEVEL = os.getenv('EQLC_LOG_LEVEL', 'INFO')


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'engine': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'engine',
        },
    },
    'loggers': {
        'selc': {
            'handlers': ['console'],
            'level': EQLC_LOG_LEVEL,
            'propagate': False,
        },
    },
}
