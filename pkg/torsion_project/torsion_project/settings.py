"""
Django settings for torsion_project project.

The project has no web surface; Django is used for its management commands,
forms, templates and configuration. Everything a command needs as a default
lives here as a flat constant.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Only used by Django internals (signing); nothing secret is served
SECRET_KEY = 'torsion-project-local-only-key'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'special_functions.apps.SpecialFunctionsConfig',
    'material.apps.MaterialConfig',
    'dispersion.apps.DispersionConfig',
    'sweep.apps.SweepConfig',
    'cli.apps.CliConfig',
    'django_extensions',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Output locations
MEDIA_ROOT = os.path.join(BASE_DIR, 'media')
FIGURES_ROOT = os.path.join(MEDIA_ROOT, 'figures')


# Numerical defaults used by the management commands
#   rho_num of the paper-literal damping formula, and the damping interpretation used when --mode is omitted
DEFAULT_RHO_NUM = 2.15
DEFAULT_DAMPING_MODE = 'paper-literal'
#   upper end of the scan for roots of the frequency equation
DEFAULT_SCAN_MAX = 20.0
#   number of sweep workers; None means one per logical processor (psutil)
SWEEP_JOBS = None


# Logging
#   console gets warnings and errors, log/system.log everything from INFO up
LOG_DIR = os.path.join(BASE_DIR, 'log')
os.makedirs(LOG_DIR, exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'system': {
            'format': '[%(asctime)s] - %(message)s',
        },
        'verbose': {
            'format': '[%(asctime)s] - %(name)s %(levelname)s - %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'system',
            'level': 'WARNING',
        },
        'system_log': {
            'class': 'logging.FileHandler',
            'filename': os.path.join(LOG_DIR, 'system.log'),
            'formatter': 'verbose',
            'level': 'INFO',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console', 'system_log'],
            'level': 'INFO',
            'propagate': False,
        }
        for app in ('special_functions', 'material', 'dispersion', 'sweep', 'cli', 'scripts')
    },
}
