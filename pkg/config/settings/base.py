# ruff: noqa: ERA001, E501
"""Base settings to build other settings files upon."""

from pathlib import Path

import environ

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent.parent
# ofdma_bench/
APPS_DIR = BASE_DIR / "ofdma_bench"
env = environ.Env()

READ_DOT_ENV_FILE = env.bool("DJANGO_READ_DOT_ENV_FILE", default=True)
if READ_DOT_ENV_FILE:
    # OS environment variables take precedence over variables from .env
    env.read_env(str(BASE_DIR / ".env"))

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = env.bool("DJANGO_DEBUG", False)
TIME_ZONE = "UTC"
# https://docs.djangoproject.com/en/dev/ref/settings/#language-code
LANGUAGE_CODE = "en-us"
# https://docs.djangoproject.com/en/dev/ref/settings/#use-i18n
USE_I18N = False
# https://docs.djangoproject.com/en/dev/ref/settings/#use-tz
USE_TZ = True

# DATABASES
# ------------------------------------------------------------------------------
# The benchmark keeps no state of its own; a database is configured only so
# that Django management commands and pytest-django start cleanly.
DATABASES = {
    "default": env.db(
        "DATABASE_URL",
        default=f"sqlite:///{BASE_DIR / 'ofdma_bench.sqlite3'}",
    ),
}
# https://docs.djangoproject.com/en/stable/ref/settings/#std:setting-DEFAULT_AUTO_FIELD
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# APPS
# ------------------------------------------------------------------------------
DJANGO_APPS = [
    "django.contrib.contenttypes",
]
THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    "ofdma_bench.allocation",
]
# https://docs.djangoproject.com/en/dev/ref/settings/#installed-apps
INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# LOGGING
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#logging
# Console output goes to stderr so command stdout stays reproducible.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(module)s %(process)d %(thread)d %(message)s",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {"level": env("OFDMA_LOG_LEVEL", default="INFO"), "handlers": ["console"]},
}

# OFDMA benchmark configuration
# ------------------------------------------------------------------------------
OFDMA_BENCH_CONFIG = {
    "SWEEP_WORKERS": env.int("OFDMA_SWEEP_WORKERS", default=1),
    "GA_WORKERS": env.int("OFDMA_GA_WORKERS", default=1),
    # OFDMA PHY profile used only to scale normalized capacity for reports.
    "PROFILE": {
        "frame_duration_ms": env.float("OFDMA_FRAME_MS", default=5.0),
        "num_subcarriers_phy": env.int("OFDMA_PHY_SUBCARRIERS", default=2048),
        "bandwidth_mhz": env.float("OFDMA_BANDWIDTH_MHZ", default=20.0),
        "base_frequency_ghz": env.float("OFDMA_BASE_FREQUENCY_GHZ", default=5.8),
        "duplexing": env("OFDMA_DUPLEXING", default="TDD"),
    },
}


# Your stuff...
# ------------------------------------------------------------------------------
