"""
With these settings, tests run faster.
"""

from .base import *  # noqa: F403
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="rXh3Yq0Jc8bOw1sTnE5kZ2vLpF9uGm4dQa7iHy6xVeBjNoKsWtRlPzCfUgDhMiA",
)
# https://docs.djangoproject.com/en/dev/ref/settings/#test-runner
TEST_RUNNER = "django.test.runner.DiscoverRunner"

# DATABASES
# ------------------------------------------------------------------------------
DATABASES = {"default": {"ENGINE": "django.db.backends.sqlite3", "NAME": ":memory:"}}

# OFDMA benchmark configuration
# ------------------------------------------------------------------------------
# Tests always run solvers in-process.
OFDMA_BENCH_CONFIG = {  # noqa: F405
    **OFDMA_BENCH_CONFIG,  # noqa: F405
    "SWEEP_WORKERS": 1,
    "GA_WORKERS": 1,
}
# Your stuff...
# ------------------------------------------------------------------------------
