from .base import *  # noqa: F403
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = True
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="Jt4nV8cQw2LmZx6PbR0sKd9YfHa3GuE7oWiMyTlSpBvNjXqCe1rAhUzDgFk5OIs",
)

# Your stuff...
# ------------------------------------------------------------------------------
