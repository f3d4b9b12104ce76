"""Proportional-rate OFDMA power allocation benchmark."""

__version__ = "0.1.0"
