"""Exact decision procedure for Sasakian structures on nilmanifolds."""

__version__ = "0.1.0"
