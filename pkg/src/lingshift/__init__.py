"""Stylometric drift analysis for time-stamped document corpora."""

__version__ = "0.1.0"
