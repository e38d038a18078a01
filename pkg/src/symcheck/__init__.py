"""Exact verification of nilpotent-orbit criteria for symmetric pairs.

Arithmetic is over Q(i) throughout; nothing is floating point.
"""

__version__ = "0.1.0"
