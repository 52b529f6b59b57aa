"""Exact construction and verification of (2,6,5,1) resolutions."""

__version__ = "0.1.0"
