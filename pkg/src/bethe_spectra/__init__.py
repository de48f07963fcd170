"""Exact spectra of line graphs of generalized Bethe trees."""

__version__ = "0.1.0"
