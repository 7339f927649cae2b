"""Exact tools for radical Sylvester-Gallai configurations of forms."""

__version__ = "0.1.0"
