"""Exact symbolic toolkit for invariant Einstein metrics on homogeneous spaces."""

__version__ = "0.1.0"
