"""Exact-arithmetic tools for degenerations of polarized Hodge structures."""

__version__ = "0.1.0"
