"""Exact p-adic and q-analog arithmetic with certificate-style verification."""

__version__ = "0.1.0"
