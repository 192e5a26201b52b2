"""Exact symbolic and numerical toolkit for quantum-reference-frame algebra."""

__version__ = "0.1.0"
