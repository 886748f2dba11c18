"""Exact-arithmetic tools for stable symmetries of plane sextics and
stable maximal trigonal curves in Hirzebruch surfaces."""

__version__ = "0.1.0"
