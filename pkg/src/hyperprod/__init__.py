"""Visibly pushdown product programs for hypersafety verification of recursive programs."""

__version__ = "0.1.0"
