"""Exact cluster algebras, tagged skeins and lamination counts on punctured surfaces."""

__version__ = "0.1.0"
