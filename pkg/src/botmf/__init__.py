"""Exact module-level computations behind the splitting of bo smash tmf."""

__version__ = "0.1.0"
