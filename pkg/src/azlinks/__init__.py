"""Exact tame-symbol computations on character varieties of arithmetic 2-bridge links."""

__version__ = "0.1.0"
