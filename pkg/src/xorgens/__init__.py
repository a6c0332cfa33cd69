"""Generalised xorshift random number generators with periods 2^n - 1."""

__version__ = "0.1.0"
