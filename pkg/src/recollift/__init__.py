"""Gorenstein approximations and recollement lifting checks over finite-dimensional algebras."""

__version__ = "0.1.0"
