"""Constructions and certificates for unramified cyclic extensions of cyclic number fields."""

__version__ = "0.1.0"
