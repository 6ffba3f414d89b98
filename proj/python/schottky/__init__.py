"""Numerical Schottky problem: Fay trisecant solver and Schottky-Igusa form."""

from schottky._schottky import (  # noqa: F401
    SchottkyError,
    check,
    igusa,
    reduce,
    sweep,
    theta,
    zoo,
)

__all__ = ["SchottkyError", "check", "igusa", "reduce", "sweep", "theta", "zoo"]
