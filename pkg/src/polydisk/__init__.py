"""Kobayashi geometry of the unit polydisk and boundary behavior of
holomorphic maps: horospheres, Korányi regions, curve classes, Julia
coefficients and Julia-Wolff-Carathéodory limits."""

__version__ = "0.1.0"
