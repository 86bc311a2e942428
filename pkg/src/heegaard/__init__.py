"""Combinatorial invariants of decorated Heegaard diagrams."""

from .diagram import BetaEntry, Diagram
from .hdg import format_hdg, parse_hdg
from .invariants import Quantities, quantities

__all__ = ["BetaEntry", "Diagram", "Quantities", "format_hdg", "parse_hdg", "quantities"]
