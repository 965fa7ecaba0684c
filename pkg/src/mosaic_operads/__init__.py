"""Exact combinatorial models: braid cabling, associahedra, and the mosaic
cell complex of the real moduli space of stable rational curves."""

__version__ = "0.1.0"
