"""Expander graphs, concentrator networks, Cayley families, Hurwitz quaternions and a free-group certifier."""

__version__ = "0.1.0"
