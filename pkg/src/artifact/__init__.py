"""Exact combinatorial models of type-A higher Auslander algebras, their
Fukaya-categorical counterparts (arc and strands models), and the derived
machinery relating them."""

__version__ = "0.1.0"
