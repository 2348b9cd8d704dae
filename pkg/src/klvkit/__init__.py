"""Exact block combinatorics, duality, and multiplicity matrices for
Langlands-Vogan parameter sets, with genericity certificates for
parabolically induced parameters."""

__version__ = "0.1.0"
