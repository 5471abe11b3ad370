"""Based rings over the integers: exact arithmetic, axiom verification,
s-matrices, factor-ring constructions, and the Hadamard pipeline."""

__version__ = "0.1.0"
