"""hkit: exact and numeric checks for the five-dimensional SU(2) monopole
and its hidden-symmetry correspondence with the eight-dimensional oscillator."""

__version__ = "0.1.0"
