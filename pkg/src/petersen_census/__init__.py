"""Hamiltonian cycle census for generalized Petersen graphs G(n, k), k <= 4,
by transfer over boundary signatures, with exact recurrence mining."""

__version__ = "0.1.0"
