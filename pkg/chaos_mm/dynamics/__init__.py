"""Hamiltonians, integrators, chaos diagnostics, action-angle averaging and ensembles."""
