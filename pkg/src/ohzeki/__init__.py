"""Sampling-based Lagrangian relaxation solver.

This package contains the projected subgradient ascent on the Lagrangian
dual, driven by expectation values estimated from Boltzmann samples, and
the KKT diagnostics evaluated at termination.

Dependencies:
    None (package initialization only)
"""
