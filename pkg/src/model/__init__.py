"""Binary quadratic models and constrained problems.

This package contains the QUBO and Ising representations, energy evaluation,
conversions between them, and the constrained-problem type with its
Lagrangian relaxation.

Dependencies:
    None (package initialization only)
"""
