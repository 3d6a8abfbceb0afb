"""ohzeki_qkp - Sampling-based Lagrangian relaxation for binary optimization.

This package provides QUBO/Ising models, Boltzmann samplers (Metropolis,
simulated quantum annealing, exact enumeration), the multiplier-update solver
for inequality and equality constrained problems, quadratic knapsack tooling
and a benchmark harness.

Dependencies:
    None (package initialization only)
"""

__version__: str = "0.1.0"
