"""Boltzmann samplers over QUBO models.

This package contains the common sampler interface and three backends:
single-spin-flip Metropolis chains, path-integral simulated quantum annealing
and exhaustive enumeration.

Dependencies:
    None (package initialization only)
"""
