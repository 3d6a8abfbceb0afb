"""Quadratic knapsack problem tooling.

This package contains instance generation and persistence, the greedy
heuristic, exact oracles (enumeration and branch-and-bound), the relative
error metric and the method dispatcher used by the CLI and the harness.

Dependencies:
    None (package initialization only)
"""
