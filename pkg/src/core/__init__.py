"""Core modules for errors, validation, resources, seeds and settings.

This package contains cross-cutting functionality: exception definitions,
input validation, memory/time guards, deterministic seed derivation,
configuration-file loading and JSON persistence.

Dependencies:
    None (package initialization only)
"""
