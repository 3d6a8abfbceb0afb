"""Batch benchmark harness: plans, resumable runs and report emission.

Dependencies:
    None (package initialization only)
"""
