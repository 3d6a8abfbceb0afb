"""Slack-variable penalty formulation used for quadratic-term comparisons.

Dependencies:
    None (package initialization only)
"""
