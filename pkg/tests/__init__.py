"""Test suite for ohzeki_qkp.

Dependencies:
    - pytest: Testing framework
"""
