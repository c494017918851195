"""
Test package for the semigroup pressure estimators.
"""
