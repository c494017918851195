"""
Unit tests for the semigroup pressure estimators.
"""
