"""
Source package for the semigroup pressure estimators.
"""
