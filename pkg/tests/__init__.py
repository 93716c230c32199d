"""
Test suite for symreg - regularity of symbolic powers of square-free monomial ideals.
"""
