"""Exact-rational engine for the BV variational bicomplex."""
