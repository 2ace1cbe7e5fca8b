"""Exact total nonnegativity tools for periodic matrices and cylindrical networks."""
