"""Exact and heuristic feedback arc / vertex set solvers."""
