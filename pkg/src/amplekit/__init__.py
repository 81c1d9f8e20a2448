"""Simplicial complex toolkit for conicity, ampleness, starrings and connectivity certificates."""
