"""Pseudo-random graph geometry."""
