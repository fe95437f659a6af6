"""Signed Engel expansions and the statistics of their digits."""
