"""Cellular resolutions and Betti numbers for powers of path edge ideals."""
