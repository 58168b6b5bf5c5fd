"""Exact valuation bounds for finite simple groups, c_p invariants, and affine orbital diameters."""

__version__ = "0.1.0"
