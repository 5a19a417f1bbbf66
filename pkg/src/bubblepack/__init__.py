"""Tree-packing certificates for the generalized 4-connectivity of bubble-sort networks."""

__version__ = "0.1.0"
