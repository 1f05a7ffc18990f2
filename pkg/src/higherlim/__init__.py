"""Higher limits over orbit categories of finite groups, with Lambda functors,
inverse-system towers and E_2 pages of the associated spectral sequences."""

__version__ = "0.1.0"
