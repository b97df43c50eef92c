"""lieon: exact Lie algebra structures as linear Poisson bivectors."""

__version__ = '0.1.0'
