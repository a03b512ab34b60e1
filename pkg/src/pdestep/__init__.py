"""pdestep: small-data benchmark for autoregressive surrogates of 2D periodic PDE dynamics."""

__version__ = "0.1.0"
