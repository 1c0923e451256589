"""Exact computations in the virtual braid groups VB_n = KB_n x| S_n."""

__version__ = "0.1.0"
