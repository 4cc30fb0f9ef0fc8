"""Process execution graphs for wet-lab protocols."""

__version__ = "0.1.0"
