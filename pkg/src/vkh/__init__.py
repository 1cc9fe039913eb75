"""Khovanov homology of virtual links, its doubled variant, and orientation double covers."""

__version__ = "0.1.0"
