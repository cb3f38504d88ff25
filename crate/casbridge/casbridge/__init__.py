"""Representation data extraction for swc."""

from .document import canonicalize, dump, validate

__all__ = ["canonicalize", "dump", "validate"]
