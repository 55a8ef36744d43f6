"""Saxl graphs of base-two primitive groups: exact desk-scale computations."""

__version__ = "0.1.0"
