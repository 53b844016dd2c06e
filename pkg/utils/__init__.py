"""
Utils Package - gemeinsame Hilfsfunktionen (Zufallsstrukturen für Stichproben).
"""

from .random_structures import random_family, random_functor, random_groupoid, random_morphism_into

__all__ = [
    "random_family",
    "random_functor",
    "random_groupoid",
    "random_morphism_into",
]
