"""
rankpath: exact generating functions for partitions with constrained successive ranks
"""

__version__ = "1.0.0"
