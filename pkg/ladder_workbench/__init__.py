"""
Ladder Workbench - numerical workbench for quantum query lower bounds.

Builds the operators, subspaces and bounds of the compressed oracle,
multiplicative (ladder) adversary, polynomial and permutation frameworks on
small explicit instances and checks their identities numerically.
"""

__version__ = "0.1.0"
