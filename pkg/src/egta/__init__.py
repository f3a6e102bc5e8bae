"""Uniform approximation of simulation-based normal-form games.

Learn every utility of a black-box game to within eps simultaneously, with
variance-adaptive progressive sampling, and read off well-behaved (Lipschitz)
game properties with explicit error bounds.
"""

__version__ = "0.1.0"
