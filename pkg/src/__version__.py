"""Version information for the hyperaco package."""

__version__ = "1.0.0"
__description__ = "MMAS* ant colony optimisation for hypergraph edge cover"
