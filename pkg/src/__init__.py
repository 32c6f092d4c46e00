"""
Restricted partitions - exact counts, asymptotic constants and saddle-point numerics
"""

__version__ = "1.0.0"
