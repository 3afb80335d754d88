"""Schmidt game engine and analysis toolkit.

Exact-rational implementation of the (alpha, beta)-game with constructive
avoidance strategies, matrix-sequence lacunarity certification, fractal
supports, and badly-approximable-form checks.
"""

__version__ = "0.1.0"
