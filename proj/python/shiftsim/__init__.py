"""Exact computation with eventually periodic permutations, shifting maps,
group classes, and Houghton-style representative triples."""

try:
    from ._shiftsim import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _shiftsim import *  # noqa: F401,F403  (build-tree layout)
