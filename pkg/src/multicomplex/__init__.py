"""Multicomplexes, simplicial chain algebra with l1/linf norms, exact
rational seminorm computation, finite group actions with quotients and
averaging, diffusion of finitely supported functions under amenable
actions, and covers with nerves and adapted colorings.

All certified computations use exact arithmetic (int / Fraction); no
floating point enters any value this package reports.
"""

__version__ = "0.1.0"
