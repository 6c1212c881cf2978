"""Exact computational algebra for tight orders on finite semilattices,
finite inverse semigroups, their tight groupoids, and tight envelopes.

Everything here is exact and deterministic: structures are finite tables,
all decision procedures are enumerative, and no floating point is involved.
"""

__version__ = "0.1.0"
