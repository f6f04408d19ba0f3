"""Exact subnormality certificates for quotients of torus-invariant
Hilbert modules.

All values travel as exact rational strings ("p/q") or JSON reports; no
floating point is involved anywhere on the certificate path.
"""

from ._qml import *  # noqa: F401,F403

__version__ = "0.1.0"
