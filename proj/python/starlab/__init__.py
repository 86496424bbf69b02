"""Finite rings with involution: construction, classification, unitification checks."""

import json

from ._starlab import StarlabError
from ._starlab import Ring as _Ring
from ._starlab import cli as _cli
from ._starlab import corpus
from ._starlab import unitify as _unitify

__all__ = ["Ring", "StarlabError", "corpus", "run", "unitify"]


class Ring:
    """A finite ring with involution built from an expression such as "M(2,Z(3))".

    Elements are passed as literal strings ("[[0,1],[0,0]]", "(1,0)") and
    returned as decoded JSON values.
    """

    def __init__(self, expr, max_order=10_000):
        self._ring = _Ring(expr, max_order)

    def __repr__(self):
        return f"Ring({self._ring.text()!r})"

    @property
    def order(self):
        return self._ring.order()

    @property
    def characteristic(self):
        return self._ring.characteristic()

    @property
    def unity(self):
        return json.loads(self._ring.unity())

    def rp(self, x):
        return json.loads(self._ring.rp(_literal(x)))

    def lp(self, x):
        return json.loads(self._ring.lp(_literal(x)))

    def cover(self, x):
        return json.loads(self._ring.cover(_literal(x)))

    def projections(self):
        return json.loads(self._ring.projections())

    def check(self, prop):
        return json.loads(self._ring.check(prop))


def unitify(ring, scalars, mode="rickart", max_order=10_000):
    """Report for R + K modulo N; mode is "rickart", "pqbaer" or "none"."""
    return json.loads(_unitify(ring, scalars, mode, max_order))


def run(*args):
    """Runs the command line tool in process; returns (exit code, stdout, stderr)."""
    return _cli([str(a) for a in args])


def _literal(x):
    return x if isinstance(x, str) else json.dumps(x)
