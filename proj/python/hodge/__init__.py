"""Exact linear and Kahler Hodge theory checks."""

import json

from . import _hodge
from ._hodge import LefschetzFailure, ParseError, RingCertificationError, betti_numbers

__all__ = [
    "LefschetzFailure",
    "ParseError",
    "RingCertificationError",
    "betti_numbers",
    "contract",
    "diamond",
    "hodge_decompose",
    "hodge_riemann",
    "hodge_star",
    "kahler_check",
    "lefschetz",
    "primitive_limit",
]


def _dumps(x):
    return x if x is None or isinstance(x, str) else json.dumps(x)


def hodge_star(form, gram=None, orientation=1):
    """Star of a form given as {"dim", "terms": [{"index", "num", "den"}]}."""
    return json.loads(_hodge.hodge_star(_dumps(form), _dumps(gram), orientation))


def kahler_check(n, max_mode=2):
    return json.loads(_hodge.kahler_check(n, max_mode))


def hodge_decompose(form, gram=None):
    """Harmonic, exact and coexact parts of a Fourier form {"m", "modes"}."""
    return json.loads(_hodge.hodge_decompose(_dumps(form), _dumps(gram)))


def diamond(ring, n=None):
    return json.loads(_hodge.diamond(ring, n))


def lefschetz(ring, n=None, omega=None):
    return json.loads(_hodge.lefschetz(ring, n, omega))


def hodge_riemann(ring, l, n=None, omega=None):
    return json.loads(_hodge.hodge_riemann(ring, l, n, omega))


def contract(m, entries):
    return json.loads(_hodge.contract(m, _dumps(entries)))


def primitive_limit(ring="blowup_p2", M="h", L=None, eps=None):
    if eps is not None and not isinstance(eps, str):
        eps = ",".join(str(e) for e in eps)
    return json.loads(_hodge.primitive_limit(ring, M, L, eps))
