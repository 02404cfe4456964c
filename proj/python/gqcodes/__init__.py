"""Exact code metrics, symmetry certificates and exhaustive searches in the
symplectic quadrangle.

Every function returns plain dicts/lists parsed from the same versioned JSON
documents the ``gq`` command-line tool reads and writes, so results can be
saved to files and fed back to either front end.
"""

import json as _json

from gqcodes._core import (
    CapError,
    Error,
    claim_summary,
    claim_tags,
    divisibility_check,
)
from gqcodes import _core as _c

__version__ = "1.0.0"

__all__ = [
    "CapError",
    "Error",
    "analyze",
    "certify",
    "claim_summary",
    "claim_tags",
    "construct",
    "decide",
    "decide_certificate",
    "divisibility_check",
    "search",
    "verify",
]


def _as_text(code):
    """Accept either a parsed code dict or its JSON text."""
    return code if isinstance(code, str) else _json.dumps(code)


def construct(name, q=2, *, subgroup="", pair_side="points", gram="standard",
              certificate=False, level=1):
    """Build a named code family.

    Returns ``{"code": ..., "report": ...}`` and, when ``certificate=True``,
    a ``"certificate"`` entry replayable with :func:`certify`.
    """
    raw = _c.construct(name, q, subgroup, pair_side, gram, certificate, level, 2)
    out = {key: _json.loads(value) for key, value in raw.items()}
    return out


def analyze(code):
    """Recompute metrics and classification for a stored code."""
    return _json.loads(_c.analyze(_as_text(code), 2))


def decide(code, cap=None):
    """Decide neighbour-transitivity exactly; raises CapError past the cap."""
    if cap is None:
        return _json.loads(_c.decide(_as_text(code)))
    return _json.loads(_c.decide(_as_text(code), cap))


def decide_certificate(code, cap=None, *, level=1):
    """Certificate built from the full stabiliser of a transitive code."""
    if cap is None:
        return _json.loads(_c.decide_certificate(_as_text(code), level=level))
    return _json.loads(_c.decide_certificate(_as_text(code), cap, level))


def certify(code, certificate):
    """Replay a stored certificate; the report carries ``"replay"``."""
    ok, report = _c.certify(_as_text(code), _as_text(certificate), 2)
    parsed = _json.loads(report)
    parsed["replay"] = bool(ok)
    return parsed


def search(q, side, size, *, delta=4, nt=False, maximal=False, workers=1):
    """Isomorph-free enumeration.

    ``size`` is an int or a ``(min, max)`` pair.  Returns
    ``{"classes": [code, ...], "summary": ...}`` with one representative per
    equivalence class.
    """
    if isinstance(size, int):
        size_min = size_max = size
    else:
        size_min, size_max = size
    codes, summary = _c.search(q, side, size_min, size_max, delta, nt, maximal,
                               workers, 2)
    return {
        "classes": [_json.loads(c) for c in codes],
        "summary": _json.loads(summary),
    }


def verify(tags=(), workers=1):
    """Re-derive claims from the catalogue (all of them when tags is empty)."""
    return _json.loads(_c.verify(list(tags), workers, 2))
