"""Python access to the sok library.

Specs and presentations may be given as dicts or JSON strings; results come
back as plain dicts.
"""

import json

from . import _sok
from ._sok import SokError

__all__ = [
    "SokError",
    "abelianize",
    "extension_presentation",
    "fix",
    "lookup",
    "sigma",
    "omega",
    "bounds",
    "rinfty",
    "reidemeister",
    "probe",
    "run",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _load(text):
    return None if text is None else json.loads(text)


def abelianize(presentation):
    return _load(_sok.abelianize(_text(presentation)))


def extension_presentation(spec):
    return _load(_sok.extension_presentation(_text(spec)))


def fix(spec):
    return _load(_sok.fix(_text(spec)))


def lookup(group_id, n=1):
    return _load(_sok.lookup(group_id, n))


def sigma(spec, n=1):
    return _load(_sok.sigma(_text(spec), n))


def omega(spec, n=1):
    return _load(_sok.omega(_text(spec), n))


def bounds(spec, n=1):
    return _load(_sok.bounds(_text(spec), n))


def rinfty(spec, n=1):
    """Certificate dict, or None when no rule applies."""
    return _load(_sok.rinfty(_text(spec), n))


def reidemeister(matrix):
    """R(M) for M in GL(n, Z) acting on Z^n; None means infinite."""
    r = _sok.reidemeister([list(row) for row in matrix])
    return None if r is None else int(r)


def probe(model, chi, radius=6, grid=(0, 1, 2, 3), kind="sigma"):
    return _load(_sok.probe(model, [str(c) for c in chi], radius, [str(s) for s in grid], kind))


def run(*args):
    """Runs a CLI command in-process; returns (exit_code, stdout, stderr)."""
    return _sok.run([str(a) for a in args])
