"""Enumeration kernels behind the brute-force oracles.

Two interchangeable implementations exist: numba-compiled loops
(:mod:`._jit`) and a vectorised pure-numpy path (:mod:`._vec`).  The jit
path is the default; set ``LOCDOM_DISABLE_NUMBA=1`` to force numpy, e.g.
on platforms without llvmlite.  Both return identical answers, including
which witness is found first.

Subset masks are int64, so the compiled paths handle bit positions below
62; wider instances fall back to plain Python integers.
"""
import itertools
import os

import numpy as np

MAX_BITS = 62


def _want_numba():
    flag = os.environ.get("LOCDOM_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


BACKEND = "numpy"
if _want_numba():
    try:
        from . import _jit as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        from . import _vec as _impl
else:
    from . import _vec as _impl


def get_backend(name):
    """Return the kernel module for ``"numba"`` or ``"numpy"``."""
    if name == "numba":
        from . import _jit

        return _jit
    if name == "numpy":
        from . import _vec

        return _vec
    raise ValueError(f"unknown backend {name!r}")


def _as_arrays(nbr, self_bit, cand):
    return (
        np.asarray(nbr, dtype=np.int64),
        np.asarray(self_bit, dtype=np.int64),
        np.asarray(sorted(cand), dtype=np.int64),
    )


def first_locating_subset(nbr, self_bit, dominate, base, cand, size, backend=None):
    """Lexicographically first ``size``-subset ``C`` of ``cand`` such that
    ``base | C`` locates every entity; returns the mask or -1.

    Entity ``e`` has selectable-neighbourhood mask ``nbr[e]``; if
    ``self_bit[e] >= 0`` the entity is exempt whenever that bit is selected.
    With ``dominate`` every non-exempt entity also needs a non-empty trace.
    """
    nbr, self_bit, cand = list(nbr), list(self_bit), sorted(cand)
    widest = max([base.bit_length()] + [m.bit_length() for m in nbr] + [c + 1 for c in cand])
    if widest > MAX_BITS:
        return _py_first_hit(nbr, self_bit, dominate, base, cand, size)
    impl = _impl if backend is None else get_backend(backend)
    nbr, self_bit, cand = _as_arrays(nbr, self_bit, cand)
    return int(impl.first_hit(nbr, self_bit, bool(dominate), np.int64(base), cand, int(size)))


def _py_first_hit(nbr, self_bit, dominate, base, cand, size):
    for combo in itertools.combinations(cand, size):
        mask = base
        for c in combo:
            mask |= 1 << c
        seen = set()
        for m, b in zip(nbr, self_bit):
            if b >= 0 and mask >> b & 1:
                continue
            sig = mask & m
            if (dominate and not sig) or sig in seen:
                break
            seen.add(sig)
        else:
            return mask
    return -1


def first_satisfying(pos, neg, nvars, backend=None):
    """Smallest assignment (bit i = variable i+1) satisfying every clause, or -1."""
    impl = _impl if backend is None else get_backend(backend)
    return int(impl.first_sat(np.asarray(pos, np.int64), np.asarray(neg, np.int64), int(nvars)))


def count_satisfying(pos, neg, nvars, backend=None):
    impl = _impl if backend is None else get_backend(backend)
    return int(impl.count_sat(np.asarray(pos, np.int64), np.asarray(neg, np.int64), int(nvars)))
