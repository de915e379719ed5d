"""Floating-point cross-check for word equality via the reflection representation.

Each generator acts on the vector space spanned by the generators through the
bilinear form B(e_s, e_t) = -cos(pi / m(s, t)), with the convention -1 for an
infinite label.  The representation is faithful, so two words multiply to the
same matrix exactly when they are equal in the group; this gives an oracle
for the exact word engine that is independent of braid rewriting.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import CoxError
from .matrix import INFINITY, CoxeterMatrix, Gen

DEFAULT_GEOMETRIC_CAP = 128
TOLERANCE = 1e-9

_forms: dict[CoxeterMatrix, tuple[np.ndarray, list[np.ndarray]]] = {}


def _reflections(mat: CoxeterMatrix) -> tuple[np.ndarray, list[np.ndarray]]:
    cached = _forms.get(mat)
    if cached is not None:
        return cached
    n = len(mat.generators)
    form = np.empty((n, n))
    for i, s in enumerate(mat.generators):
        for j, t in enumerate(mat.generators):
            value = mat.m(s, t)
            form[i, j] = -1.0 if value == INFINITY else -math.cos(math.pi / value)
    mats = []
    for i in range(n):
        refl = np.eye(n)
        refl[i, :] -= 2.0 * form[i, :]
        mats.append(refl)
    _forms[mat] = (form, mats)
    return form, mats


def word_matrix(mat: CoxeterMatrix, word: Iterable[Gen]) -> np.ndarray:
    _, mats = _reflections(mat)
    out = np.eye(len(mat.generators))
    for g in word:
        out = out @ mats[mat.index(g)]
    return out


def geometric_check(mat: CoxeterMatrix, u: Iterable[Gen], v: Iterable[Gen],
                    cap: int = DEFAULT_GEOMETRIC_CAP, tolerance: float = TOLERANCE) -> bool:
    """Whether the reflection matrices of two words agree entrywise."""
    u = tuple(u)
    v = tuple(v)
    for word in (u, v):
        if len(word) > cap:
            raise CoxError("WORD_TOO_LONG", f"word of length {len(word)} exceeds cap {cap}")
    return bool(np.max(np.abs(word_matrix(mat, u) - word_matrix(mat, v))) <= tolerance)
