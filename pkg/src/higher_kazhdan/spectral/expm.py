"""Action of the matrix exponential on vectors by scaled truncated Taylor series."""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

_EPS = 2.0 ** -53


def onenorm(A) -> float:
    if sp.issparse(A):
        return float(abs(A).sum(axis=0).max()) if A.shape[0] else 0.0
    return float(np.abs(A).sum(axis=0).max()) if A.size else 0.0


def expm_action(A, v: np.ndarray, t: float, tol: float = _EPS, max_terms: int = 60) -> np.ndarray:
    """Compute ``exp(-t A) v``.

    The interval ``[0, t]`` is cut into ``s`` steps with ``t ||A - mu||_1 / s <= 1``
    so every step is a rapidly convergent Taylor series; the series is
    summed until two consecutive terms drop below ``tol`` relative to the
    partial sum.  ``mu`` is the mean diagonal, used as a shift when it
    lowers the norm.  ``v`` may hold several columns.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    v = np.array(v, dtype=float, copy=True)
    if t == 0 or not v.any():
        return v
    n = A.shape[0]
    mu = float(A.diagonal().sum()) / n
    shifted = A - mu * sp.identity(n, format="csr") if sp.issparse(A) else A - mu * np.eye(n)
    if onenorm(shifted) < onenorm(A):
        A, norm = shifted, onenorm(shifted)
    else:
        mu, norm = 0.0, onenorm(A)
    steps = max(1, math.ceil(t * norm))
    h = t / steps
    damp = math.exp(-h * mu)
    for _ in range(steps):
        acc = v.copy()
        term = v
        small = 0
        for k in range(1, max_terms + 1):
            term = (-h / k) * (A @ term)
            acc += term
            if np.abs(term).max() <= tol * max(np.abs(acc).max(), 1e-300):
                small += 1
                if small == 2:
                    break
            else:
                small = 0
        else:
            raise FloatingPointError("Taylor series did not converge; check the scaling")
        v = damp * acc
        if not np.isfinite(v).all():
            raise FloatingPointError("overflow in exponential action")
    return v
