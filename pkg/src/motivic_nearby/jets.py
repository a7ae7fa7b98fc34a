"""Brute-force point counts of jet spaces over F_q, used as an oracle for zeta coefficients.

Arcs are truncated to (F_q[t]/t^{level+1})^d and enumerated in numpy
chunks; the polynomial is evaluated by truncated power-series products.
"""
from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .errors import GuardExceeded
from .poly import SparsePoly

ENUMERATION_LIMIT = 10**8
CHUNK = 1 << 17


def _check_guard(q: int, d: int, level: int) -> None:
    size = q ** (d * (level + 1))
    if size > ENUMERATION_LIMIT:
        raise GuardExceeded(f"enumeration of {q}^{d * (level + 1)} arcs exceeds the limit {ENUMERATION_LIMIT}")


def _arc_chunks(d: int, level: int, q: int) -> Iterator[np.ndarray]:
    """Yield arrays of shape (batch, d, level + 1) covering all truncated arcs."""
    digits = d * (level + 1)
    total = q**digits
    place = q ** np.arange(digits, dtype=np.int64)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        coeffs = (idx[:, None] // place[None, :]) % q
        yield coeffs.reshape(-1, d, level + 1)


def _truncated_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    width = a.shape[1]
    out = np.zeros_like(a)
    for m in range(width):
        acc = np.zeros(a.shape[0], dtype=np.int64)
        for i in range(m + 1):
            acc += a[:, i] * b[:, m - i]
        out[:, m] = acc % q
    return out


def _evaluate_series(P: SparsePoly, arcs: np.ndarray, q: int) -> np.ndarray:
    """Coefficients of P(phi) mod t^{level+1}, shape (batch, level + 1)."""
    terms = P.reduce_mod(q)
    batch, d, width = arcs.shape
    max_deg = [max((e[i] for e in terms), default=0) for i in range(d)]
    powers: list[list[np.ndarray]] = []
    one = np.zeros((batch, width), dtype=np.int64)
    one[:, 0] = 1
    for i in range(d):
        seq = [one]
        for _ in range(max_deg[i]):
            seq.append(_truncated_mul(seq[-1], arcs[:, i, :], q))
        powers.append(seq)
    total = np.zeros((batch, width), dtype=np.int64)
    for e, c in terms.items():
        mono = one * c
        for i, k in enumerate(e):
            if k:
                mono = _truncated_mul(mono, powers[i][k], q)
        total = (total + mono) % q
    return total


def _validate(P: SparsePoly) -> None:
    if P.has_negative_exponents():
        raise ValueError("jet counts need a polynomial, not a Laurent polynomial")


def jet_count(g: SparsePoly, n: int, q: int) -> tuple[int, dict[int, int]]:
    """Number of arcs phi mod t^{n+1} with ord_t g(phi) = n, and the histogram of ac g(phi)."""
    _validate(g)
    if n < 0:
        raise ValueError("order must be nonnegative")
    d = g.nvars
    _check_guard(q, d, n)
    hist = np.zeros(q, dtype=np.int64)
    for arcs in _arc_chunks(d, n, q):
        vals = _evaluate_series(g, arcs, q)
        ok = np.all(vals[:, :n] == 0, axis=1) & (vals[:, n] != 0)
        hist += np.bincount(vals[ok, n], minlength=q)
    by_ac = {int(a): int(c) for a, c in enumerate(hist) if c}
    return int(hist.sum()), by_ac


def multi_jet_count(fs: Sequence[SparsePoly], orders: Sequence[int], q: int) -> int:
    """Arcs mod t^{s+1}, s = sum of orders, with ord_t f_j(phi) = n_j for every j."""
    if len(fs) != len(orders):
        raise ValueError("one order per function")
    if any(n <= 0 for n in orders):
        raise ValueError("contact orders must be positive")
    if not fs:
        raise ValueError("need at least one function")
    d = fs[0].nvars
    for f in fs:
        _validate(f)
        if f.nvars != d:
            raise ValueError("all functions must live on the same space")
    level = sum(orders)
    _check_guard(q, d, level)
    count = 0
    for arcs in _arc_chunks(d, level, q):
        ok = np.ones(arcs.shape[0], dtype=bool)
        for f, n in zip(fs, orders):
            vals = _evaluate_series(f, arcs, q)
            ok &= np.all(vals[:, :n] == 0, axis=1) & (vals[:, n] != 0)
        count += int(ok.sum())
    return count
