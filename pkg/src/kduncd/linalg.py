"""Complex matrices with interchangeable exact and numeric rank engines.

The exact engine runs fraction-free (Bareiss-style) elimination over the
cyclotomic field: entries are reduced modulo the cyclotomic polynomial,
after which every intermediate value is an integer coefficient vector and
the single division per step is an exact integer division.  Pivots are the
first column entry that is nonzero as a field element, so ranks come with
zero-test certainty.  The numeric engine counts singular values against a
spectral-norm-relative threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cyclotomic import CycNum, IntPoly, cyclotomic_polynomial

__all__ = [
    "CMatrix",
    "RankCertificate",
    "DEFAULT_RANK_TOL",
    "ENGINE_EXACT",
    "ENGINE_NUMERIC",
    "nullspace_basis",
    "rank",
    "submatrix",
]

ENGINE_EXACT = "exact"
ENGINE_NUMERIC = "numeric"

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CMatrix:
    """Dense matrix holding either exact cyclotomic or complex-double entries.

    ``entries`` is a flat row-major tuple of :class:`CycNum` for the exact
    engine, or a read-only complex ndarray for the numeric engine.  ``order``
    is the root-of-unity order d of exact entries (None for numeric).
    """

    rows: int
    cols: int
    engine: str
    entries: tuple[CycNum, ...] | np.ndarray
    order: int | None = None

    @classmethod
    def from_numeric(cls, array: np.ndarray) -> CMatrix:
        a = np.array(array, dtype=complex)
        if a.ndim != 2:
            raise ValueError("numeric matrix must be two-dimensional")
        a.setflags(write=False)
        return cls(rows=a.shape[0], cols=a.shape[1], engine=ENGINE_NUMERIC, entries=a)

    @classmethod
    def from_exact(cls, rows: Sequence[Sequence[CycNum]], order: int) -> CMatrix:
        materialized = [list(row) for row in rows]
        flat: list[CycNum] = []
        ncols = None
        for row in materialized:
            if ncols is None:
                ncols = len(row)
            elif len(row) != ncols:
                raise ValueError("ragged rows in exact matrix")
            for e in row:
                if e.d != order:
                    raise ValueError("exact entries must share one root order")
                flat.append(e)
        if ncols is None:
            ncols = 0
        return cls(
            rows=len(materialized), cols=ncols, engine=ENGINE_EXACT,
            entries=tuple(flat), order=order,
        )

    def entry(self, i: int, j: int):
        if self.engine == ENGINE_NUMERIC:
            return self.entries[i, j]
        return self.entries[i * self.cols + j]

    def to_numeric(self) -> np.ndarray:
        """Complex-double view; exact entries are evaluated at the unit root."""
        if self.engine == ENGINE_NUMERIC:
            return self.entries
        out = np.empty((self.rows, self.cols), dtype=complex)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self.entries[i * self.cols + j].numeric()
        out.setflags(write=False)
        return out

    def transpose(self) -> CMatrix:
        if self.engine == ENGINE_NUMERIC:
            return CMatrix.from_numeric(self.entries.T)
        rows = [[self.entry(i, j) for i in range(self.rows)] for j in range(self.cols)]
        return CMatrix.from_exact(rows, order=self.order or 1)


@dataclass(frozen=True)
class RankCertificate:
    """Rank value plus the audit data that produced it.

    ``pivots`` lists one (row, col) position per rank step in the original
    indexing.  ``tolerance`` is the relative singular-value threshold for the
    numeric engine and exactly 0 for the exact engine.
    """

    rank: int
    engine: str
    pivots: tuple[tuple[int, int], ...]
    tolerance: float

    def __post_init__(self) -> None:
        if len(self.pivots) != self.rank:
            raise ValueError("pivot list length must equal the rank")


def submatrix(m: CMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> CMatrix:
    """Select the listed rows and columns, in order."""
    rows = list(row_idx)
    cols = list(col_idx)
    for idx, bound, what in ((rows, m.rows, "row"), (cols, m.cols, "column")):
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate {what} index")
        for k in idx:
            if not 0 <= k < bound:
                raise ValueError(f"{what} index {k} out of range")
    if m.engine == ENGINE_NUMERIC:
        if not rows or not cols:
            sub = np.empty((len(rows), len(cols)), dtype=complex)
        else:
            sub = m.entries[np.ix_(rows, cols)]
        return CMatrix.from_numeric(sub)
    picked = [[m.entry(i, j) for j in cols] for i in rows]
    return CMatrix.from_exact(picked, order=m.order or 1)


# ---------------------------------------------------------------------------
# exact engine internals: integer coefficient vectors reduced mod Phi_d


@lru_cache(maxsize=None)
def _phi_int(d: int) -> tuple[int, ...]:
    phi = cyclotomic_polynomial(d)
    out = []
    for c in phi.coeffs:
        if c.denominator != 1:
            raise ArithmeticError("cyclotomic polynomial must be integral")
        out.append(c.numerator)
    return tuple(out)


def _rem_int(vec: list[int], phi: tuple[int, ...]) -> list[int]:
    """Remainder of an integer polynomial modulo monic integral ``phi``."""
    deg = len(phi) - 1
    for k in range(len(vec) - 1, deg - 1, -1):
        c = vec[k]
        if c:
            vec[k] = 0
            base = k - deg
            for i in range(deg):
                p = phi[i]
                if p:
                    vec[base + i] -= c * p
    out = vec[:deg]
    if len(out) < deg:
        out.extend([0] * (deg - len(out)))
    return out


def _conv(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def _reduced_power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """w^e reduced mod Phi_d for e in 0..d-1, as integer vectors."""
    phi = _phi_int(d)
    table = []
    for e in range(d):
        vec = [0] * d
        vec[e] = 1
        table.append(tuple(_rem_int(vec, phi)))
    return tuple(table)


def _inv_scaled(p: Sequence[int], d: int) -> tuple[list[int], int]:
    """Integer polynomial t and integer r with t*p = r modulo Phi_d, r != 0.

    Extended Euclid over the rationals, then denominators cleared, so the
    caller can divide by the previous pivot with pure integer arithmetic.
    """
    phi = cyclotomic_polynomial(d)
    a, b = phi, IntPoly(p)
    s0, s1 = IntPoly(), IntPoly((1,))
    while b.degree > 0:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
    if b.is_zero():
        raise ZeroDivisionError("inverse of a zero residue")
    c = b.coeffs[0]
    scale = c.denominator
    for coef in s1.coeffs:
        scale = scale * coef.denominator // math.gcd(scale, coef.denominator)
    L = phi.degree
    t = [0] * L
    for k, coef in enumerate(s1.coeffs):
        t[k] = int(coef * scale)
    return t, int(c * scale)


def _exact_rank_int(
    rows: list[list[list[int]]], ncols: int, d: int
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Fraction-free elimination on reduced integer coefficient vectors.

    Pivot selection is the first row with a nonzero entry, scanning columns
    left to right; the Bareiss division by the previous pivot is performed as
    multiplication by its scaled modular inverse followed by an exact integer
    division, which keeps every intermediate integral.
    """
    phi = _phi_int(d)
    m = len(rows)
    work = rows
    orig = list(range(m))
    pivots: list[tuple[int, int]] = []
    prev_t: list[int] | None = None
    prev_r = 1
    rank_val = 0
    for col in range(ncols):
        piv_at = -1
        for i in range(rank_val, m):
            if any(work[i][col]):
                piv_at = i
                break
        if piv_at < 0:
            continue
        if piv_at != rank_val:
            work[rank_val], work[piv_at] = work[piv_at], work[rank_val]
            orig[rank_val], orig[piv_at] = orig[piv_at], orig[rank_val]
        pivots.append((orig[rank_val], col))
        piv_row = work[rank_val]
        piv = piv_row[col]
        for i in range(rank_val + 1, m):
            row = work[i]
            below = row[col]
            below_any = any(below)
            for j in range(col + 1, ncols):
                raw = _conv(piv, row[j])
                if below_any:
                    other = _conv(below, piv_row[j])
                    for k, v in enumerate(other):
                        raw[k] -= v
                red = _rem_int(raw, phi)
                if prev_t is not None:
                    red = _rem_int(_conv(red, prev_t), phi)
                    for k, v in enumerate(red):
                        q, rem = divmod(v, prev_r)
                        if rem:
                            raise ArithmeticError(
                                "non-exact division in fraction-free elimination"
                            )
                        red[k] = q
                row[j] = red
            row[col] = [0] * len(piv)
        rank_val += 1
        if rank_val == m:
            break
        prev_t, prev_r = _inv_scaled(piv, d)
    return rank_val, tuple(pivots)


def _exact_rows_from_cmatrix(m: CMatrix) -> list[list[list[int]]]:
    """Reduce entries mod Phi_d and clear denominators row by row.

    Row scaling by a nonzero rational preserves rank, so each row is lifted to
    integer vectors by its own least common denominator.
    """
    d = m.order
    if d is None:
        raise ValueError("exact matrix lacks a root order")
    phi = cyclotomic_polynomial(d)
    L = max(phi.degree, 1)
    out: list[list[list[int]]] = []
    for i in range(m.rows):
        reduced: list[tuple[Fraction, ...]] = []
        denom = 1
        for j in range(m.cols):
            res = (IntPoly(m.entry(i, j).coeffs) % phi).coeffs
            reduced.append(res)
            for c in res:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
        row = []
        for res in reduced:
            vec = [0] * L
            for k, c in enumerate(res):
                vec[k] = int(c * denom)
            row.append(vec)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# numeric engine internals


def _numeric_rank(a: np.ndarray, tol: float) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0] * max(a.shape)))


def _numeric_pivots(a: np.ndarray, rank_val: int) -> tuple[tuple[int, int], ...]:
    """Full-pivot elimination audit trail: ``rank_val`` structurally
    independent positions, scanned deterministically (first strict maximum)."""
    if rank_val == 0:
        return ()
    work = np.array(a, dtype=complex)
    nrows, ncols = work.shape
    row_free = [True] * nrows
    col_free = [True] * ncols
    pivots: list[tuple[int, int]] = []
    for _ in range(rank_val):
        best = -1.0
        bi = bj = -1
        for i in range(nrows):
            if not row_free[i]:
                continue
            for j in range(ncols):
                if col_free[j] and abs(work[i, j]) > best:
                    best = abs(work[i, j])
                    bi, bj = i, j
        pivots.append((bi, bj))
        row_free[bi] = False
        col_free[bj] = False
        pe = work[bi, bj]
        for i in range(nrows):
            if row_free[i] and work[i, bj] != 0:
                work[i, :] -= (work[i, bj] / pe) * work[bi, :]
    return tuple(pivots)


def rank(m: CMatrix, tol: float = DEFAULT_RANK_TOL) -> RankCertificate:
    """Rank with an audit certificate, via the matrix's own engine."""
    if m.engine == ENGINE_EXACT:
        if m.rows == 0 or m.cols == 0:
            return RankCertificate(0, ENGINE_EXACT, (), 0.0)
        rows = _exact_rows_from_cmatrix(m)
        r, pivots = _exact_rank_int(rows, m.cols, m.order or 1)
        return RankCertificate(r, ENGINE_EXACT, pivots, 0.0)
    r = _numeric_rank(m.entries, tol)
    return RankCertificate(r, ENGINE_NUMERIC, _numeric_pivots(m.entries, r), tol)


def nullspace_basis(m: CMatrix, tol: float = DEFAULT_RANK_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the right nullspace, as complex vectors.

    Exact matrices are evaluated numerically first.  A matrix with no rows
    constrains nothing, so the basis is the full coordinate space.
    """
    a = m.to_numeric()
    ncols = a.shape[1]
    if ncols == 0:
        return []
    if a.shape[0] == 0:
        return [np.eye(ncols, dtype=complex)[:, k] for k in range(ncols)]
    u, s, vh = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0.0:
        r = 0
    else:
        r = int(np.sum(s > tol * s[0] * max(a.shape)))
    return [vh[k].conj() for k in range(r, ncols)]
