"""Uncertainty-diagram membership by exhaustive rank-condition search.

A point (n_a, n_b) is achievable exactly when some submatrix M of the
transition matrix, built from d - n_a rows and n_b columns, satisfies

  (i)   rank(M) < n_b,
  (ii)  appending any one of the remaining rows raises the rank by one,
  (iii) removing any single column leaves the rank unchanged.

Condition (ii) quantifies over every row outside the selection and (iii)
over every column of it.  The empty row selection (n_a = d) folds into the
same three conditions: they then reduce to every single row of the matrix
being nonzero on the chosen columns, which is the direct density argument
for full A-support.

Points are decided Present by the first certifying candidate in a fixed
lexicographic order, or Hole only after the whole candidate space has been
exhausted.  A configured budget can cut a search short, which yields a
distinct Unknown outcome, never a Hole.
"""

from __future__ import annotations

import bisect
import json
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from pathlib import Path

import numpy as np

from .cyclotomic import divisors
from .kd import StateVector, TransitionKind, TransitionMatrix, support_profile
from .linalg import (
    DEFAULT_RANK_TOL,
    ENGINE_EXACT,
    ENGINE_NUMERIC,
    CMatrix,
    RankCertificate,
    _exact_rank_int,
    _numeric_rank,
    _reduced_power_table,
    nullspace_basis,
    rank,
    submatrix,
)

__all__ = [
    "DiagramPoint",
    "EngineDisagreementError",
    "ENGINE_BOTH",
    "EXACT_DIMENSION_LIMIT",
    "IndeterminateDiagramError",
    "NUMERIC_DIMENSION_LIMIT",
    "PointCertificate",
    "PointStatus",
    "TheoremPrediction",
    "UncertaintyDiagram",
    "WitnessSamplingError",
    "check_submatrix_conditions",
    "diagram_to_csv",
    "diagram_to_dict",
    "enumerate_diagram",
    "is_completely_incompatible",
    "load_diagram",
    "point_exists",
    "predict_corollary1",
    "predict_theorem1",
    "predict_theorem2",
    "predict_theorem3",
    "save_diagram",
    "witness_state",
]

ENGINE_BOTH = "both"

EXACT_DIMENSION_LIMIT = 9
NUMERIC_DIMENSION_LIMIT = 12


class PointStatus(str, Enum):
    PRESENT = "present"
    HOLE = "hole"
    UNKNOWN = "unknown"


class EngineDisagreementError(RuntimeError):
    """Exact and numeric rank engines returned different values."""

    def __init__(self, rows, cols, exact_rank: int, numeric_rank: int) -> None:
        super().__init__(
            f"engine disagreement on rows={list(rows)} cols={list(cols)}: "
            f"exact={exact_rank} numeric={numeric_rank}"
        )
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.exact_rank = exact_rank
        self.numeric_rank = numeric_rank


class IndeterminateDiagramError(RuntimeError):
    """The diagram holds Unknown points, so the query has no definite answer."""


class WitnessSamplingError(RuntimeError):
    """Random sampling failed to realize the certified support profile."""


@dataclass(frozen=True)
class PointCertificate:
    """Row/column selection behind a Present verdict, with the rank audit.

    ``base`` certifies rank(M); ``added`` holds one certificate per appended
    outside row, ``removed`` one per dropped column.  Deserialized diagrams
    carry the selection only, with the audit fields empty.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    base: RankCertificate | None = None
    added: tuple[tuple[int, RankCertificate], ...] = ()
    removed: tuple[tuple[int, RankCertificate], ...] = ()


@dataclass(frozen=True)
class DiagramPoint:
    n_a: int
    n_b: int
    status: PointStatus
    certificate: PointCertificate | None = None
    note: str = ""


@dataclass
class UncertaintyDiagram:
    """Status of every lattice point (n_a, n_b) in 1..d x 1..d."""

    d: int
    engine: str
    sym_reduce: bool
    points: dict[tuple[int, int], DiagramPoint]
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    def status(self, n_a: int, n_b: int) -> PointStatus:
        return self.points[(n_a, n_b)].status

    def present_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(k for k, p in self.points.items() if p.status is PointStatus.PRESENT)

    def hole_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(k for k, p in self.points.items() if p.status is PointStatus.HOLE)

    def unknown_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(k for k, p in self.points.items() if p.status is PointStatus.UNKNOWN)

    def row_present(self, n_b: int) -> frozenset[int]:
        """A-support sizes of the Present points on one diagram row."""
        return frozenset(a for (a, b) in self.present_set() if b == n_b)

    def is_symmetric(self) -> bool:
        return all(
            self.points[(a, b)].status is self.points[(b, a)].status
            for a in range(1, self.d + 1)
            for b in range(1, self.d + 1)
        )


# ---------------------------------------------------------------------------
# cached rank oracle


class _RankOracle:
    """Memoized rank queries for submatrices of one transition matrix.

    For the DFT the cache key is canonical under independent cyclic shifts of
    the row and column sets and under transposition: shifting rows by s
    rescales the columns by unit roots, shifting columns rescales rows, and
    the matrix is symmetric, so all members of an orbit share one rank.
    """

    def __init__(self, u: TransitionMatrix, engine: str, tol: float) -> None:
        self.u = u
        self.d = u.d
        self.engine = engine
        self.tol = tol
        self.requests = 0
        self.computed = 0
        self._ranks: dict = {}
        self._necklaces: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._canonical = u.kind is TransitionKind.DFT
        self._numeric = u.numeric
        if engine in (ENGINE_EXACT, ENGINE_BOTH):
            if u.exact_view is None:
                raise ValueError("exact engine requires a transition matrix with an exact view")
            self._power_table = _reduced_power_table(self.d)

    def _necklace(self, s: tuple[int, ...]) -> tuple[int, ...]:
        v = self._necklaces.get(s)
        if v is None:
            if s:
                d = self.d
                v = min(tuple(sorted((x - e) % d for x in s)) for e in s)
            else:
                v = ()
            self._necklaces[s] = v
        return v

    def _key(self, rows: tuple[int, ...], cols: tuple[int, ...]):
        if not self._canonical:
            return (rows, cols)
        nr = self._necklace(rows)
        nc = self._necklace(cols)
        return (nr, nc) if (nr, nc) <= (nc, nr) else (nc, nr)

    def _compute_exact(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        d = self.d
        table = self._power_table
        mat = [[list(table[(i * j) % d]) for j in cols] for i in rows]
        return _exact_rank_int(mat, len(cols), d)[0]

    def _compute_numeric(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        if not rows or not cols:
            return 0
        sub = self._numeric[np.ix_(rows, cols)]
        return _numeric_rank(sub, self.tol)

    def rank_of(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        self.requests += 1
        key = self._key(rows, cols)
        r = self._ranks.get(key)
        if r is None:
            self.computed += 1
            if self.engine == ENGINE_EXACT:
                r = self._compute_exact(rows, cols)
            elif self.engine == ENGINE_NUMERIC:
                r = self._compute_numeric(rows, cols)
            else:
                r = self._compute_exact(rows, cols)
                rn = self._compute_numeric(rows, cols)
                if rn != r:
                    raise EngineDisagreementError(rows, cols, r, rn)
            self._ranks[key] = r
        return r


def _resolve_engine(u: TransitionMatrix, engine: str, allow_large: bool) -> str:
    if engine == "auto":
        if u.exact_view is not None and u.d <= EXACT_DIMENSION_LIMIT:
            engine = ENGINE_EXACT
        else:
            engine = ENGINE_NUMERIC
    if engine not in (ENGINE_EXACT, ENGINE_NUMERIC, ENGINE_BOTH):
        raise ValueError(f"unknown engine {engine!r}")
    if not allow_large:
        if engine in (ENGINE_EXACT, ENGINE_BOTH) and u.d > EXACT_DIMENSION_LIMIT:
            raise ValueError(
                f"exact engine is limited to d <= {EXACT_DIMENSION_LIMIT} by default"
            )
        if u.d > NUMERIC_DIMENSION_LIMIT:
            raise ValueError(
                f"enumeration is limited to d <= {NUMERIC_DIMENSION_LIMIT} by default"
            )
    return engine


# ---------------------------------------------------------------------------
# the three rank conditions


def _insert_sorted(rows: tuple[int, ...], k: int) -> tuple[int, ...]:
    pos = bisect.bisect_left(rows, k)
    return rows[:pos] + (k,) + rows[pos:]


def _conditions_hold(oracle: _RankOracle, rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    n_b = len(cols)
    base = oracle.rank_of(rows, cols)
    if base >= n_b:
        return False
    rowset = set(rows)
    for k in range(oracle.d):
        if k in rowset:
            continue
        if oracle.rank_of(_insert_sorted(rows, k), cols) != base + 1:
            return False
    for idx in range(n_b):
        if oracle.rank_of(rows, cols[:idx] + cols[idx + 1 :]) != base:
            return False
    return True


def check_submatrix_conditions(
    u: TransitionMatrix,
    rows,
    cols,
    *,
    engine: str = "auto",
    rank_tol: float = DEFAULT_RANK_TOL,
) -> tuple[bool, PointCertificate]:
    """Audited evaluation of the three rank conditions for one candidate.

    Returns the verdict together with every rank certificate it computed; on
    failure the audit stops at the first violated condition.  ``rows`` may be
    empty, which encodes the full-A-support case.
    """
    d = u.d
    rows = tuple(sorted(int(r) for r in rows))
    cols = tuple(sorted(int(c) for c in cols))
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("duplicate indices")
    if rows and (rows[0] < 0 or rows[-1] >= d):
        raise ValueError("row index out of range")
    if not cols or cols[0] < 0 or cols[-1] >= d:
        raise ValueError("column selection must be a nonempty subset of the index range")
    eng = _resolve_engine(u, engine, allow_large=True)
    view = u.exact_view if eng in (ENGINE_EXACT, ENGINE_BOTH) else u.numeric_view
    if view is None:
        raise ValueError("exact engine requires an exact view")

    def cert_of(r, c) -> RankCertificate:
        return rank(submatrix(view, r, c), tol=rank_tol)

    base = cert_of(rows, cols)
    n_b = len(cols)
    ok = base.rank < n_b
    added: list[tuple[int, RankCertificate]] = []
    removed: list[tuple[int, RankCertificate]] = []
    if ok:
        rowset = set(rows)
        for k in range(d):
            if k in rowset:
                continue
            cert = cert_of(rows + (k,), cols)
            added.append((k, cert))
            if cert.rank != base.rank + 1:
                ok = False
                break
    if ok:
        for idx in range(n_b):
            cert = cert_of(rows, cols[:idx] + cols[idx + 1 :])
            removed.append((cols[idx], cert))
            if cert.rank != base.rank:
                ok = False
                break
    return ok, PointCertificate(
        rows=rows, cols=cols, base=base, added=tuple(added), removed=tuple(removed)
    )


# ---------------------------------------------------------------------------
# point search and diagram enumeration


def _row_candidates(d: int, size: int, sym_reduce: bool):
    if size == 0:
        yield ()
        return
    if sym_reduce:
        for rest in combinations(range(1, d), size - 1):
            yield (0,) + rest
    else:
        yield from combinations(range(d), size)


def _find_point(
    u: TransitionMatrix,
    oracle: _RankOracle,
    n_a: int,
    n_b: int,
    sym_reduce: bool,
    max_checks: int | None,
    rank_tol: float,
) -> DiagramPoint:
    d = u.d
    if not (1 <= n_a <= d and 1 <= n_b <= d):
        raise ValueError("point coordinates must lie in 1..d")
    n_rows = d - n_a
    reduce_rows = sym_reduce and u.kind is TransitionKind.DFT
    checks = 0
    for cols in combinations(range(d), n_b):
        for rows in _row_candidates(d, n_rows, reduce_rows):
            checks += 1
            if max_checks is not None and checks > max_checks:
                return DiagramPoint(
                    n_a=n_a,
                    n_b=n_b,
                    status=PointStatus.UNKNOWN,
                    note=f"aborted after {max_checks} candidates",
                )
            if _conditions_hold(oracle, rows, cols):
                audit_engine = ENGINE_EXACT if oracle.engine == ENGINE_BOTH else oracle.engine
                ok, cert = check_submatrix_conditions(
                    u, rows, cols, engine=audit_engine, rank_tol=rank_tol
                )
                if not ok:
                    raise RuntimeError(
                        "search and audit paths disagree on a certifying candidate"
                    )
                return DiagramPoint(
                    n_a=n_a, n_b=n_b, status=PointStatus.PRESENT, certificate=cert
                )
    return DiagramPoint(
        n_a=n_a,
        n_b=n_b,
        status=PointStatus.HOLE,
        note=f"exhausted {checks} candidates",
    )


def point_exists(
    u: TransitionMatrix,
    n_a: int,
    n_b: int,
    *,
    engine: str = "auto",
    rank_tol: float = DEFAULT_RANK_TOL,
    sym_reduce: bool = False,
    max_checks: int | None = None,
    allow_large: bool = False,
) -> DiagramPoint:
    """Decide one lattice point by searching all row/column selections."""
    eng = _resolve_engine(u, engine, allow_large)
    oracle = _RankOracle(u, eng, rank_tol)
    return _find_point(u, oracle, n_a, n_b, sym_reduce, max_checks, rank_tol)


def enumerate_diagram(
    u: TransitionMatrix,
    *,
    engine: str = "auto",
    rank_tol: float = DEFAULT_RANK_TOL,
    sym_reduce: bool = False,
    max_checks: int | None = None,
    allow_large: bool = False,
) -> UncertaintyDiagram:
    """Assign Present/Hole (or Unknown under a budget) to every lattice point.

    One rank cache serves the whole run, so the deterministic per-point
    searches stay cheap even without symmetry reduction.
    """
    eng = _resolve_engine(u, engine, allow_large)
    oracle = _RankOracle(u, eng, rank_tol)
    start = time.perf_counter()
    points: dict[tuple[int, int], DiagramPoint] = {}
    for n_a in range(1, u.d + 1):
        for n_b in range(1, u.d + 1):
            points[(n_a, n_b)] = _find_point(
                u, oracle, n_a, n_b, sym_reduce, max_checks, rank_tol
            )
    elapsed = time.perf_counter() - start
    stats = {
        "rank_requests": oracle.requests,
        "rank_computed": oracle.computed,
    }
    return UncertaintyDiagram(
        d=u.d,
        engine=eng,
        sym_reduce=sym_reduce,
        points=points,
        elapsed=elapsed,
        stats=stats,
    )


def is_completely_incompatible(
    u: TransitionMatrix,
    *,
    diagram: UncertaintyDiagram | None = None,
    engine: str = "auto",
    rank_tol: float = DEFAULT_RANK_TOL,
) -> bool:
    """True iff the diagram is exactly the half-plane n_a + n_b >= d + 1."""
    diag = diagram if diagram is not None else enumerate_diagram(u, engine=engine, rank_tol=rank_tol)
    if diag.unknown_set():
        raise IndeterminateDiagramError("diagram holds unresolved points")
    d = diag.d
    half_plane = frozenset(
        (a, b) for a in range(1, d + 1) for b in range(1, d + 1) if a + b >= d + 1
    )
    return diag.present_set() == half_plane


def witness_state(
    u: TransitionMatrix,
    point: DiagramPoint,
    seed: int | np.random.Generator | None = None,
    *,
    eps_support: float = 1e-10,
    max_tries: int = 64,
) -> StateVector:
    """Random state realizing a certified Present point's exact profile.

    Samples the nullspace of the certified submatrix; states there have
    A-support avoiding the certificate rows and B-support inside its columns,
    and a generic sample attains both bounds.  Retries with fresh randomness,
    since the attaining set is dense but not all of the subspace.
    """
    if point.status is not PointStatus.PRESENT or point.certificate is None:
        raise ValueError("witness generation needs a Present point with a certificate")
    rows = list(point.certificate.rows)
    cols = list(point.certificate.cols)
    if rows:
        constraint = CMatrix.from_numeric(u.numeric[np.ix_(rows, cols)])
    else:
        constraint = CMatrix.from_numeric(np.empty((0, len(cols)), dtype=complex))
    basis = nullspace_basis(constraint)
    if not basis:
        raise WitnessSamplingError("certified submatrix has a trivial nullspace")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        g = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        beta = np.zeros(len(cols), dtype=complex)
        for coeff, vec in zip(g, basis):
            beta += coeff * vec
        nrm = np.linalg.norm(beta)
        if nrm == 0.0:
            continue
        beta /= nrm
        amps_b = np.zeros(u.d, dtype=complex)
        amps_b[cols] = beta
        amps_a = u.numeric @ amps_b
        amps_a.setflags(write=False)
        psi = StateVector(d=u.d, amps_a=amps_a, norm=1.0)
        profile = support_profile(psi, u, eps=eps_support)
        if profile.n_a == point.n_a and profile.n_b == point.n_b:
            return psi
    raise WitnessSamplingError(
        f"no sample hit profile ({point.n_a}, {point.n_b}) in {max_tries} tries"
    )


# ---------------------------------------------------------------------------
# closed-form predictions checked against enumeration


@dataclass(frozen=True)
class TheoremPrediction:
    """A predicted point set, either existence claims or one exact row.

    ``row`` names the diagram row the prediction is exact on (None for pure
    existence claims).  ``applicable`` is False when the rule is applied
    outside its stated hypotheses and should be treated as heuristic.
    """

    theorem: str
    d: int
    points: frozenset[tuple[int, int]]
    row: int | None = None
    applicable: bool = True
    note: str = ""


def predict_theorem1(d: int) -> TheoremPrediction:
    """Existence claims from periodic row-block constructions.

    For every divisor m of d and every nonzero multiple n of m, the points
    (d - n, n_b) with n/m < n_b <= d/m are achievable, as are the boundary
    families (d, i) and (i, d); the set is closed under coordinate swap.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    pts: set[tuple[int, int]] = set()
    for i in range(1, d + 1):
        pts.add((d, i))
        pts.add((i, d))
    for m in divisors(d):
        for n in range(m, d, m):
            for n_b in range(n // m + 1, d // m + 1):
                pts.add((d - n, n_b))
    pts |= {(b, a) for (a, b) in pts}
    return TheoremPrediction(theorem="T1", d=d, points=frozenset(pts))


def predict_corollary1(d: int) -> TheoremPrediction:
    """Every point on or above the line n_a + n_b = d + 1 is achievable."""
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = frozenset(
        (a, b) for a in range(1, d + 1) for b in range(1, d + 1) if a + b >= d + 1
    )
    return TheoremPrediction(theorem="C1", d=d, points=pts)


def predict_theorem2(d: int) -> TheoremPrediction:
    """The exact Present set on the row n_b = 2.

    (d - n, 2) is achievable iff n = 0 or n divides d with n != d; the rest of
    the row is predicted Hole.
    """
    if d < 2:
        raise ValueError("row-two prediction needs d >= 2")
    n_as = {d} | {d - n for n in divisors(d) if n != d}
    pts = frozenset((a, 2) for a in n_as)
    return TheoremPrediction(theorem="T2", d=d, points=pts, row=2)


def _nontrivial_divisors(d: int) -> list[int]:
    return [m for m in divisors(d) if 1 < m < d]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def predict_theorem3(d: int) -> TheoremPrediction:
    """The Present set on the row n_b = 3, under a divisor hypothesis.

    (d - n, 3) is achievable iff n = 0 or some divisor m of d has 3m <= d and
    n equal to m or 2m.  Stated for d whose nontrivial divisors are all prime;
    for other d the prediction is still emitted with ``applicable`` False and
    is checked empirically.
    """
    if d < 3:
        raise ValueError("row-three prediction needs d >= 3")
    n_as = {d}
    for m in divisors(d):
        if 3 * m <= d:
            n_as.add(d - m)
            n_as.add(d - 2 * m)
    pts = frozenset((a, 3) for a in n_as)
    applicable = all(_is_prime(m) for m in _nontrivial_divisors(d))
    note = "" if applicable else "d has a nontrivial nonprime divisor; prediction is heuristic"
    return TheoremPrediction(
        theorem="T3", d=d, points=pts, row=3, applicable=applicable, note=note
    )


# ---------------------------------------------------------------------------
# serialization: JSON schema and CSV rendering


def diagram_to_dict(diag: UncertaintyDiagram) -> dict:
    points = []
    for (n_a, n_b) in sorted(diag.points):
        p = diag.points[(n_a, n_b)]
        if p.status is PointStatus.PRESENT and p.certificate is not None:
            rows = list(p.certificate.rows)
            cols = list(p.certificate.cols)
        else:
            rows = None
            cols = None
        points.append(
            {
                "na": n_a,
                "nb": n_b,
                "status": p.status.value,
                "rows": rows,
                "cols": cols,
            }
        )
    return {"d": diag.d, "engine": diag.engine, "points": points}


def save_diagram(path: str | Path, diag: UncertaintyDiagram) -> None:
    Path(path).write_text(
        json.dumps(diagram_to_dict(diag), indent=2) + "\n", encoding="utf-8"
    )


def load_diagram(path: str | Path) -> UncertaintyDiagram:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    d = int(payload["d"])
    points: dict[tuple[int, int], DiagramPoint] = {}
    for entry in payload["points"]:
        status = PointStatus(entry["status"])
        cert = None
        if status is PointStatus.PRESENT:
            cert = PointCertificate(
                rows=tuple(entry["rows"]), cols=tuple(entry["cols"])
            )
        points[(int(entry["na"]), int(entry["nb"]))] = DiagramPoint(
            n_a=int(entry["na"]), n_b=int(entry["nb"]), status=status, certificate=cert
        )
    return UncertaintyDiagram(
        d=d, engine=str(payload["engine"]), sym_reduce=False, points=points
    )


def diagram_to_csv(diag: UncertaintyDiagram) -> str:
    lines = ["na,nb,status"]
    for (n_a, n_b) in sorted(diag.points):
        lines.append(f"{n_a},{n_b},{diag.points[(n_a, n_b)].status.value}")
    return "\n".join(lines) + "\n"
