"""Basis pairs, Kirkwood-Dirac quasiprobability tables, and state classification.

Given orthonormal bases A and B linked by a unitary transition matrix U with
U[i, j] = <a_i|b_j>, the KD table of a pure state is

    Q[i, j] = <a_i|psi> <psi|b_j> <b_j|a_i>.

It sums to one and its row/column marginals are the Born probabilities in the
two bases.  A state is KD classical when every Q[i, j] is real and
nonnegative, and nonclassical otherwise.  For the DFT basis pair the verdict
is fully determined by the support sizes: classical exactly when
n_A * n_B == d, nonclassical exactly when n_A * n_B > d.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

from .cyclotomic import root_power
from .linalg import CMatrix

__all__ = [
    "Classicality",
    "KDDist",
    "StateVector",
    "SupportProfile",
    "SupportThresholdError",
    "TransitionKind",
    "TransitionMatrix",
    "Verdict",
    "b_amplitudes",
    "basis_state",
    "classify_state",
    "dft_matrix",
    "kd_distribution",
    "load_state",
    "predict_classicality_dft",
    "save_state",
    "state_from_amplitudes",
    "support_profile",
    "support_uncertainty_bound",
    "theorem5_sufficient",
    "transition_from_unitary",
]

DEFAULT_SUPPORT_EPS = 1e-10
DEFAULT_CLASSICALITY_EPS = 1e-10

_UNITARITY_TOL = 1e-10
_MUB_MODULUS_TOL = 1e-10
_DFT_PATTERN_TOL = 1e-12


class TransitionKind(str, Enum):
    DFT = "dft"
    GENERAL_MUB = "general_mub"
    GENERAL = "general"


class Verdict(str, Enum):
    CLASSICAL = "classical"
    NONCLASSICAL = "nonclassical"


class SupportThresholdError(ValueError):
    """Support sizes violate the uncertainty floor, so the support
    threshold is misconfigured for this state."""


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Unitary transition matrix between two orthonormal bases.

    ``numeric_view`` always holds the complex entries <a_i|b_j>.  For the DFT
    pair, ``exact_view`` additionally holds the unscaled root-of-unity entries
    w^(i*j); the 1/sqrt(d) prefactor is dropped there because rank and
    nullspace are invariant under global scaling and sqrt(d) is irrational in
    the cyclotomic field for non-square d.
    """

    d: int
    kind: TransitionKind
    numeric_view: CMatrix
    exact_view: CMatrix | None = None

    @property
    def numeric(self) -> np.ndarray:
        return self.numeric_view.entries


def _validate_unitary(a: np.ndarray) -> None:
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError("transition matrix must be square")
    gram = a @ a.conj().T
    if np.max(np.abs(gram - np.eye(d))) > _UNITARITY_TOL:
        raise ValueError("matrix is not unitary within tolerance")


def transition_from_unitary(
    array: np.ndarray, kind: TransitionKind = TransitionKind.GENERAL
) -> TransitionMatrix:
    """Wrap and validate a unitary as a transition matrix of the given kind."""
    a = np.array(array, dtype=complex)
    _validate_unitary(a)
    d = a.shape[0]
    if kind in (TransitionKind.DFT, TransitionKind.GENERAL_MUB):
        if np.max(np.abs(np.abs(a) - 1.0 / math.sqrt(d))) > _MUB_MODULUS_TOL:
            raise ValueError("mutually unbiased kind requires |U_ij| = 1/sqrt(d)")
    if kind is TransitionKind.DFT:
        idx = np.arange(d)
        ref = np.exp(2j * np.pi * (np.outer(idx, idx) % d) / d) / math.sqrt(d)
        if np.max(np.abs(a - ref)) > _DFT_PATTERN_TOL:
            raise ValueError("DFT kind requires entries w^(i*j)/sqrt(d)")
    a.setflags(write=False)
    exact = None
    if kind is TransitionKind.DFT:
        exact = _dft_exact_view(d)
    return TransitionMatrix(d=d, kind=kind, numeric_view=CMatrix.from_numeric(a), exact_view=exact)


def _dft_exact_view(d: int) -> CMatrix:
    rows = [[root_power(d, i * j) for j in range(d)] for i in range(d)]
    return CMatrix.from_exact(rows, order=d)


@lru_cache(maxsize=None)
def dft_matrix(d: int) -> TransitionMatrix:
    """The DFT transition matrix, with both exact and numeric views."""
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    idx = np.arange(d)
    numeric = np.exp(2j * np.pi * (np.outer(idx, idx) % d) / d) / math.sqrt(d)
    return transition_from_unitary(numeric, kind=TransitionKind.DFT)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state given by its amplitudes in the A basis.

    ``norm`` records the norm of the raw input before normalization; the
    stored amplitudes are always unit norm.  The B-representation is derived
    on demand from the transition matrix rather than stored.
    """

    d: int
    amps_a: np.ndarray
    norm: float = 1.0


def state_from_amplitudes(amps, *, normalize: bool = True) -> StateVector:
    a = np.array(amps, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(a))
    if nrm == 0.0:
        raise ValueError("state vector must be nonzero")
    if normalize:
        a = a / nrm
    a.setflags(write=False)
    return StateVector(d=a.size, amps_a=a, norm=nrm)


def basis_state(d: int, i: int) -> StateVector:
    if not 0 <= i < d:
        raise ValueError("basis index out of range")
    a = np.zeros(d, dtype=complex)
    a[i] = 1.0
    a.setflags(write=False)
    return StateVector(d=d, amps_a=a, norm=1.0)


def _require_same_dim(psi: StateVector, u: TransitionMatrix) -> None:
    if psi.d != u.d:
        raise ValueError(f"state dimension {psi.d} does not match basis dimension {u.d}")


def b_amplitudes(psi: StateVector, u: TransitionMatrix) -> np.ndarray:
    """Amplitudes <b_j|psi> derived from the A representation."""
    _require_same_dim(psi, u)
    return u.numeric.conj().T @ psi.amps_a


@dataclass(frozen=True, eq=False)
class KDDist:
    """The d x d complex quasiprobability table Q[i, j]."""

    q: np.ndarray

    def total(self) -> complex:
        return complex(self.q.sum())

    def marginal_a(self) -> np.ndarray:
        """Row sums; equal |<a_i|psi>|^2 for a unit state."""
        return self.q.sum(axis=1)

    def marginal_b(self) -> np.ndarray:
        """Column sums; equal |<b_j|psi>|^2 for a unit state."""
        return self.q.sum(axis=0)


def kd_distribution(psi: StateVector, u: TransitionMatrix) -> KDDist:
    """Quasiprobability table Q[i, j] = <a_i|psi> <psi|b_j> <b_j|a_i>."""
    _require_same_dim(psi, u)
    bamps = b_amplitudes(psi, u)
    q = psi.amps_a[:, None] * bamps.conj()[None, :] * u.numeric.conj()
    q.setflags(write=False)
    return KDDist(q=q)


@dataclass(frozen=True)
class SupportProfile:
    """Index sets and counts of the nonvanishing amplitudes in both bases."""

    d: int
    s_set: frozenset[int]
    t_set: frozenset[int]
    n_a: int
    n_b: int
    epsilon: float


def _support(mags: np.ndarray, eps: float) -> frozenset[int]:
    top = float(mags.max())
    if top == 0.0:
        raise ValueError("zero vector has no support")
    return frozenset(int(i) for i in np.nonzero(mags > eps * top)[0])


def support_profile(
    psi: StateVector, u: TransitionMatrix, eps: float = DEFAULT_SUPPORT_EPS
) -> SupportProfile:
    """Support sets in the A and B bases.

    The threshold is relative: an amplitude counts as nonzero when its
    magnitude exceeds ``eps`` times the largest magnitude in that basis.
    """
    if eps < 0:
        raise ValueError("support threshold must be nonnegative")
    _require_same_dim(psi, u)
    s_set = _support(np.abs(psi.amps_a), eps)
    t_set = _support(np.abs(b_amplitudes(psi, u)), eps)
    return SupportProfile(
        d=psi.d, s_set=s_set, t_set=t_set, n_a=len(s_set), n_b=len(t_set), epsilon=eps
    )


@dataclass(frozen=True)
class Classicality:
    """Verdict plus, for nonclassical states, the most violating table cell."""

    verdict: Verdict
    witness: tuple[int, int, complex] | None = None

    def __post_init__(self) -> None:
        if (self.verdict is Verdict.NONCLASSICAL) != (self.witness is not None):
            raise ValueError("nonclassical verdicts carry a witness cell, classical ones do not")


def classify_state(
    psi: StateVector, u: TransitionMatrix, eps: float = DEFAULT_CLASSICALITY_EPS
) -> Classicality:
    """Classical iff every KD table entry is real and nonnegative within eps.

    A cell violates when |Im Q| > eps or Re Q < -eps; the witness is the cell
    maximizing max(|Im Q|, -Re Q), ties resolved in row-major order.
    """
    table = kd_distribution(psi, u).q
    violation = np.maximum(np.abs(table.imag), -table.real)
    flat = int(np.argmax(violation))
    i, j = divmod(flat, table.shape[1])
    if violation[i, j] <= eps:
        return Classicality(verdict=Verdict.CLASSICAL)
    return Classicality(verdict=Verdict.NONCLASSICAL, witness=(i, j, complex(table[i, j])))


def support_uncertainty_bound(u: TransitionMatrix) -> float:
    """The floor of n_A * n_B over all states: max over cells of |U_ij|^-2.

    Infinite when some transition amplitude vanishes exactly (the bound is
    then vacuous for supports avoiding that cell's bases).
    """
    mags = np.abs(u.numeric)
    low = float(mags.min())
    if low == 0.0:
        return math.inf
    return float((1.0 / low) ** 2)


def predict_classicality_dft(profile: SupportProfile) -> Verdict:
    """DFT-pair verdict from support sizes alone: classical iff
    n_a * n_b == d, nonclassical iff the product exceeds d."""
    product = profile.n_a * profile.n_b
    if product < profile.d:
        raise SupportThresholdError(
            f"support product {product} below dimension {profile.d}; "
            "support threshold is misconfigured"
        )
    if product == profile.d:
        return Verdict.CLASSICAL
    return Verdict.NONCLASSICAL


def theorem5_sufficient(profile: SupportProfile, u: TransitionMatrix) -> bool:
    """Sufficient nonclassicality flag for mutually unbiased basis pairs.

    True when n_a > d/2 or n_b > d/2, which forces a nonclassical verdict for
    any non-basis state.  False means the criterion is silent, not that the
    state is classical.
    """
    if u.kind not in (TransitionKind.DFT, TransitionKind.GENERAL_MUB):
        raise ValueError("criterion requires a DFT or general MUB transition kind")
    if profile.n_a <= 1 or profile.n_b <= 1:
        raise ValueError("criterion excludes basis vectors (n_a or n_b equal to 1)")
    return 2 * profile.n_a > u.d or 2 * profile.n_b > u.d


# ---------------------------------------------------------------------------
# state file format: {"d": int, "amps_a": [[re, im], ...]}


def save_state(path: str | Path, psi: StateVector) -> None:
    payload = {
        "d": psi.d,
        "amps_a": [[float(a.real), float(a.imag)] for a in psi.amps_a],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_state(path: str | Path) -> StateVector:
    """Load a state file, normalizing and warning when the norm is off."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    d = int(payload["d"])
    raw = payload["amps_a"]
    if len(raw) != d:
        raise ValueError(f"state file declares d={d} but has {len(raw)} amplitudes")
    amps = np.array([complex(re, im) for re, im in raw], dtype=complex)
    nrm = float(np.linalg.norm(amps))
    if nrm == 0.0:
        raise ValueError("state file holds the zero vector")
    if abs(nrm - 1.0) > 1e-6:
        warnings.warn(f"state norm {nrm:.8g} deviates from 1; normalizing", stacklevel=2)
    return state_from_amplitudes(amps)
