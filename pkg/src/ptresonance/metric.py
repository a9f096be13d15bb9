"""Metric-operator construction and the conserved inner product.

A metric operator V intertwines a Hamiltonian with its adjoint,
``V H = H^dag V``; the sesquilinear form ``<x|V|y>`` is then conserved under
the (generally non-unitary) evolution generated by H.  This module selects
metric candidates from the intertwiner solution space, evaluates inner
products and the orthogonality/closure relations of the eigenbasis, and
certifies pseudo-Hermiticity residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DefectiveMatrixError, NoMetricError
from .linalg import EigenSystem, IntertwinerSpace, as_matrix

__all__ = [
    "MetricOperator",
    "DualPair",
    "PseudoHermiticityResiduals",
    "build_metric",
    "v_inner",
    "dual_pair",
    "closure_check",
    "verify_pseudo_hermiticity",
    "PAPER_GAUGE_V",
]

POLICIES = ("hermitian-representative", "paper-gauge", "first-basis")

# -i * sigma_y, the antisymmetric unit matrix; the canonical metric of a
# diagonal conjugate-pair two-level system.
PAPER_GAUGE_V = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)

CONDITION_CAP = 1e12
RESIDUAL_CAP = 1e-10
_SEARCH_SAMPLES = 128


@dataclass(frozen=True, eq=False)
class MetricOperator:
    """An intertwiner V with certification flags.

    ``residual`` is ``||VH - H^dag V||_F / (||V||_F ||H||_F)`` against the
    source Hamiltonian; ``condition_estimate`` is the 2-norm condition
    number and ``invertible`` is its comparison against the configured cap.
    """

    V: np.ndarray
    hermitian: bool
    invertible: bool
    condition_estimate: float
    residual: float

    def to_json(self) -> dict:
        from .linalg import matrix_to_json

        return {
            "V": matrix_to_json(self.V),
            "hermitian": self.hermitian,
            "invertible": self.invertible,
            "condition_estimate": self.condition_estimate,
            "residual": self.residual,
        }


@dataclass(frozen=True, eq=False)
class DualPair:
    """A ket with its metric-dual bra ``<R|V``."""

    ket: np.ndarray
    bra: np.ndarray


def dual_pair(ket, V) -> DualPair:
    ket = np.asarray(ket, dtype=complex)
    V = _metric_matrix(V)
    if ket.shape != (V.shape[0],):
        raise ValueError(f"dimension mismatch: ket has shape {ket.shape}, V is {V.shape}")
    return DualPair(ket=ket, bra=np.conj(ket) @ V)


def _metric_matrix(V) -> np.ndarray:
    if isinstance(V, MetricOperator):
        return V.V
    return as_matrix(V)


def _is_hermitian(V: np.ndarray, tol: float = 1e-12) -> bool:
    scale = max(float(np.linalg.norm(V, "fro")), 1e-300)
    return float(np.linalg.norm(V - V.conj().T, "fro")) / scale <= tol


def _intertwiner_residual(V: np.ndarray, H: np.ndarray) -> float:
    denom = max(float(np.linalg.norm(V, "fro")) * float(np.linalg.norm(H, "fro")), 1e-300)
    return float(np.linalg.norm(V @ H - H.conj().T @ V, "fro")) / denom


def _fix_sign(V: np.ndarray) -> np.ndarray:
    """Deterministic overall sign: trace positive, else first sizable entry."""
    tr = np.trace(V).real
    if abs(tr) > 1e-10 * np.linalg.norm(V, "fro"):
        return V if tr > 0 else -V
    flat = V.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > 1e-10 * np.max(np.abs(flat))))
    pivot = flat[idx]
    key = pivot.real if abs(pivot.real) > 1e-12 * abs(pivot) else pivot.imag
    return V if key > 0 else -V


def _certify(V: np.ndarray, H: np.ndarray, cond_cap: float) -> MetricOperator:
    cond = float(np.linalg.cond(V, 2))
    return MetricOperator(
        V=V,
        hermitian=_is_hermitian(V),
        invertible=bool(np.isfinite(cond) and cond <= cond_cap),
        condition_estimate=cond,
        residual=_intertwiner_residual(V, H),
    )


def _conjugate_pairing(eigenvalues: np.ndarray, tol: float) -> list[int] | None:
    """Index map c with eigenvalue[c[i]] == conj(eigenvalue[i]), or None."""
    n = eigenvalues.shape[0]
    scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
    ptol = tol * scale
    pair = [-1] * n
    for i in range(n):
        if pair[i] >= 0:
            continue
        if abs(eigenvalues[i].imag) <= ptol:
            pair[i] = i
            continue
        target = np.conj(eigenvalues[i])
        best, best_dist = -1, np.inf
        for j in range(n):
            if pair[j] >= 0 or j == i:
                continue
            d = abs(eigenvalues[j] - target)
            if d < best_dist:
                best, best_dist = j, d
        if best < 0 or best_dist > ptol:
            return None
        pair[i], pair[best] = best, i
    return pair


def _gram_candidate(eigsys: EigenSystem) -> np.ndarray | None:
    """Hermitian metric from left eigenvectors, V = sum_i L_i^dag L_c(i).

    Real eigenvalues contribute their own Gram block; conjugate-pair partners
    are cross-linked, which keeps the result both Hermitian and a solution of
    the intertwiner equation.
    """
    pairing = _conjugate_pairing(eigsys.eigenvalues, 1e-8)
    if pairing is None:
        return None
    L = eigsys.left
    V = np.zeros((eigsys.n, eigsys.n), dtype=complex)
    for i, j in enumerate(pairing):
        V += np.outer(np.conj(L[i]), L[j])
    return V


def build_metric(
    eigsys: EigenSystem,
    space: IntertwinerSpace,
    policy: str = "hermitian-representative",
    H=None,
    cond_cap: float = CONDITION_CAP,
) -> MetricOperator:
    """Select a metric operator from the intertwiner solution space.

    Policies
    --------
    ``hermitian-representative``
        Searches real linear combinations of the basis elements and their
        adjoints (all Hermitian by construction) and keeps the one that
        maximizes the smallest singular value at unit spectral norm.  The
        left-eigenvector Gram construction is tried first and wins ties, so
        a Hermitian Hamiltonian with orthonormal eigenvectors yields the
        identity.
    ``paper-gauge``
        For a 2x2 diagonal conjugate-pair system only; returns the exact
        antisymmetric unit matrix ``[[0, -1], [1, 0]]``.
    ``first-basis``
        First null-space basis element, normalized.

    The result is normalized to unit spectral norm with a deterministic sign
    and certified (Hermiticity, invertibility, intertwiner residual) against
    the source Hamiltonian (``H`` if given, otherwise reconstructed from the
    eigensystem).
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    if eigsys.defective:
        raise DefectiveMatrixError(
            "metric construction requires a complete eigenbasis; "
            "input is defective (exceptional point)"
        )
    if space.dimension < 1:
        raise NoMetricError("empty intertwiner space: no solution of V H = H^dag V")

    if H is None:
        H = (eigsys.right * eigsys.eigenvalues[np.newaxis, :]) @ eigsys.left
    else:
        H = as_matrix(H)
    n = H.shape[0]

    if policy == "paper-gauge":
        return _paper_gauge(H, cond_cap)

    if policy == "first-basis":
        V = space.basis[0]
        V = _fix_sign(V / np.linalg.norm(V, 2))
        return _certify(V, H, cond_cap)

    # hermitian-representative: collect Hermitian candidates, residual-check
    # each, keep the best-conditioned one (first strict winner).
    candidates: list[np.ndarray] = []
    gram = _gram_candidate(eigsys)
    if gram is not None:
        candidates.append(gram)
    for B in space.basis:
        candidates.append((B + B.conj().T) / 2.0)
        candidates.append((B - B.conj().T) / 2.0j)
    rng = np.random.default_rng(20250513)
    hermitian_gens = [c for c in candidates[(1 if gram is not None else 0) :]]
    for _ in range(_SEARCH_SAMPLES):
        coeffs = rng.standard_normal(len(hermitian_gens))
        V = sum(c * g for c, g in zip(coeffs, hermitian_gens))
        candidates.append(V)

    best_v = None
    best_smin = -1.0
    for V in candidates:
        nrm = float(np.linalg.norm(V, 2))
        if nrm < 1e-14:
            continue
        V = V / nrm
        if not _is_hermitian(V, 1e-10):
            continue
        if _intertwiner_residual(V, H) > RESIDUAL_CAP:
            continue
        smin = float(np.linalg.svd(V, compute_uv=False)[-1])
        if smin > best_smin * (1.0 + 1e-9):
            best_smin = smin
            best_v = V

    if best_v is None:
        raise NoMetricError("no Hermitian intertwiner found in the searched combinations")
    if best_smin < 1.0 / cond_cap:
        err = NoMetricError(
            "no invertible Hermitian intertwiner found: best candidate has "
            f"smallest singular value {best_smin:.3g} at unit spectral norm"
        )
        err.best_candidate = best_v
        raise err
    return _certify(_fix_sign(best_v), H, cond_cap)


def _paper_gauge(H: np.ndarray, cond_cap: float) -> MetricOperator:
    n = H.shape[0]
    scale = max(float(np.linalg.norm(H, "fro")), 1e-300)
    ptol = 1e-8 * scale
    if n != 2:
        raise ValueError("paper-gauge policy applies to 2x2 systems only")
    if abs(H[0, 1]) > ptol or abs(H[1, 0]) > ptol:
        raise ValueError("paper-gauge policy requires a diagonal system")
    if abs(H[1, 1] - np.conj(H[0, 0])) > ptol or abs(H[0, 0].imag) <= ptol:
        raise ValueError("paper-gauge policy requires a conjugate-pair diagonal system")
    return _certify(PAPER_GAUGE_V.copy(), H, cond_cap)


def v_inner(x, y, V) -> complex:
    """Metric inner product ``x^dag V y``; reduces to Dirac for V = I."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    V = _metric_matrix(V)
    if x.shape != (V.shape[0],) or y.shape != (V.shape[0],):
        raise ValueError(
            f"dimension mismatch: x {x.shape}, y {y.shape}, V {V.shape}"
        )
    return complex(np.vdot(x, V @ y))


def closure_check(kets, bras, V) -> float:
    """Residual of the signed outer-product completeness relation.

    Builds the inner-product (Gram) matrix ``G_ij = bras_i . kets_j`` and
    returns ``|| sum_ij (G^-1)_ij |ket_i><bra_j| - I ||_F``: the dual-basis
    resolution of the identity, which reduces to the signed two-term sum for
    a conjugate-pair system where G is a signed permutation.
    """
    V = _metric_matrix(V)
    n = V.shape[0]
    kets = [np.asarray(k, dtype=complex) for k in kets]
    bras = [np.asarray(b, dtype=complex) for b in bras]
    if len(kets) != n or len(bras) != n:
        raise ValueError(f"need exactly {n} kets and {n} bras, got {len(kets)}/{len(bras)}")
    K = np.column_stack(kets)
    B = np.vstack(bras)
    G = B @ K
    try:
        W = np.linalg.solve(G, np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise DefectiveMatrixError(
            "inner-product matrix is singular; the kets/bras do not form a "
            "complete dual system"
        ) from exc
    return float(np.linalg.norm(K @ W @ B - np.eye(n), "fro"))


class PseudoHermiticityResiduals(NamedTuple):
    intertwiner: float  # ||VH - H^dag V|| / (||V|| ||H||)
    similarity: float  # ||V H V^-1 - H^dag|| / ||H||


def verify_pseudo_hermiticity(H, V) -> PseudoHermiticityResiduals:
    """Both normalized residuals of the pseudo-Hermiticity condition."""
    H = as_matrix(H)
    V = _metric_matrix(V)
    if H.shape != V.shape:
        raise ValueError(f"dimension mismatch: H {H.shape}, V {V.shape}")
    cond = np.linalg.cond(V, 2)
    if not np.isfinite(cond) or cond > CONDITION_CAP:
        raise ValueError(f"V is singular (condition estimate {cond:.3g})")
    h_norm = max(float(np.linalg.norm(H, "fro")), 1e-300)
    inter = _intertwiner_residual(V, H)
    sim = float(np.linalg.norm(V @ H @ np.linalg.inv(V) - H.conj().T, "fro")) / h_norm
    return PseudoHermiticityResiduals(intertwiner=inter, similarity=sim)
