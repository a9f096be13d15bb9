"""Antilinear symmetry checks and spectrum classification.

An antilinear symmetry is an invertible linear map P composed with complex
conjugation (T = K).  A matrix H commuting with it satisfies
``P conj(H) P^-1 = H`` and its eigenvalues are forced to be real or to come
in complex-conjugate pairs; this module checks the symmetry, classifies a
spectrum into those categories, and decides whether the symmetry is unbroken
(all eigenvalues real, eigenvectors shared with the antilinear map).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DefectiveMatrixError
from .linalg import EigenSystem, as_matrix, eig

__all__ = [
    "AntilinearSymmetry",
    "PTCheck",
    "SpectrumReport",
    "check_pt",
    "classify_spectrum",
    "classify_hamiltonian",
    "pt_unbroken",
    "gain_loss_dimer",
]

# Condition-number cap above which a linear part is treated as singular.
CONDITION_CAP = 1e12

# Classification tolerance, relative to the spectral radius.
DEFAULT_CLASSIFY_TOL = 1e-9


def gain_loss_dimer(s: float) -> np.ndarray:
    """Balanced gain/loss two-site matrix ``[[1+i, s], [s, 1-i]]``.

    The real coupling ``s`` tunes the spectrum: real for ``s >= 1``, a
    complex-conjugate pair for ``s < 1``, with the transition at ``s = 1``
    where the matrix becomes defective.
    """
    return np.array([[1.0 + 1.0j, s], [s, 1.0 - 1.0j]], dtype=complex)


@dataclass(frozen=True, eq=False)
class AntilinearSymmetry:
    """Antilinear map ``v -> P conj(v)``: invertible linear part P, T = K."""

    P: np.ndarray
    conjugation: bool = True  # fixed: T is complex conjugation

    def __post_init__(self):
        P = as_matrix(self.P)
        object.__setattr__(self, "P", P)
        if not self.conjugation:
            raise ValueError("only T = K (complex conjugation) is supported")
        cond = np.linalg.cond(P, 2)
        if not np.isfinite(cond) or cond > CONDITION_CAP:
            raise ValueError(f"linear part P is singular (condition estimate {cond:.3g})")

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Apply the antilinear map to a vector."""
        return self.P @ np.conj(v)


class PTCheck(NamedTuple):
    is_symmetric: bool
    residual: float


def check_pt(H, sym: AntilinearSymmetry, tol: float = 1e-10) -> PTCheck:
    """Check invariance of H under the antilinear map.

    Returns whether ``||P conj(H) P^-1 - H|| <= tol * ||H||`` together with
    the relative residual.
    """
    H = as_matrix(H)
    if H.shape != sym.P.shape:
        raise ValueError(
            f"dimension mismatch: H is {H.shape[0]}x{H.shape[0]}, "
            f"P is {sym.P.shape[0]}x{sym.P.shape[0]}"
        )
    if tol <= 0:
        raise ValueError("tol must be positive")
    P_inv = np.linalg.inv(sym.P)
    transformed = sym.P @ np.conj(H) @ P_inv
    h_norm = float(np.linalg.norm(H, "fro"))
    residual = float(np.linalg.norm(transformed - H, "fro"))
    if h_norm > 0.0:
        residual /= h_norm
    return PTCheck(residual <= tol, residual)


@dataclass(frozen=True)
class SpectrumReport:
    """Classification of a spectrum into antilinear-symmetry categories.

    ``real_values`` lists ``(value, multiplicity)``, ``conjugate_pairs``
    lists ``(E0, Gamma)`` with eigenvalues ``E0 +/- i Gamma``, and
    ``unmatched`` collects complex values with no conjugate partner within
    tolerance (a broken-antilinearity flag).  Every input eigenvalue lands in
    exactly one of those three; ``exceptional`` annotates defective clusters
    on top of that partition without removing values from it.
    """

    real_values: tuple[tuple[float, int], ...]
    conjugate_pairs: tuple[tuple[float, float], ...]
    unmatched: tuple[complex, ...]
    exceptional: tuple[tuple[complex, int], ...] = field(default=())
    tol_used: float = DEFAULT_CLASSIFY_TOL

    @property
    def broken(self) -> bool:
        return len(self.unmatched) > 0

    @property
    def total_multiplicity(self) -> int:
        return (
            sum(m for _, m in self.real_values)
            + 2 * len(self.conjugate_pairs)
            + len(self.unmatched)
        )

    def eigenvalue_list(self) -> list[complex]:
        """Reconstruct the classified eigenvalue multiset."""
        out: list[complex] = []
        for value, mult in self.real_values:
            out.extend([complex(value, 0.0)] * mult)
        for e0, gamma in self.conjugate_pairs:
            out.append(complex(e0, gamma))
            out.append(complex(e0, -gamma))
        out.extend(self.unmatched)
        return out

    def to_json(self) -> dict:
        return {
            "real": [{"value": v, "multiplicity": m} for v, m in self.real_values],
            "pairs": [{"e0": e0, "gamma": g} for e0, g in self.conjugate_pairs],
            "unmatched": [[z.real, z.imag] for z in self.unmatched],
            "exceptional": [
                {"value": [z.real, z.imag], "multiplicity": m} for z, m in self.exceptional
            ],
            "broken": self.broken,
            "tol_used": self.tol_used,
        }


def classify_spectrum(
    eigenvalues,
    tol: float = DEFAULT_CLASSIFY_TOL,
    defective_clusters=(),
) -> SpectrumReport:
    """Classify eigenvalues into real values, conjugate pairs and leftovers.

    Values with ``|Im| <= tol * spectral_radius`` count as real and are
    merged into multiplicity clusters.  The remaining values are paired
    greedily in ascending-real-part order, nearest conjugate first; anything
    without a partner within tolerance is reported as unmatched rather than
    raised.  ``defective_clusters`` (pairs of value, multiplicity) are copied
    into the ``exceptional`` annotation.
    """
    w = np.asarray(list(eigenvalues), dtype=complex)
    if w.size and not np.all(np.isfinite(w)):
        raise ValueError("eigenvalues must be finite")
    if tol <= 0:
        raise ValueError("tol must be positive")
    radius = float(np.max(np.abs(w))) if w.size else 0.0
    abs_tol = tol * radius

    real_mask = np.abs(w.imag) <= abs_tol
    reals = np.sort(w[real_mask].real)
    real_values: list[tuple[float, int]] = []
    i = 0
    while i < reals.size:
        j = i
        while j + 1 < reals.size and reals[j + 1] - reals[j] <= abs_tol:
            j += 1
        real_values.append((float(np.mean(reals[i : j + 1])), j - i + 1))
        i = j + 1

    rest = w[~real_mask]
    order = np.lexsort((rest.imag, rest.real))
    rest = rest[order]
    used = np.zeros(rest.size, dtype=bool)
    pairs: list[tuple[float, float]] = []
    unmatched: list[complex] = []
    for a in range(rest.size):
        if used[a] or rest[a].imag <= 0:
            continue
        target = np.conj(rest[a])
        best, best_dist = -1, np.inf
        for b in range(rest.size):
            if used[b] or b == a or rest[b].imag >= 0:
                continue
            d = abs(rest[b] - target)
            if d < best_dist:
                best, best_dist = b, d
        if best >= 0 and best_dist <= abs_tol:
            used[a] = used[best] = True
            e0 = float((rest[a].real + rest[best].real) / 2.0)
            gamma = float((rest[a].imag - rest[best].imag) / 2.0)
            pairs.append((e0, gamma))
    for a in range(rest.size):
        if not used[a]:
            unmatched.append(complex(rest[a]))

    pairs.sort()
    unmatched.sort(key=lambda z: (z.real, z.imag))
    return SpectrumReport(
        real_values=tuple(real_values),
        conjugate_pairs=tuple(pairs),
        unmatched=tuple(unmatched),
        exceptional=tuple((complex(v), int(m)) for v, m in defective_clusters),
        tol_used=tol,
    )


def classify_hamiltonian(H, tol: float = DEFAULT_CLASSIFY_TOL):
    """Eigendecompose H and classify its spectrum.

    Defective clusters found by the rank test are annotated in the report's
    ``exceptional`` list; their values are still categorized (a two-fold
    defect with a real eigenvalue shows up as a real value of multiplicity 2
    plus the annotation).

    Returns
    -------
    (SpectrumReport, EigenSystem)
    """
    eigsys = eig(as_matrix(H))
    # The rank test certifies each defective cluster as one eigenvalue; snap
    # its members to the cluster center so the sqrt-of-eps numerical splitting
    # at the defect does not masquerade as a genuine pair.
    w = eigsys.eigenvalues.copy()
    for d in eigsys.defects:
        for idx in d.members:
            w[idx] = d.value
    defects = [(d.value, d.algebraic) for d in eigsys.defects]
    report = classify_spectrum(w, tol=tol, defective_clusters=defects)
    return report, eigsys


def pt_unbroken(H, sym: AntilinearSymmetry, eigsys: EigenSystem, tol: float = 1e-8) -> bool:
    """Whether the antilinear symmetry is unbroken on the eigenbasis.

    True iff every right eigenvector is mapped to a multiple of itself by
    ``v -> P conj(v)`` (within ``tol``), which for a symmetric H with
    complete spectrum is equivalent to all eigenvalues being real.
    """
    H = as_matrix(H)
    if eigsys.defective:
        raise DefectiveMatrixError("symmetry phase is undefined for a defective spectrum")
    if H.shape != sym.P.shape:
        raise ValueError("dimension mismatch between H and the symmetry's linear part")
    for k in range(eigsys.n):
        v = eigsys.right[:, k]
        image = sym.apply(v)
        coeff = np.vdot(v, image) / np.vdot(v, v)
        defect = np.linalg.norm(image - coeff * v)
        scale = max(np.linalg.norm(image), 1e-300)
        if defect / scale > tol:
            return False
    return True
