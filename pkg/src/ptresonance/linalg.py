"""Dense complex linear algebra for small non-Hermitian operators.

Provides the biorthogonal eigendecomposition (right and left eigenvectors
normalized to ``L_i R_j = delta_ij``) with detection of defective spectra,
the vectorized null-space solver for the intertwiner equation
``V H = H^dag V``, and the spectral time-evolution operator
``U(t) = exp(-i H t)``.

All routines work on plain ``numpy`` arrays of complex numbers; matrices are
validated to be square with finite entries before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DefectiveMatrixError, OverflowRangeError

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "as_matrix",
    "matrix_from_json",
    "matrix_to_json",
    "DefectCluster",
    "EigenSystem",
    "IntertwinerSpace",
    "eig",
    "solve_intertwiner",
    "mat_exp_evolution",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# A two-fold eigenvalue defect splits the computed eigenvalues by roughly
# sqrt(machine eps) * ||H|| times a modest constant, so the defect test
# cannot resolve clusters tighter than this floor.
DEFECT_FLOOR = 1e-7

# exp() overflows double precision near 709; stay clear of it.
EXP_CAP = 300.0


def as_matrix(data) -> np.ndarray:
    """Validate and return ``data`` as a square complex matrix.

    Raises ``ValueError`` for non-square shapes or non-finite entries.
    """
    m = np.asarray(data, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"matrix must be square and non-empty, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the matrix interchange format.

    The wire format is ``{"n": int, "entries": [[[re, im], ...], ...]}`` with
    row-major entries.  Raises ``ValueError`` naming the offending field on
    malformed input.
    """
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON: top-level value must be an object")
    if "n" not in obj:
        raise ValueError("matrix JSON: missing field 'n'")
    if "entries" not in obj:
        raise ValueError("matrix JSON: missing field 'entries'")
    n = obj["n"]
    if not isinstance(n, int) or n <= 0:
        raise ValueError(f"matrix JSON: field 'n' must be a positive integer, got {n!r}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        raise ValueError(f"matrix JSON: field 'entries' must be a list of {n} rows")
    m = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix JSON: entries[{i}] must be a list of {n} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValueError(f"matrix JSON: entries[{i}][{j}] must be a [re, im] pair")
            re, im = pair
            if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                raise ValueError(f"matrix JSON: entries[{i}][{j}] must hold two numbers")
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ValueError(f"matrix JSON: entries[{i}][{j}] is non-finite")
            m[i, j] = complex(re, im)
    return m


def matrix_to_json(m) -> dict:
    """Serialize a square complex matrix to the interchange format."""
    m = as_matrix(m)
    n = m.shape[0]
    entries = [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(n)] for i in range(n)]
    return {"n": n, "entries": entries}


@dataclass(frozen=True)
class DefectCluster:
    """An eigenvalue cluster whose geometric multiplicity is deficient."""

    value: complex
    algebraic: int
    geometric: int
    members: tuple[int, ...] = ()  # indices into the sorted eigenvalue array


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues with biorthonormalized right/left eigenvectors.

    ``right`` holds right eigenvectors as columns, ``left`` holds left
    eigenvectors as rows, scaled so that ``left @ right == I`` and each right
    vector has unit Euclidean norm with its first nonzero component real
    positive.  When the spectrum is defective both are ``None``.

    ``residual`` is the largest of the eigen-equation, biorthonormality and
    completeness residuals (eigen-equation only when defective).
    """

    eigenvalues: np.ndarray
    right: np.ndarray | None
    left: np.ndarray | None
    defective: bool
    residual: float
    defects: tuple[DefectCluster, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True, eq=False)
class IntertwinerSpace:
    """Basis of the solution space of ``V H = H^dag V``.

    The basis elements are orthonormal under the Frobenius inner product
    (they come from an SVD null space), hence linearly independent.
    """

    basis: tuple[np.ndarray, ...]
    dimension: int


def _phase_gauge(columns: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero component is real positive."""
    out = columns.copy()
    n = out.shape[1]
    for k in range(n):
        v = out[:, k]
        nrm = np.max(np.abs(v))
        if nrm == 0.0:
            continue
        idx = int(np.argmax(np.abs(v) > 1e-12 * nrm))
        pivot = v[idx]
        out[:, k] = v * (abs(pivot) / pivot)
    return out


def _cluster_eigenvalues(w: np.ndarray, radius: float) -> list[list[int]]:
    """Group eigenvalues into clusters of mutual distance <= radius (chained)."""
    order = np.lexsort((w.imag, w.real))
    clusters: list[list[int]] = []
    assigned = np.zeros(w.shape[0], dtype=bool)
    for i in order:
        if assigned[i]:
            continue
        members = [int(i)]
        assigned[i] = True
        changed = True
        while changed:
            changed = False
            center = np.mean(w[members])
            for j in order:
                if not assigned[j] and abs(w[j] - center) <= radius:
                    members.append(int(j))
                    assigned[j] = True
                    changed = True
        clusters.append(sorted(members))
    return clusters


def eig(H, tol: float = 1e-10) -> EigenSystem:
    """Biorthogonal eigendecomposition of a square complex matrix.

    Eigenvalues are sorted by real part, then imaginary part.  Defectiveness
    is decided by a rank test: eigenvalues are clustered with radius
    ``max(tol, 1e-8) * ||H||`` and a cluster of algebraic multiplicity m is
    defective when ``H - mean(cluster) I`` has fewer than m singular values
    below the same threshold.  For a defective spectrum the eigenvector
    blocks are omitted (the spectral formula is invalid there).

    Parameters
    ----------
    H : array_like, shape (n, n)
        Complex matrix.
    tol : float
        Relative tolerance for the defectiveness rank test.

    Returns
    -------
    EigenSystem
    """
    H = as_matrix(H)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = H.shape[0]
    try:
        w, R_raw = np.linalg.eig(H)
    except np.linalg.LinAlgError as exc:
        # LAPACK does not expose the iteration count; forward its message.
        raise ConvergenceError(f"eigenvalue iteration failed to converge: {exc}") from exc

    order = np.lexsort((w.imag, w.real))
    w = w[order]
    R_raw = R_raw[:, order]

    h_norm = float(np.linalg.norm(H, 2))
    eig_res = 0.0
    if h_norm > 0.0:
        eig_res = float(np.linalg.norm(H @ R_raw - R_raw * w[np.newaxis, :], "fro")) / h_norm

    # Rank test for geometric multiplicity on each eigenvalue cluster.
    radius = max(tol, DEFECT_FLOOR) * max(h_norm, 1e-300)
    defects: list[DefectCluster] = []
    for members in _cluster_eigenvalues(w, radius):
        algebraic = len(members)
        if algebraic == 1:
            continue
        center = complex(np.mean(w[members]))
        sv = np.linalg.svd(H - center * np.eye(n), compute_uv=False)
        geometric = int(np.sum(sv <= radius))
        if geometric < algebraic:
            defects.append(DefectCluster(center, algebraic, geometric, tuple(members)))

    if defects:
        return EigenSystem(
            eigenvalues=w,
            right=None,
            left=None,
            defective=True,
            residual=eig_res,
            defects=tuple(defects),
        )

    R = _phase_gauge(R_raw / np.linalg.norm(R_raw, axis=0, keepdims=True))
    L = np.linalg.inv(R)
    biorth = float(np.linalg.norm(L @ R - np.eye(n), "fro"))
    complete = float(np.linalg.norm(R @ L - np.eye(n), "fro"))
    residual = max(eig_res, biorth, complete)
    return EigenSystem(
        eigenvalues=w,
        right=R,
        left=L,
        defective=False,
        residual=residual,
    )


def solve_intertwiner(H, tol: float = 1e-10) -> IntertwinerSpace:
    """Basis of all solutions V of the intertwiner equation ``V H = H^dag V``.

    The equation is vectorized row-major, giving the n^2 x n^2 linear map
    ``kron(I, H^T) - kron(H^dag, I)``; the solution space is read off from
    the singular vectors whose singular values fall below
    ``tol * max(singular values)``.

    Parameters
    ----------
    H : array_like, shape (n, n)
    tol : float
        Relative singular-value cutoff for the null space.

    Returns
    -------
    IntertwinerSpace
    """
    H = as_matrix(H)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = H.shape[0]
    eye = np.eye(n)
    K = np.kron(eye, H.T) - np.kron(H.conj().T, eye)
    _, s, Vh = np.linalg.svd(K)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        null_idx = np.arange(n * n)
    else:
        null_idx = np.nonzero(s <= tol * smax)[0]
    basis = tuple(Vh[i].conj().reshape(n, n) for i in null_idx)
    return IntertwinerSpace(basis=basis, dimension=len(basis))


def mat_exp_evolution(eigsys: EigenSystem, t: float) -> np.ndarray:
    """Evolution operator ``U(t) = sum_i exp(-i lambda_i t) R_i L_i``.

    Raises ``DefectiveMatrixError`` for a defective eigensystem and
    ``OverflowRangeError`` when a growing mode would exceed ``exp(300)``.
    """
    if eigsys.defective:
        raise DefectiveMatrixError(
            "spectral evolution formula is invalid for a defective spectrum: "
            + ", ".join(
                f"eigenvalue {d.value:.6g} has geometric multiplicity "
                f"{d.geometric} < algebraic {d.algebraic}"
                for d in eigsys.defects
            )
        )
    growth = np.max(eigsys.eigenvalues.imag * t)
    if growth > EXP_CAP:
        raise OverflowRangeError(
            f"exp({growth:.3g}) overflows double precision (cap {EXP_CAP:g})"
        )
    phases = np.exp(-1j * eigsys.eigenvalues * t)
    return (eigsys.right * phases[np.newaxis, :]) @ eigsys.left
