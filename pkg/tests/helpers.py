"""Shared test oracles and random-input builders.

Everything here is deliberately independent of the package internals: the
quadratic eigenvalue oracle works straight from the characteristic
polynomial, and the symmetric-matrix builder constructs P conj(H) P^-1 = H
by hand from a real involution P.
"""

import numpy as np


def quadratic_eigenvalues(m):
    """Eigenvalues of a 2x2 matrix from the characteristic polynomial."""
    m = np.asarray(m, dtype=complex)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = np.sqrt(tr * tr - 4.0 * det + 0j)
    roots = [(tr + disc) / 2.0, (tr - disc) / 2.0]
    return sorted(roots, key=lambda z: (z.real, z.imag))


def random_involution(rng, n, max_cond=50.0):
    """Real matrix P with P @ P = I, moderately conditioned."""
    while True:
        S = rng.standard_normal((n, n))
        if np.linalg.cond(S) <= max_cond:
            break
    signs = rng.choice([-1.0, 1.0], size=n)
    return S @ np.diag(signs) @ np.linalg.inv(S)


def random_pt_symmetric(rng, n):
    """Random H with P conj(H) P^-1 = H for a real involution P.

    Any B symmetrized as B + P conj(B) P^-1 commutes with the antilinear
    map v -> P conj(v) because P is real and squares to the identity.
    """
    P = random_involution(rng, n)
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = B + P @ B.conj() @ np.linalg.inv(P)
    return H, P


def random_complex_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
