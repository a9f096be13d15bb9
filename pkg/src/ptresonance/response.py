"""Resonance response in the energy and time domains.

Covers the single-pole decaying-resonance propagator ``1/(E - E0 + i Gamma)``
and its balanced two-pole counterpart with poles at ``E0 -/+ i Gamma``,
scattering phase shifts with their Wigner time delay (and the time-advance
branch with the opposite sign), and time-domain forms obtained by residue
summation with explicit per-pole contour bookkeeping.  The single-pole
transform is also computable by direct quadrature of the inverse Fourier
integral, which serves as the independent cross-check; the two-pole form has
a growing mode and is residue-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import OverflowRangeError
from .linalg import EXP_CAP

__all__ = [
    "ResonanceParams",
    "PropagatorModel",
    "ResponseCurve",
    "QuadratureResult",
    "bw_propagator",
    "pt_propagator",
    "phase_shift",
    "time_delay",
    "scattering_amplitude",
    "build_model",
    "inverse_ft",
    "quadrature_ift",
    "default_energy_grid",
    "energy_response",
]

BRANCHES = ("delay", "advance")
MODEL_KINDS = ("breit-wigner", "pt-pair")

# Contour-membership flags: which half-plane closure a pole contributes to.
LOWER = "lower"  # contributes for t > 0
UPPER = "upper"  # contributes for t < 0

_FORM_CHECK_TOL = 1e-13


@dataclass(frozen=True)
class ResonanceParams:
    """Resonance energy E0 and half-width Gamma (hbar = 1)."""

    e0: float
    gamma: float

    def __post_init__(self):
        if not (np.isfinite(self.e0) and np.isfinite(self.gamma)):
            raise ValueError("resonance parameters must be finite")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


def _as_grid(E):
    arr = np.asarray(E, dtype=float)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr), scalar


def _branch_sign(branch: str) -> float:
    if branch not in BRANCHES:
        raise ValueError(f"unknown branch {branch!r}; expected one of {BRANCHES}")
    return 1.0 if branch == "delay" else -1.0


def bw_propagator(E, p: ResonanceParams):
    """Single-pole resonance propagator ``1/(E - E0 + i Gamma)``.

    Every evaluation is verified against the rationalized form
    ``(E - E0 - i Gamma) / ((E - E0)^2 + Gamma^2)``.
    """
    x, scalar = _as_grid(E)
    d = x - p.e0
    value = 1.0 / (d + 1j * p.gamma)
    rational = (d - 1j * p.gamma) / (d * d + p.gamma * p.gamma)
    if np.max(np.abs(value - rational) / np.abs(rational)) > _FORM_CHECK_TOL:
        raise FloatingPointError("propagator forms disagree beyond machine precision")
    return complex(value[0]) if scalar else value


def pt_propagator(E, p: ResonanceParams):
    """Balanced two-pole propagator, ``-2 i Gamma / ((E - E0)^2 + Gamma^2)``.

    Computed both as the two-pole sum
    ``1/(E - (E0 - i Gamma)) - 1/(E - (E0 + i Gamma))`` and as the closed
    form; the two must agree to 1e-13 relative.  The value is purely
    imaginary with negative imaginary part for every real E.
    """
    x, scalar = _as_grid(E)
    d = x - p.e0
    two_pole = 1.0 / (d + 1j * p.gamma) - 1.0 / (d - 1j * p.gamma)
    closed = -2j * p.gamma / (d * d + p.gamma * p.gamma)
    if np.max(np.abs(two_pole - closed) / np.abs(closed)) > _FORM_CHECK_TOL:
        raise FloatingPointError("two-pole and closed propagator forms disagree")
    return complex(closed[0]) if scalar else closed


def phase_shift(E, p: ResonanceParams, branch: str = "delay"):
    """Scattering phase shift, continuous through the resonance.

    delay branch: ``tan(delta) = Gamma / (E0 - E)``, rising 0 -> pi with
    ``delta(E0) = +pi/2``; advance branch: the opposite sign, falling
    0 -> -pi with ``delta(E0) = -pi/2``.  The two-argument arctangent keeps
    the branch continuous (no pi jumps) since the Gamma component never
    vanishes.
    """
    sign = _branch_sign(branch)
    x, scalar = _as_grid(E)
    delta = np.arctan2(sign * p.gamma, p.e0 - x)
    return float(delta[0]) if scalar else delta


def time_delay(E, p: ResonanceParams, branch: str = "delay"):
    """Wigner time delay ``d delta / dE`` in closed form (hbar = 1).

    ``+Gamma / ((E - E0)^2 + Gamma^2)`` on the delay branch, its exact
    negative on the advance branch; peak value ``+/- 1/Gamma`` at E = E0.
    """
    sign = _branch_sign(branch)
    x, scalar = _as_grid(E)
    d = x - p.e0
    value = sign * p.gamma / (d * d + p.gamma * p.gamma)
    return float(value[0]) if scalar else value


def scattering_amplitude(E, p: ResonanceParams, branch: str = "delay"):
    """Resonant amplitude ``exp(i delta) sin(delta)`` (normalization 1)."""
    delta = np.asarray(phase_shift(E, p, branch))
    value = np.exp(1j * delta) * np.sin(delta)
    return value.item() if value.ndim == 0 else value


@dataclass(frozen=True, eq=False)
class PropagatorModel:
    """Finite pole/residue model with per-pole contour membership.

    ``closure[k]`` is ``"lower"`` when pole k contributes to the t > 0
    closure and ``"upper"`` when it contributes to t < 0.  A pole above the
    real axis may still carry the ``"lower"`` flag: that encodes deforming
    the contour around it so that both poles of a balanced pair act in the
    same (t > 0) closure.
    """

    poles: np.ndarray
    residues: np.ndarray
    closure: tuple[str, ...]

    def __post_init__(self):
        poles = np.asarray(self.poles, dtype=complex)
        residues = np.asarray(self.residues, dtype=complex)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "residues", residues)
        if poles.ndim != 1 or poles.shape != residues.shape:
            raise ValueError("poles and residues must be 1-D and the same length")
        if len(self.closure) != poles.shape[0]:
            raise ValueError("closure flags must match the number of poles")
        if any(c not in (LOWER, UPPER) for c in self.closure):
            raise ValueError(f"closure flags must be '{LOWER}' or '{UPPER}'")
        if poles.shape[0] >= 2:
            diffs = np.abs(poles[:, None] - poles[None, :])
            np.fill_diagonal(diffs, np.inf)
            if np.min(diffs) == 0.0:
                raise ValueError("poles must be distinct (simple poles only)")

    def evaluate(self, E):
        """Energy-domain value ``sum_k r_k / (E - p_k)``."""
        x, scalar = _as_grid(E)
        value = np.sum(self.residues[:, None] / (x[None, :] - self.poles[:, None]), axis=0)
        return complex(value[0]) if scalar else value

    def to_json(self) -> dict:
        return {
            "poles": [[z.real, z.imag] for z in self.poles],
            "residues": [[z.real, z.imag] for z in self.residues],
            "closure": list(self.closure),
        }


def model_from_json(obj: dict) -> PropagatorModel:
    for key in ("poles", "residues", "closure"):
        if key not in obj:
            raise ValueError(f"model JSON: missing field {key!r}")
    poles = [complex(re, im) for re, im in obj["poles"]]
    residues = [complex(re, im) for re, im in obj["residues"]]
    return PropagatorModel(
        poles=np.array(poles), residues=np.array(residues), closure=tuple(obj["closure"])
    )


def build_model(kind: str, p: ResonanceParams) -> PropagatorModel:
    """Pole/residue model of the named propagator.

    ``breit-wigner``: one pole at ``E0 - i Gamma`` with residue 1 in the
    lower contour.  ``pt-pair``: poles ``E0 - i Gamma`` (residue +1) and
    ``E0 + i Gamma`` (residue -1), *both* flagged lower-contour -- the upper
    pole is wrapped by a contour deformation so the pair acts together for
    t > 0 and nothing contributes for t < 0.
    """
    if kind == "breit-wigner":
        return PropagatorModel(
            poles=np.array([p.e0 - 1j * p.gamma]),
            residues=np.array([1.0 + 0.0j]),
            closure=(LOWER,),
        )
    if kind == "pt-pair":
        return PropagatorModel(
            poles=np.array([p.e0 - 1j * p.gamma, p.e0 + 1j * p.gamma]),
            residues=np.array([1.0 + 0.0j, -1.0 + 0.0j]),
            closure=(LOWER, LOWER),
        )
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


def inverse_ft(model: PropagatorModel, t):
    """Time-domain propagator by residue summation.

    With the ``1/(2 pi)`` inverse-transform normalization, a lower-contour
    pole contributes ``-i r exp(-i p t)`` for t > 0 and an upper-contour
    pole ``+i r exp(-i p t)`` for t < 0; t = 0 takes the t -> 0+ branch.
    """
    ts, scalar = _as_grid(t)
    if not np.all(np.isfinite(ts)):
        raise ValueError("t must be finite")
    out = np.zeros(ts.shape, dtype=complex)
    lower = np.array([c == LOWER for c in model.closure])
    for sign, mask, pole_mask in (
        (-1j, ts >= 0, lower),
        (+1j, ts < 0, ~lower),
    ):
        if not np.any(mask) or not np.any(pole_mask):
            continue
        poles = model.poles[pole_mask]
        residues = model.residues[pole_mask]
        exponents = np.outer(poles.imag, ts[mask])  # |exp(-i p t)| = exp(Im p * t)
        if np.max(exponents) > EXP_CAP:
            raise OverflowRangeError(
                f"residue exponent {np.max(exponents):.3g} exceeds cap {EXP_CAP:g}"
            )
        out[mask] = sign * np.sum(
            residues[:, None] * np.exp(-1j * np.outer(poles, ts[mask])), axis=0
        )
    return complex(out[0]) if scalar else out


class QuadratureResult(NamedTuple):
    value: complex
    tail_estimate: float


# Gauss-Legendre nodes per panel; 6 keeps panel error negligible next to the
# truncation tail at the panel counts used here.
_GL_POINTS = 6


def quadrature_ift(p: ResonanceParams, t: float, L: float, N: int) -> QuadratureResult:
    """Direct quadrature of the single-pole inverse Fourier integral.

    Composite Gauss-Legendre over ``[E0 - L, E0 + L]`` with N panels applied
    to ``(1/2 pi) integral exp(-i E t) / (E - E0 + i Gamma) dE``.  Only the
    single-pole (absolutely integrable) form is supported; the balanced pair
    has a growing mode and no convergent real-axis integral.  The returned
    tail estimate ``1/(pi L)`` bounds the truncated |E - E0| > L
    contribution up to oscillation.
    """
    if L <= 0:
        raise ValueError("truncation half-width L must be positive")
    if not isinstance(N, (int, np.integer)) or N <= 0:
        raise ValueError("panel count N must be a positive integer")
    nodes, weights = np.polynomial.legendre.leggauss(_GL_POINTS)
    edges = np.linspace(p.e0 - L, p.e0 + L, N + 1)
    centers = (edges[:-1] + edges[1:]) / 2.0
    half = (edges[1] - edges[0]) / 2.0
    E = (centers[:, None] + half * nodes[None, :]).reshape(-1)
    w = np.broadcast_to(half * weights[None, :], (N, _GL_POINTS)).reshape(-1)
    integrand = np.exp(-1j * E * t) * bw_propagator(E, p)
    value = complex(np.sum(w * integrand) / (2.0 * np.pi))
    return QuadratureResult(value=value, tail_estimate=1.0 / (np.pi * L))


@dataclass(frozen=True, eq=False)
class ResponseCurve:
    """Values sampled on a strictly ascending grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", np.asarray(self.values))
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("grid must be a non-empty 1-D array")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly ascending")
        if self.values.shape[0] != grid.shape[0]:
            raise ValueError("grid and values lengths disagree")


def default_energy_grid(p: ResonanceParams, halfwidth: float = 20.0, points: int = 2001):
    """Grid of ``points`` energies spanning ``E0 +/- halfwidth * Gamma``."""
    return np.linspace(p.e0 - halfwidth * p.gamma, p.e0 + halfwidth * p.gamma, points)


def energy_response(kind: str, p: ResonanceParams, energies) -> dict:
    """Column table of the energy-domain response on a grid.

    Keys: E, re_d, im_d, delta_delay, delta_advance, dt_delay, dt_advance.
    """
    E = np.asarray(energies, dtype=float)
    model = build_model(kind, p)
    d = model.evaluate(E)
    return {
        "E": E,
        "re_d": d.real,
        "im_d": d.imag,
        "delta_delay": phase_shift(E, p, "delay"),
        "delta_advance": phase_shift(E, p, "advance"),
        "dt_delay": time_delay(E, p, "delay"),
        "dt_advance": time_delay(E, p, "advance"),
    }
