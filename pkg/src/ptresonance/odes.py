"""Second-order linear wave equations and a fixed-step RK4 integrator.

Two constant-coefficient equations are provided in monic form
``psi'' + c1 psi' + c0 psi = 0``:

* the balanced-pair wave equation ``psi'' + 2 i E0 psi' - (E0^2 + Gamma^2)
  psi = 0`` whose fundamental solutions ``exp(-i E0 t +/- Gamma t)`` carry
  one growing and one decaying mode, and
* the damped-oscillator equation ``psi'' + 2 Gamma psi' + (E0^2 + Gamma^2)
  psi = 0`` whose solutions ``exp(+/- i E0 t - Gamma t)`` are both damped.

Integration is classical fixed-step fourth-order Runge-Kutta on the
equivalent first-order complex system, chosen over adaptive schemes so runs
are deterministic and the global error scales cleanly as step^4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OverflowRangeError
from .linalg import EXP_CAP
from .response import ResonanceParams

__all__ = [
    "SecondOrderIVP",
    "TimeSeries",
    "pt_wave_equation",
    "damped_oscillator_equation",
    "characteristic_roots",
    "pt_wave_ivp",
    "damped_oscillator_ivp",
    "integrate",
]

# Enforced stability/accuracy margin: step * max |characteristic root|.
MAX_STEP_ROOT = 0.1


def characteristic_roots(coefficients) -> np.ndarray:
    """Roots of ``c2 r^2 + c1 r + c0 = 0`` for the coefficient triple.

    Uses the cancellation-avoiding quadratic formula (larger root first, the
    other from the product), which keeps full precision even when the roots
    coalesce -- companion-matrix root finders lose half the digits there.
    """
    c2, c1, c0 = (complex(c) for c in coefficients)
    c1, c0 = c1 / c2, c0 / c2
    disc = np.sqrt(c1 * c1 - 4.0 * c0)
    cand_plus = (-c1 + disc) / 2.0
    cand_minus = (-c1 - disc) / 2.0
    r1 = cand_plus if abs(cand_plus) >= abs(cand_minus) else cand_minus
    r2 = c0 / r1 if r1 != 0 else 0.0j
    return np.array([r1, r2])


def pt_wave_equation(p: ResonanceParams):
    """Monic coefficients ``(1, 2 i E0, -(E0^2 + Gamma^2))``.

    The characteristic roots are verified to equal ``-i (E0 +/- i Gamma)``,
    i.e. the solutions are ``exp(-i E0 t +/- Gamma t)``: the time-domain
    factorization of the balanced pole pair ``E0 +/- i Gamma``.
    """
    coeffs = (1.0, 2j * p.e0, -(p.e0**2 + p.gamma**2))
    expected = np.array([-1j * (p.e0 + 1j * p.gamma), -1j * (p.e0 - 1j * p.gamma)])
    _check_roots(coeffs, expected)
    return coeffs


def damped_oscillator_equation(p: ResonanceParams):
    """Monic coefficients ``(1, 2 Gamma, E0^2 + Gamma^2)``.

    Both solutions ``exp(-+ i E0 t - Gamma t)`` decay; in energy space the
    equation factorizes over ``{E0 - i Gamma, -E0 - i Gamma}`` (the second
    root flips the sign of E0, not of the damping).
    """
    coeffs = (1.0, 2.0 * p.gamma, p.e0**2 + p.gamma**2)
    _check_roots(coeffs, np.array([-p.gamma - 1j * p.e0, -p.gamma + 1j * p.e0]))
    # energy-space roots E = i r
    energies = 1j * characteristic_roots(coeffs)
    expected = np.array([p.e0 - 1j * p.gamma, -p.e0 - 1j * p.gamma])
    if _match_distance(energies, expected) > 1e-10 * max(1.0, abs(p.e0), p.gamma):
        raise FloatingPointError("energy-space factorization check failed")
    return coeffs


def _match_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Greatest distance under greedy nearest matching of the two sets."""
    remaining = list(b)
    worst = 0.0
    for z in a:
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - z))
        worst = max(worst, abs(remaining[j] - z))
        remaining.pop(j)
    return worst


def _check_roots(coeffs, expected: np.ndarray):
    roots = characteristic_roots(coeffs)
    scale = max(1.0, float(np.max(np.abs(expected))))
    # rounding the coefficients themselves shifts near-coalescent roots by
    # O(sqrt(eps)); well-separated roots sit at the 1e-10 level
    tol = (1e-10 + 4.0 * np.sqrt(np.finfo(float).eps)) * scale
    if _match_distance(roots, expected) > tol:
        raise FloatingPointError("characteristic-root verification failed")


@dataclass(frozen=True, eq=False)
class SecondOrderIVP:
    """Monic second-order IVP on a time grid.

    ``c2`` must be 1; ``times`` is a strictly ascending grid with
    ``times[0] >= 0`` (the initial data live at t = 0) and ``step`` is the
    RK4 step, subdivided evenly so every grid point is hit exactly.
    """

    c1: complex
    c0: complex
    psi0: complex
    dpsi0: complex
    times: np.ndarray
    step: float
    c2: float = 1.0

    def __post_init__(self):
        if self.c2 != 1.0:
            raise ValueError("coefficients must be monic (c2 = 1)")
        t = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "times", t)
        if t.ndim != 1 or t.size == 0:
            raise ValueError("times must be a non-empty 1-D grid")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly ascending")
        if t[0] < 0:
            raise ValueError("times must start at or after t = 0")
        if not (self.step > 0):
            raise ValueError("step must be positive")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    times: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray


def _rk4_span(c1: complex, c0: complex, y: np.ndarray, t0: float, t1: float, step: float):
    """Advance y = (psi, psi') from t0 to t1 in equal substeps <= step."""
    span = t1 - t0
    if span == 0.0:
        return y
    nsub = max(1, int(np.ceil(span / step - 1e-12)))
    h = span / nsub

    def f(y):
        return np.array([y[1], -c1 * y[1] - c0 * y[0]])

    for _ in range(nsub):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def integrate(ivp: SecondOrderIVP) -> TimeSeries:
    """Fixed-step RK4 integration of the IVP over its time grid.

    Enforces ``step * max|root| <= 0.1`` and guards against growing-mode
    overflow; global error is O(step^4).
    """
    roots = characteristic_roots((ivp.c2, ivp.c1, ivp.c0))
    rho = float(np.max(np.abs(roots)))
    if ivp.step * rho > MAX_STEP_ROOT:
        raise ValueError(
            f"step {ivp.step:g} too large: step * max|root| = {ivp.step * rho:.3g} "
            f"exceeds {MAX_STEP_ROOT:g}"
        )
    t_end = float(ivp.times[-1])
    growth = float(np.max(roots.real)) * t_end
    if growth > EXP_CAP:
        raise OverflowRangeError(f"growing-mode exponent {growth:.3g} exceeds cap {EXP_CAP:g}")

    y = np.array([ivp.psi0, ivp.dpsi0], dtype=complex)
    t_prev = 0.0
    psi = np.empty(ivp.times.size, dtype=complex)
    dpsi = np.empty(ivp.times.size, dtype=complex)
    for k, tk in enumerate(ivp.times):
        y = _rk4_span(ivp.c1, ivp.c0, y, t_prev, float(tk), ivp.step)
        psi[k], dpsi[k] = y
        t_prev = float(tk)
    if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(dpsi))):
        raise OverflowRangeError("integration produced non-finite values")
    return TimeSeries(times=ivp.times.copy(), psi=psi, dpsi=dpsi)


def pt_wave_ivp(p: ResonanceParams, times, step: float) -> SecondOrderIVP:
    """Balanced-pair IVP with the canonical antisymmetric initial data.

    ``psi(0) = 0, psi'(0) = 2 i Gamma`` selects the difference of the
    decaying and growing fundamental solutions times ``-i``, matching the
    residue-summed time-domain form of the balanced pole pair.
    """
    c2, c1, c0 = pt_wave_equation(p)
    return SecondOrderIVP(
        c1=c1, c0=c0, psi0=0.0, dpsi0=2j * p.gamma, times=np.asarray(times, float), step=step
    )


def damped_oscillator_ivp(p: ResonanceParams, times, step: float) -> SecondOrderIVP:
    """Damped-oscillator IVP selecting the ``exp(-i E0 t - Gamma t)`` mode."""
    c2, c1, c0 = damped_oscillator_equation(p)
    return SecondOrderIVP(
        c1=c1,
        c0=c0,
        psi0=1.0,
        dpsi0=-1j * p.e0 - p.gamma,
        times=np.asarray(times, float),
        step=step,
    )
