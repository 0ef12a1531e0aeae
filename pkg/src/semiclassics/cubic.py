"""Closed-form machinery for the cubic well V(x) = x**2/2 - g*x**3.

Dimensionless units throughout (hbar = m = omega = 1).  The well is
harmonic near the origin, has a barrier of height 1/(54 g**2) at
x = 1/(3 g), and falls off to -infinity beyond it, so its ground state
is quasi-bound: it decays with lifetime tau and is represented by a
complex energy with Im E = -1/(2 tau).

Positions and energies are plain Python complex numbers; all functions
here are pure and safe to call concurrently.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import CoincidentRoots, DegenerateCubic

__all__ = [
    "CubicModel",
    "HarmonicModel",
    "QuasiBoundState",
    "TurningPoints",
    "corrected_quasi_bound_energy",
    "ground_state_energy",
    "quasi_bound_energy",
    "turning_points",
    "wkb_lifetime",
]

# Roots closer than this are treated as coincident (energy at/near the
# barrier top) rather than returned as garbage.
_DEGENERACY_THRESHOLD = 1e-8

_POLISH_TOL = 1e-13
_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class CubicModel:
    """Cubic well with coupling g > 0: V(x) = x**2/2 - g*x**3."""

    g: float

    def __post_init__(self):
        if not math.isfinite(self.g) or self.g <= 0.0:
            raise DegenerateCubic(
                f"coupling must be finite and positive, got g={self.g!r}"
            )

    def potential(self, x):
        """V(x) = x**2/2 - g*x**3, evaluated in complex arithmetic."""
        return 0.5 * x * x - self.g * x ** 3

    def force(self, x):
        """-dV/dx = -x + 3*g*x**2."""
        return -x + 3.0 * self.g * x * x

    @property
    def barrier_position(self) -> float:
        return 1.0 / (3.0 * self.g)

    @property
    def barrier_height(self) -> float:
        return 1.0 / (54.0 * self.g ** 2)


@dataclass(frozen=True)
class HarmonicModel:
    """Reference oscillator V(x) = x**2/2, the g -> 0 limit of the well.

    It shares the potential/force interface of :class:`CubicModel`, so
    the trajectory engine can run closed-form-checkable orbits with it.
    """

    def potential(self, x):
        return 0.5 * x * x

    def force(self, x):
        return -x


def wkb_lifetime(g: float) -> float:
    """Barrier-penetration lifetime of the quasi-bound ground state.

    Weak-coupling (WKB) approximation::

        tau = (1/2) g sqrt(pi) exp(2 / (15 g**2))

    Parameters
    ----------
    g : float
        Cubic coupling, must be positive.

    Returns
    -------
    float
        Lifetime in the dimensionless time unit (one harmonic period
        is 2*pi).
    """
    if not (isinstance(g, (int, float)) and math.isfinite(g) and g > 0):
        raise ValueError(f"lifetime requires finite g > 0, got {g!r}")
    return 0.5 * g * math.sqrt(math.pi) * math.exp(2.0 / (15.0 * g * g))


def ground_state_energy(g: float) -> float:
    """Weak-coupling ground-state energy through second order.

    E0(g) = 1/2 - (11/8) g**2.  The leading 1/2 is the harmonic
    zero-point value; the negative shift is the second-order response
    to the cubic term.  Higher orders are omitted: the series is
    asymptotic and the quartic term already over-corrects at the
    couplings this package targets.
    """
    if not (math.isfinite(g) and g > 0):
        raise ValueError(f"ground-state energy requires finite g > 0, got {g!r}")
    return 0.5 - 1.375 * g * g


@dataclass(frozen=True)
class QuasiBoundState:
    """Decaying ground state: population P(t) = exp(-t/tau).

    The decay of |amplitude|**2 at rate 1/tau pins the imaginary energy
    part to -1/(2 tau); ``energy.imag`` is constructed as exactly
    ``-1.0 / (2.0 * tau)``.
    """

    g: float
    tau: float
    energy: complex

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"lifetime must be positive, got {self.tau!r}")


def quasi_bound_energy(g: float) -> QuasiBoundState:
    """Quasi-bound state with the leading-order real part Re E = 1/2."""
    tau = wkb_lifetime(g)
    return QuasiBoundState(g=g, tau=tau, energy=complex(0.5, -1.0 / (2.0 * tau)))


def corrected_quasi_bound_energy(g: float) -> QuasiBoundState:
    """Quasi-bound state with Re E = ground_state_energy(g).

    This is the default energy construction of the trajectory pipeline:
    the second-order real part places the orbit at the energy the well
    actually holds its decaying state at, which the benchmark
    crossing-time table turns out to be quite sensitive to (see
    README).
    """
    tau = wkb_lifetime(g)
    return QuasiBoundState(
        g=g, tau=tau, energy=complex(ground_state_energy(g), -1.0 / (2.0 * tau))
    )


@dataclass(frozen=True)
class TurningPoints:
    """The three roots of V(x) = E, ascending by real part."""

    x1: complex
    x2: complex
    x3: complex

    def __iter__(self):
        yield from (self.x1, self.x2, self.x3)


def _newton_polish(model: CubicModel, x: complex, energy: complex, scale: float) -> complex:
    # Newton on f = V(x) - E; the closed-form start is already close,
    # so a handful of steps reaches the residual target.
    for _ in range(30):
        f = model.potential(x) - energy
        if abs(f) <= _POLISH_TOL * scale:
            break
        fp = x - 3.0 * model.g * x * x
        if fp == 0:
            break
        x = x - f / fp
    return x


def turning_points(model: CubicModel, energy: complex) -> TurningPoints:
    """Solve V(x) = E for the three complex turning points.

    The monic form x**3 - x**2/(2g) + E/g = 0 is solved in closed form
    (Cardano with the cancellation-avoiding branch, then deflation to a
    stable quadratic), and every root is polished by Newton iteration
    on V(x) - E to a residual below 1e-13 * max(1, |E|).

    Parameters
    ----------
    model : CubicModel
        The well; its coupling g must be positive (a zero coupling has
        already been rejected at model construction).
    energy : complex
        Energy level, real or complex.

    Returns
    -------
    TurningPoints
        Roots sorted ascending by real part, ties by imaginary part.

    Raises
    ------
    CoincidentRoots
        If two roots lie closer than 1e-8, i.e. the energy sits at or
        near the barrier top and the turning-point labels x1 < x2 < x3
        stop being meaningful.
    """
    g = model.g
    E = complex(energy)
    if not (math.isfinite(E.real) and math.isfinite(E.imag)):
        raise ValueError(f"energy must be finite, got {energy!r}")
    scale = max(1.0, abs(E))

    # Monic cubic x**3 + a2 x**2 + a1 x + a0, then depressed t**3 + p t + q
    # with x = t - a2/3.
    a2 = -0.5 / g
    a0 = E / g
    shift = -a2 / 3.0
    p = -(a2 * a2) / 3.0
    q = 2.0 * a2 ** 3 / 27.0 + a0

    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = cmath.sqrt(disc)
    u3 = -q / 2.0 + sq
    alt = -q / 2.0 - sq
    if abs(alt) > abs(u3):
        u3 = alt
    if u3 == 0:
        # p = q = 0: exact triple root.
        raise CoincidentRoots(
            f"triple turning point at x = {shift!r} for E = {E!r}"
        )
    u = u3 ** (1.0 / 3.0)
    r0 = _newton_polish(model, (u - p / (3.0 * u)) + shift, E, scale)

    # Deflate by the polished root and solve the remaining quadratic
    # x**2 + b x + c with the constructive-sign branch.  c is the
    # product of the two remaining roots (r0*r1*r2 = -a0; the linear
    # coefficient of the monic cubic is identically zero here).
    b = a2 + r0
    c = a0 / (-r0) if r0 != 0 else 0.0
    s = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * s).real < 0.0:
        s = -s
    rb = (-b - s) / 2.0
    rc = c / rb if rb != 0 else (-b + s) / 2.0
    r1 = _newton_polish(model, rb, E, scale)
    r2 = _newton_polish(model, rc, E, scale)

    roots = sorted((r0, r1, r2), key=lambda z: (z.real, z.imag))
    gap = min(
        abs(roots[0] - roots[1]), abs(roots[0] - roots[2]), abs(roots[1] - roots[2])
    )
    if gap < _DEGENERACY_THRESHOLD:
        raise CoincidentRoots(
            f"turning points separated by only {gap:.3e} for E = {E!r}; "
            "energy is at or near the barrier top"
        )
    worst = max(abs(model.potential(r) - E) for r in roots)
    if worst > _RESIDUAL_TOL * scale:
        raise ArithmeticError(
            f"turning-point polish stalled at residual {worst:.3e}"
        )
    return TurningPoints(*roots)
