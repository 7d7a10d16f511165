"""Gaussian mean-field models of two biquadratically coupled oscillators.

The exact system is a pair of oscillators with Lagrangian
``L = A'^2/2 + x'^2/2 - (m^2 + e^2 A^2) x^2 / 2``.  Restricting the quantum
state to a Gaussian family turns the Schrodinger dynamics into classical
Hamiltonian motion of the Gaussian parameters.  Three members of that family
live here:

* ``LARGE_N`` -- the A oscillator is classical (no width), the x width G
  evolves; 4 canonical variables ``(A, p_A, rho_G, p_G)``.
* ``HARTREE`` -- both oscillators carry a Gaussian width; 6 canonical
  variables ``(A, p_A, rho_G, p_G, rho_D, p_D)``.
* ``REPLICA_FAMILY`` -- N identical copies of the x oscillator coupled to a
  single A; interpolates between Hartree (N=1) and, after rescaling
  ``A -> sqrt(N) A``, ``e -> e/sqrt(N)``, the large-N model.

Everything is written in the canonical width coordinates ``rho = sqrt(G)``
with unit-mass kinetic terms (mass N for the replica G sector), which keeps
the Hamiltonians separable so symplectic splitting applies.  The
variance/width-phase chart ``(G, Pi_G)`` is a derived view.

Equations of motion are the exact symplectic gradient of the energy
functions below; the analytic Jacobians feed tangent-space Lyapunov
computations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, InfeasibleEnergyError

# Width-collapse guard: the hbar/(4 rho^3) barrier makes rho <= 0 unreachable
# for exact flows, so any trajectory reaching this is an integration failure.
RHO_MIN = 1e-8

_FEASIBILITY_TOL = 1e-12


class ModelKind(enum.Enum):
    LARGE_N = "large_n"
    HARTREE = "hartree"
    REPLICA_FAMILY = "replica"

    @property
    def dim(self) -> int:
        return 4 if self is ModelKind.LARGE_N else 6

    @property
    def has_d_sector(self) -> bool:
        return self is not ModelKind.LARGE_N


@dataclass(frozen=True)
class ModelParams:
    """Physical knobs: coupling e, oscillator mass m, hbar, replica count."""

    e: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    n_replicas: int = 1

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.e, self.m, self.hbar)):
            raise DomainError("model parameters must be finite")
        if self.m <= 0 or self.hbar <= 0:
            raise DomainError("m and hbar must be positive")
        if self.e < 0:
            raise DomainError("coupling e must be nonnegative")
        if self.n_replicas < 1:
            raise DomainError("n_replicas must be >= 1")


@dataclass(frozen=True)
class MeanFieldState:
    """Canonical phase-space point of one of the Gaussian models.

    ``rho_D``/``p_D`` are structurally absent (None) in the large-N model.
    """

    A: float
    p_A: float
    rho_G: float
    p_G: float
    rho_D: Optional[float] = None
    p_D: Optional[float] = None
    kind: ModelKind = ModelKind.LARGE_N

    def __post_init__(self):
        vals = [self.A, self.p_A, self.rho_G, self.p_G]
        if self.kind.has_d_sector:
            if self.rho_D is None or self.p_D is None:
                raise DomainError(f"{self.kind.value} state needs rho_D and p_D")
            vals += [self.rho_D, self.p_D]
            if self.rho_D <= 0:
                raise DomainError("rho_D must be positive")
        else:
            if self.rho_D is not None or self.p_D is not None:
                raise DomainError("large-N state has no D sector")
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("state components must be finite")
        if self.rho_G <= 0:
            raise DomainError("rho_G must be positive")

    def to_array(self) -> np.ndarray:
        if self.kind.has_d_sector:
            return np.array(
                [self.A, self.p_A, self.rho_G, self.p_G, self.rho_D, self.p_D]
            )
        return np.array([self.A, self.p_A, self.rho_G, self.p_G])

    @classmethod
    def from_array(cls, y, kind: ModelKind) -> "MeanFieldState":
        y = np.asarray(y, dtype=float)
        if y.shape != (kind.dim,):
            raise DomainError(f"expected {kind.dim} components, got {y.shape}")
        if kind.has_d_sector:
            return cls(y[0], y[1], y[2], y[3], y[4], y[5], kind=kind)
        return cls(y[0], y[1], y[2], y[3], kind=kind)


@dataclass(frozen=True)
class WidthView:
    """Variance / width-phase chart: G = rho_G**2, p_G = 2*hbar*N*Pi_G*rho_G."""

    G: float
    Pi_G: float
    D: Optional[float] = None
    Pi_D: Optional[float] = None


@dataclass(frozen=True)
class InitialConditionConvention:
    """How a run's initial state is built from a target energy.

    ``minimum_uncertainty`` starts widths at rest (all width momenta zero),
    puts ``pA0`` into the A momentum, and solves for A >= 0 (times
    ``branch``) on the energy shell.  ``explicit`` bypasses the solve.
    """

    scheme: str = "minimum_uncertainty"
    explicit_state: Optional[MeanFieldState] = None
    G0: float = 0.5
    D0: float = 0.5
    pA0: float = 0.0
    branch: int = 1

    def __post_init__(self):
        if self.scheme not in ("minimum_uncertainty", "explicit"):
            raise DomainError(f"unknown IC scheme {self.scheme!r}")
        if self.scheme == "explicit" and self.explicit_state is None:
            raise DomainError("explicit scheme needs explicit_state")
        if self.G0 <= 0 or self.D0 <= 0:
            raise DomainError("initial variances must be positive")
        if self.branch not in (-1, 1):
            raise DomainError("branch must be +1 or -1")


def _n_eff(p: ModelParams, kind: ModelKind) -> float:
    # Hartree fixes N=1 regardless of params; the replica family reads it.
    return float(p.n_replicas) if kind is ModelKind.REPLICA_FAMILY else 1.0


# -- energies -----------------------------------------------------------------
#
# Large-N:   H = p_A^2/2 + p_G^2/2 + hbar/(8 rho_G^2)
#                + (hbar/2) (m^2 + e^2 A^2) rho_G^2
# Replica-N: H = p_A^2/2 + p_G^2/(2N) + p_D^2/2
#                + (hbar/8) (N/rho_G^2 + 1/rho_D^2)
#                + (hbar N/2) (m^2 + e^2 (A^2 + hbar rho_D^2)) rho_G^2
# Hartree is the replica family at N = 1 (identical code path, so the two
# agree bitwise).


def _energy_large_n_raw(A, p_A, rho_G, p_G, e, m, hbar):
    return (
        0.5 * p_A * p_A
        + 0.5 * p_G * p_G
        + hbar / (8.0 * rho_G * rho_G)
        + 0.5 * hbar * (m * m + e * e * A * A) * rho_G * rho_G
    )


def _energy_replica_raw(A, p_A, rho_G, p_G, rho_D, p_D, e, m, hbar, N):
    g2 = rho_G * rho_G
    d2 = rho_D * rho_D
    return (
        0.5 * p_A * p_A
        + p_G * p_G / (2.0 * N)
        + 0.5 * p_D * p_D
        + (hbar / 8.0) * (N / g2 + 1.0 / d2)
        + 0.5 * hbar * N * (m * m + e * e * (A * A + hbar * d2)) * g2
    )


def energy_large_n(s: MeanFieldState, p: ModelParams) -> float:
    """Conserved energy of the large-N flow."""
    if s.kind is not ModelKind.LARGE_N:
        raise DomainError("energy_large_n expects a large-N state")
    return _energy_large_n_raw(s.A, s.p_A, s.rho_G, s.p_G, p.e, p.m, p.hbar)


def energy_hartree(s: MeanFieldState, p: ModelParams) -> float:
    """Conserved energy of the Hartree flow (replica family at N=1)."""
    if s.kind is ModelKind.LARGE_N:
        raise DomainError("energy_hartree expects a state with a D sector")
    return _energy_replica_raw(
        s.A, s.p_A, s.rho_G, s.p_G, s.rho_D, s.p_D, p.e, p.m, p.hbar, 1.0
    )


def energy_replica_family(s: MeanFieldState, p: ModelParams) -> float:
    """Conserved energy of the N-replica flow; equals Hartree at N=1."""
    if s.kind is ModelKind.LARGE_N:
        raise DomainError("energy_replica_family expects a state with a D sector")
    return _energy_replica_raw(
        s.A, s.p_A, s.rho_G, s.p_G, s.rho_D, s.p_D,
        p.e, p.m, p.hbar, float(p.n_replicas),
    )


def energy(s: MeanFieldState, p: ModelParams) -> float:
    """Dispatch on the state's model kind."""
    if s.kind is ModelKind.LARGE_N:
        return energy_large_n(s, p)
    if s.kind is ModelKind.HARTREE:
        return energy_hartree(s, p)
    return energy_replica_family(s, p)


def energy_array(ys: np.ndarray, p: ModelParams, kind: ModelKind) -> np.ndarray:
    """Vectorized energy over rows of canonical state vectors."""
    ys = np.asarray(ys, dtype=float)
    if kind is ModelKind.LARGE_N:
        return _energy_large_n_raw(
            ys[:, 0], ys[:, 1], ys[:, 2], ys[:, 3], p.e, p.m, p.hbar
        )
    return _energy_replica_raw(
        ys[:, 0], ys[:, 1], ys[:, 2], ys[:, 3], ys[:, 4], ys[:, 5],
        p.e, p.m, p.hbar, _n_eff(p, kind),
    )


# -- equations of motion ------------------------------------------------------


def _check_widths(y, kind: ModelKind):
    if y[2] < RHO_MIN:
        raise DomainError("rho_G at or below the collapse guard")
    if kind.has_d_sector and y[4] < RHO_MIN:
        raise DomainError("rho_D at or below the collapse guard")


def eom_array(y: np.ndarray, p: ModelParams, kind: ModelKind) -> np.ndarray:
    """Time derivative of the canonical state vector (exact gradient flow)."""
    y = np.asarray(y, dtype=float)
    _check_widths(y, kind)
    e, m, hbar = p.e, p.m, p.hbar
    if kind is ModelKind.LARGE_N:
        A, p_A, rho_G, p_G = y
        g2 = rho_G * rho_G
        return np.array(
            [
                p_A,
                -hbar * e * e * A * g2,
                p_G,
                hbar / (4.0 * rho_G ** 3) - hbar * (m * m + e * e * A * A) * rho_G,
            ]
        )
    N = _n_eff(p, kind)
    A, p_A, rho_G, p_G, rho_D, p_D = y
    g2 = rho_G * rho_G
    msq = m * m + e * e * (A * A + hbar * rho_D * rho_D)
    return np.array(
        [
            p_A,
            -hbar * N * e * e * A * g2,
            p_G / N,
            hbar * N / (4.0 * rho_G ** 3) - hbar * N * msq * rho_G,
            p_D,
            hbar / (4.0 * rho_D ** 3) - hbar * hbar * N * e * e * rho_D * g2,
        ]
    )


def eom(s: MeanFieldState, p: ModelParams) -> np.ndarray:
    """Time derivative of every canonical coordinate of ``s``."""
    return eom_array(s.to_array(), p, s.kind)


def eom_jacobian_array(y: np.ndarray, p: ModelParams, kind: ModelKind) -> np.ndarray:
    """Analytic linearization d(ydot_i)/d(y_j); traceless for any state."""
    y = np.asarray(y, dtype=float)
    _check_widths(y, kind)
    e, m, hbar = p.e, p.m, p.hbar
    if kind is ModelKind.LARGE_N:
        A, _, rho_G, _ = y
        g2 = rho_G * rho_G
        J = np.zeros((4, 4))
        J[0, 1] = 1.0
        J[1, 0] = -hbar * e * e * g2
        J[1, 2] = -2.0 * hbar * e * e * A * rho_G
        J[2, 3] = 1.0
        J[3, 0] = -2.0 * hbar * e * e * A * rho_G
        J[3, 2] = -3.0 * hbar / (4.0 * rho_G ** 4) - hbar * (m * m + e * e * A * A)
        return J
    N = _n_eff(p, kind)
    A, _, rho_G, _, rho_D, _ = y
    g2 = rho_G * rho_G
    msq = m * m + e * e * (A * A + hbar * rho_D * rho_D)
    J = np.zeros((6, 6))
    J[0, 1] = 1.0
    J[1, 0] = -hbar * N * e * e * g2
    J[1, 2] = -2.0 * hbar * N * e * e * A * rho_G
    J[2, 3] = 1.0 / N
    J[3, 0] = -2.0 * hbar * N * e * e * A * rho_G
    J[3, 2] = -3.0 * hbar * N / (4.0 * rho_G ** 4) - hbar * N * msq
    J[3, 4] = -2.0 * hbar * hbar * N * e * e * rho_D * rho_G
    J[4, 5] = 1.0
    J[5, 2] = -2.0 * hbar * hbar * N * e * e * rho_D * rho_G
    J[5, 4] = -3.0 * hbar / (4.0 * rho_D ** 4) - hbar * hbar * N * e * e * g2
    return J


def eom_jacobian(s: MeanFieldState, p: ModelParams) -> np.ndarray:
    return eom_jacobian_array(s.to_array(), p, s.kind)


# -- chart conversions --------------------------------------------------------


def to_width_view(s: MeanFieldState, p: ModelParams) -> WidthView:
    """Map canonical widths to the variance/width-phase chart."""
    N = _n_eff(p, s.kind)
    G = s.rho_G * s.rho_G
    Pi_G = s.p_G / (2.0 * p.hbar * N * s.rho_G)
    if not s.kind.has_d_sector:
        return WidthView(G=G, Pi_G=Pi_G)
    D = s.rho_D * s.rho_D
    Pi_D = s.p_D / (2.0 * p.hbar * s.rho_D)
    return WidthView(G=G, Pi_G=Pi_G, D=D, Pi_D=Pi_D)


def from_width_view(
    w: WidthView,
    kind: ModelKind,
    p: ModelParams,
    A: float = 0.0,
    p_A: float = 0.0,
) -> MeanFieldState:
    """Inverse chart; raises on nonpositive variances."""
    if w.G <= 0:
        raise DomainError("G must be positive")
    N = _n_eff(p, kind)
    rho_G = math.sqrt(w.G)
    p_G = 2.0 * p.hbar * N * w.Pi_G * rho_G
    if not kind.has_d_sector:
        return MeanFieldState(A, p_A, rho_G, p_G, kind=kind)
    if w.D is None or w.Pi_D is None or w.D <= 0:
        raise DomainError("D must be positive for models with a D sector")
    rho_D = math.sqrt(w.D)
    p_D = 2.0 * p.hbar * w.Pi_D * rho_D
    return MeanFieldState(A, p_A, rho_G, p_G, rho_D, p_D, kind=kind)


# -- initial conditions -------------------------------------------------------


def _base_state(conv: InitialConditionConvention, kind: ModelKind) -> MeanFieldState:
    rho_G = math.sqrt(conv.G0)
    if kind.has_d_sector:
        return MeanFieldState(
            0.0, conv.pA0, rho_G, 0.0, math.sqrt(conv.D0), 0.0, kind=kind
        )
    return MeanFieldState(0.0, conv.pA0, rho_G, 0.0, kind=kind)


def minimum_energy(
    conv: InitialConditionConvention, p: ModelParams, kind: ModelKind
) -> float:
    """Energy of the A=0 state under the convention's widths and pA0."""
    return energy(_base_state(conv, kind), p)


def initial_condition_from_energy(
    E: float,
    conv: InitialConditionConvention,
    p: ModelParams,
    kind: ModelKind,
) -> MeanFieldState:
    """State on the energy shell E under the convention.

    With widths at rest, the only energy lever left is the A coordinate:
    ``E - E_min = (hbar N e^2 G0 / 2) A^2``, inverted in closed form.
    """
    if conv.scheme == "explicit":
        return conv.explicit_state
    if not math.isfinite(E):
        raise DomainError("target energy must be finite")
    base = _base_state(conv, kind)
    e_min = energy(base, p)
    excess = E - e_min
    if excess < -_FEASIBILITY_TOL:
        raise InfeasibleEnergyError(
            f"E={E} below minimum {e_min} reachable under the convention"
        )
    if excess <= _FEASIBILITY_TOL:
        return base
    if p.e == 0.0:
        raise InfeasibleEnergyError(
            "e=0 decouples A from the energy budget; no finite A reaches "
            f"E={E} (minimum {e_min}). Supply an explicit initial state."
        )
    N = _n_eff(p, kind)
    A = conv.branch * math.sqrt(2.0 * excess / (p.hbar * N * p.e * p.e * conv.G0))
    return replace(base, A=A)


def ground_widths(p: ModelParams, kind: ModelKind, tol: float = 1e-14):
    """Width pair minimizing the A=0 potential; (G*, None) for large-N.

    Stationarity gives ``G = 1/(2 sqrt(m^2 + e^2 hbar D))`` and
    ``D = 1/(2 sqrt(hbar N e^2 G))``; fixed-point iteration converges fast.
    Undefined for e=0 with a D sector (the free A width has no minimum).
    """
    if kind is ModelKind.LARGE_N:
        return 1.0 / (2.0 * p.m), None
    if p.e == 0.0:
        raise DomainError("ground widths undefined at e=0 (A width unbounded)")
    N = _n_eff(p, kind)
    G, D = 0.5, 0.5
    for _ in range(200):
        G_new = 0.5 / math.sqrt(p.m * p.m + p.e * p.e * p.hbar * D)
        D_new = 0.5 / math.sqrt(p.hbar * N * p.e * p.e * G_new)
        if abs(G_new - G) < tol and abs(D_new - D) < tol:
            G, D = G_new, D_new
            break
        G, D = G_new, D_new
    return G, D


# -- large-N limit of the replica family --------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    """Sup-norm deviations of rescaled replica runs from the large-N run."""

    n_values: tuple
    deviations: tuple          # max over samples of max(|dA~|, |dG|)
    g_deviations: tuple        # G-sector part alone
    horizon: float

    @property
    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.deviations, self.deviations[1:]))


def large_n_limit_check(
    n_list: Sequence[int],
    E: float,
    e: float,
    horizon: float,
    dt: float = 1e-3,
    m: float = 1.0,
    hbar: float = 1.0,
    conv: Optional[InitialConditionConvention] = None,
    sample_every: int = 10,
) -> ConvergenceReport:
    """Integrate rescaled replica models against the large-N reference.

    Under ``A -> sqrt(N) A``, ``e -> e/sqrt(N)`` (which leaves e*A fixed)
    the replica Hamiltonian per replica approaches the large-N one, so the
    mapped-back trajectories ``(A/sqrt(N), rho_G^2)`` must converge to the
    large-N trajectory as N grows.
    """
    from .integrators import IntegratorSpec, integrate

    if list(n_list) != sorted(n_list) or len(n_list) == 0:
        raise DomainError("n_list must be a nonempty increasing sequence")
    conv = conv or InitialConditionConvention()
    spec = IntegratorSpec(scheme="composition4", dt=dt, t_max=horizon,
                          sample_every=sample_every)

    p_ref = ModelParams(e=e, m=m, hbar=hbar)
    s_ref = initial_condition_from_energy(E, conv, p_ref, ModelKind.LARGE_N)
    traj_ref = integrate(s_ref, p_ref, spec)
    if traj_ref.aborted:
        raise DomainError("large-N reference trajectory aborted")
    ref_A = traj_ref.ys[:, 0]
    ref_G = traj_ref.ys[:, 2] ** 2

    devs, g_devs = [], []
    for N in n_list:
        sqrtN = math.sqrt(N)
        p_N = ModelParams(e=e / sqrtN, m=m, hbar=hbar, n_replicas=int(N))
        s_N = MeanFieldState(
            A=sqrtN * s_ref.A,
            p_A=sqrtN * s_ref.p_A,
            rho_G=s_ref.rho_G,
            p_G=N * s_ref.p_G,
            rho_D=math.sqrt(conv.D0),
            p_D=0.0,
            kind=ModelKind.REPLICA_FAMILY,
        )
        traj = integrate(s_N, p_N, spec)
        if traj.aborted:
            raise DomainError(f"replica trajectory aborted at N={N}")
        dA = np.abs(traj.ys[:, 0] / sqrtN - ref_A)
        dG = np.abs(traj.ys[:, 2] ** 2 - ref_G)
        devs.append(float(max(dA.max(), dG.max())))
        g_devs.append(float(dG.max()))
    return ConvergenceReport(
        n_values=tuple(int(n) for n in n_list),
        deviations=tuple(devs),
        g_deviations=tuple(g_devs),
        horizon=horizon,
    )
