"""Fixed-step integrators for the mean-field flows.

The canonical Hamiltonians are separable (quadratic kinetic + width/coupling
potential), so the workhorses are symplectic splitting schemes: second-order
leapfrog in kick-drift-kick ordering and the standard fourth-order symmetric
triple composition with coefficients ``(w, 1-2w, w)``, ``w = 1/(2-2^(1/3))``.
A classical RK4 one-step method covers generic (non-separable) flows from the
variational engine.

No step-size adaptivity: symplectic benefits are lost under naive adaptation
and the chaos diagnostics need uniform sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import model
from .backend import kernels
from .errors import DomainError, SingularityError
from .model import RHO_MIN, MeanFieldState, ModelKind, ModelParams

_SCHEMES = {"leapfrog2": 2, "composition4": 4, "rk4": 0}

#: Triple-composition coefficients of the fourth-order scheme.
COMP4_W1 = kernels.W1
COMP4_W0 = kernels.W0


@dataclass(frozen=True)
class IntegratorSpec:
    scheme: str = "composition4"
    dt: float = 1e-3
    t_max: float = 100.0
    sample_every: int = 1

    def __post_init__(self):
        if self.scheme not in _SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError("dt must be positive and finite")
        if self.t_max < self.dt:
            raise DomainError("t_max must be at least dt")
        if self.sample_every < 1:
            raise DomainError("sample_every must be a positive integer")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


@dataclass
class Trajectory:
    """Decimated samples of one integration.

    ``ys`` is the raw (n_samples, dim) array of canonical states; ``states``
    materializes them lazily. ``aborted`` carries the width-guard abort time
    when the run did not complete.
    """

    times: np.ndarray
    ys: np.ndarray
    energies: np.ndarray
    kind: ModelKind
    params: ModelParams
    aborted: Optional[float] = None
    _states: Optional[list] = field(default=None, repr=False)

    @property
    def states(self) -> list:
        if self._states is None:
            self._states = [
                MeanFieldState.from_array(y, self.kind) for y in self.ys
            ]
        return self._states

    def state_at(self, i: int) -> MeanFieldState:
        return MeanFieldState.from_array(self.ys[i], self.kind)

    def __len__(self) -> int:
        return len(self.times)


def _kernel_args(p: ModelParams, kind: ModelKind):
    code = 0 if kind is ModelKind.LARGE_N else 1
    return code, model._n_eff(p, kind), p.e, p.m, p.hbar


def _step(s: MeanFieldState, p: ModelParams, dt: float, scheme: int) -> MeanFieldState:
    code, N, e, m, hbar = _kernel_args(p, s.kind)
    y, ok = kernels.step_kernel(s.to_array(), code, N, e, m, hbar, dt, scheme, RHO_MIN)
    if not ok:
        raise SingularityError("width reached the collapse guard during the step")
    return MeanFieldState.from_array(y, s.kind)


def step_leapfrog(s: MeanFieldState, p: ModelParams, dt: float) -> MeanFieldState:
    """One second-order kick-drift-kick step; exactly time-reversible."""
    return _step(s, p, dt, 2)


def step_composition4(s: MeanFieldState, p: ModelParams, dt: float) -> MeanFieldState:
    """One fourth-order step (symmetric triple composition of leapfrog)."""
    return _step(s, p, dt, 4)


def integrate(s0: MeanFieldState, p: ModelParams, spec: IntegratorSpec) -> Trajectory:
    """Fixed-step march with decimated sampling and per-sample energies.

    On a width-guard violation the partial trajectory is returned with
    ``aborted`` set to the failing step's time instead of raising.
    """
    scheme = _SCHEMES[spec.scheme]
    if scheme == 0:
        raise DomainError("integrate() drives symplectic schemes; "
                          "use step_rk4_generic for generic flows")
    code, N, e, m, hbar = _kernel_args(p, s0.kind)
    n_steps = spec.n_steps
    n_samples = n_steps // spec.sample_every + 1
    out = np.empty((n_samples, s0.kind.dim))
    written, abort_step = kernels.integrate_kernel(
        s0.to_array(), code, N, e, m, hbar, spec.dt, n_steps,
        spec.sample_every, scheme, RHO_MIN, out,
    )
    ys = out[:written]
    idx = np.arange(written) * spec.sample_every
    times = idx * spec.dt
    energies = model.energy_array(ys, p, s0.kind)
    aborted = abort_step * spec.dt if abort_step != -1 else None
    return Trajectory(times=times, ys=ys, energies=energies, kind=s0.kind,
                      params=p, aborted=aborted)


def step_rk4_generic(flow: Callable[[np.ndarray], np.ndarray],
                     y: np.ndarray, dt: float) -> np.ndarray:
    """Classical RK4 for flows without separable structure.

    Not symplectic: energy drift is documented by tests, not bounded.
    """
    y = np.asarray(y, dtype=float)
    k1 = np.asarray(flow(y))
    k2 = np.asarray(flow(y + 0.5 * dt * k1))
    k3 = np.asarray(flow(y + 0.5 * dt * k2))
    k4 = np.asarray(flow(y + dt * k3))
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
