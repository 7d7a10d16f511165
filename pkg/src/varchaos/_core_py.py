"""Pure-Python stepping kernels: the fallback twin of the compiled core.

Both backends expose the same flat-array functions and perform the same
floating-point operations in the same order, so results agree across
backends to the last bit on IEEE-754 hardware.

State layout (float64):
    large-N (kind=0):  [A, p_A, rho_G, p_G]
    replica (kind=1):  [A, p_A, rho_G, p_G, rho_D, p_D]   (Hartree: N=1)

Schemes: 2 = leapfrog (kick-drift-kick), 4 = symmetric triple composition
of leapfrog with coefficients (W1, W0, W1).
"""

import math

import numpy as np

W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
W0 = 1.0 - 2.0 * W1

BACKEND_NAME = "python"


def _leapfrog4(y, e, m, hbar, dt, rho_min):
    """Large-N leapfrog; returns False on width-guard violation."""
    A = y[0]; pA = y[1]; rG = y[2]; pG = y[3]
    h2 = 0.5 * dt
    ee = e * e
    g2 = rG * rG
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    A += dt * pA
    rG += dt * pG
    if rG < rho_min:
        return False
    g2 = rG * rG
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG
    return True


def _leapfrog6(y, N, e, m, hbar, dt, rho_min):
    """Replica-family leapfrog (Hartree at N=1)."""
    A = y[0]; pA = y[1]; rG = y[2]; pG = y[3]; rD = y[4]; pD = y[5]
    h2 = 0.5 * dt
    ee = e * e
    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    A += dt * pA
    rG += dt * pG / N
    rD += dt * pD
    if rG < rho_min or rD < rho_min:
        return False
    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG; y[4] = rD; y[5] = pD
    return True


def _leapfrog4_tan(y, v, e, m, hbar, dt, rho_min):
    """Large-N leapfrog carrying a tangent vector through the exact
    differential of the map (kick: Hessian of V; drift: unit mass)."""
    A = y[0]; pA = y[1]; rG = y[2]; pG = y[3]
    dA = v[0]; dpA = v[1]; drG = v[2]; dpG = v[3]
    h2 = 0.5 * dt
    ee = e * e

    g2 = rG * rG
    hAA = hbar * ee * g2
    hAG = 2.0 * hbar * ee * A * rG
    hGG = 3.0 * hbar / (4.0 * g2 * g2) + hbar * (m * m + ee * A * A)
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG)

    A += dt * pA
    rG += dt * pG
    dA += dt * dpA
    drG += dt * dpG
    if rG < rho_min:
        return False

    g2 = rG * rG
    hAA = hbar * ee * g2
    hAG = 2.0 * hbar * ee * A * rG
    hGG = 3.0 * hbar / (4.0 * g2 * g2) + hbar * (m * m + ee * A * A)
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG)

    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG
    v[0] = dA; v[1] = dpA; v[2] = drG; v[3] = dpG
    return True


def _leapfrog6_tan(y, v, N, e, m, hbar, dt, rho_min):
    """Replica-family leapfrog with tangent transport."""
    A = y[0]; pA = y[1]; rG = y[2]; pG = y[3]; rD = y[4]; pD = y[5]
    dA = v[0]; dpA = v[1]; drG = v[2]; dpG = v[3]; drD = v[4]; dpD = v[5]
    h2 = 0.5 * dt
    ee = e * e

    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    hAA = hbar * N * ee * g2
    hAG = 2.0 * hbar * N * ee * A * rG
    hGG = 3.0 * hbar * N / (4.0 * g2 * g2) + hbar * N * msq
    hGD = 2.0 * hbar * hbar * N * ee * rD * rG
    hDD = 3.0 * hbar / (4.0 * d2 * d2) + hbar * hbar * N * ee * g2
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG + hGD * drD)
    dpD -= h2 * (hGD * drG + hDD * drD)

    A += dt * pA
    rG += dt * pG / N
    rD += dt * pD
    dA += dt * dpA
    drG += dt * dpG / N
    drD += dt * dpD
    if rG < rho_min or rD < rho_min:
        return False

    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    hAA = hbar * N * ee * g2
    hAG = 2.0 * hbar * N * ee * A * rG
    hGG = 3.0 * hbar * N / (4.0 * g2 * g2) + hbar * N * msq
    hGD = 2.0 * hbar * hbar * N * ee * rD * rG
    hDD = 3.0 * hbar / (4.0 * d2 * d2) + hbar * hbar * N * ee * g2
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG + hGD * drD)
    dpD -= h2 * (hGD * drG + hDD * drD)

    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG; y[4] = rD; y[5] = pD
    v[0] = dA; v[1] = dpA; v[2] = drG; v[3] = dpG; v[4] = drD; v[5] = dpD
    return True


def _advance(y, kind, N, e, m, hbar, dt, scheme, rho_min):
    if kind == 0:
        if scheme == 2:
            return _leapfrog4(y, e, m, hbar, dt, rho_min)
        return (
            _leapfrog4(y, e, m, hbar, W1 * dt, rho_min)
            and _leapfrog4(y, e, m, hbar, W0 * dt, rho_min)
            and _leapfrog4(y, e, m, hbar, W1 * dt, rho_min)
        )
    if scheme == 2:
        return _leapfrog6(y, N, e, m, hbar, dt, rho_min)
    return (
        _leapfrog6(y, N, e, m, hbar, W1 * dt, rho_min)
        and _leapfrog6(y, N, e, m, hbar, W0 * dt, rho_min)
        and _leapfrog6(y, N, e, m, hbar, W1 * dt, rho_min)
    )


def _advance_tan(y, v, kind, N, e, m, hbar, dt, scheme, rho_min):
    if kind == 0:
        if scheme == 2:
            return _leapfrog4_tan(y, v, e, m, hbar, dt, rho_min)
        return (
            _leapfrog4_tan(y, v, e, m, hbar, W1 * dt, rho_min)
            and _leapfrog4_tan(y, v, e, m, hbar, W0 * dt, rho_min)
            and _leapfrog4_tan(y, v, e, m, hbar, W1 * dt, rho_min)
        )
    if scheme == 2:
        return _leapfrog6_tan(y, v, N, e, m, hbar, dt, rho_min)
    return (
        _leapfrog6_tan(y, v, N, e, m, hbar, W1 * dt, rho_min)
        and _leapfrog6_tan(y, v, N, e, m, hbar, W0 * dt, rho_min)
        and _leapfrog6_tan(y, v, N, e, m, hbar, W1 * dt, rho_min)
    )


def step_kernel(y, kind, N, e, m, hbar, dt, scheme, rho_min):
    """One integrator step. Returns (new_state, ok)."""
    out = np.array(y, dtype=np.float64)
    ok = _advance(out, kind, N, e, m, hbar, dt, scheme, rho_min)
    return out, ok


def integrate_kernel(y0, kind, N, e, m, hbar, dt, n_steps, sample_every,
                     scheme, rho_min, out):
    """Fixed-step march with decimated sampling into ``out``.

    out[k] receives the state after k*sample_every steps (out[0] = y0).
    Returns (n_written, abort_step); abort_step is -1 on completion, else
    the 1-based index of the failed step.
    """
    y = np.array(y0, dtype=np.float64)
    out[0] = y
    written = 1
    for s in range(1, n_steps + 1):
        if not _advance(y, kind, N, e, m, hbar, dt, scheme, rho_min):
            return written, s
        if s % sample_every == 0:
            out[written] = y
            written += 1
    return written, -1


def lyapunov_kernel(y0, v0, kind, N, e, m, hbar, dt, renorm_every, n_renorms,
                    scheme, rho_min, out_logs):
    """Benettin accumulation: evolve state and tangent on the same grid,
    renormalizing the tangent every ``renorm_every`` steps.

    out_logs[j] receives log ||v|| just before the j-th renormalization.
    Returns (n_done, abort_step).
    """
    y = np.array(y0, dtype=np.float64)
    v = np.array(v0, dtype=np.float64)
    dim = y.shape[0]
    step = 0
    for j in range(n_renorms):
        for _ in range(renorm_every):
            step += 1
            if not _advance_tan(y, v, kind, N, e, m, hbar, dt, scheme, rho_min):
                return j, step
        norm = 0.0
        for i in range(dim):
            norm += v[i] * v[i]
        norm = math.sqrt(norm)
        out_logs[j] = math.log(norm)
        for i in range(dim):
            v[i] /= norm
    return n_renorms, -1


def divergence_kernel(ya0, yb0, kind, N, e, m, hbar, dt, n_steps, sample_every,
                      scheme, rho_min, out_sep):
    """Two trajectories under identical stepping; records their Euclidean
    phase-space separation every ``sample_every`` steps (index 0 = t=0).
    Returns (n_written, abort_step)."""
    ya = np.array(ya0, dtype=np.float64)
    yb = np.array(yb0, dtype=np.float64)
    dim = ya.shape[0]

    def _sep():
        acc = 0.0
        for i in range(dim):
            d = ya[i] - yb[i]
            acc += d * d
        return math.sqrt(acc)

    out_sep[0] = _sep()
    written = 1
    for s in range(1, n_steps + 1):
        ok_a = _advance(ya, kind, N, e, m, hbar, dt, scheme, rho_min)
        ok_b = _advance(yb, kind, N, e, m, hbar, dt, scheme, rho_min)
        if not (ok_a and ok_b):
            return written, s
        if s % sample_every == 0:
            out_sep[written] = _sep()
            written += 1
    return written, -1
