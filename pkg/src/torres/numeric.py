"""Monte Carlo evaluation of the integral representation of toric residues.

On a smooth chart ``x_rho = 1`` (rho outside a maximal cone ``I``) the
residue integrand becomes

    g * conj(D) * det(n_I) * dxbar_I ^ dx_I / (|f_0|^2 + ... + |f_n|^2)^(n+1)

where ``D`` is the chart determinant of ``(f_i ; df_i/du_k)``. Each complex
coordinate is compactified by ``u = tan(t) e^{i phi}`` with
``(t, phi)`` in ``[0, pi/2) x [0, 2 pi)``, and the result is multiplied by
``(-1)^{n(n-1)/2} n! / (2 pi i)^n``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from . import lattice
from .coxring import ChartPolynomial, Polynomial, dehomogenize, partial
from .lattice import DegreeClass, Fan

CHUNK = 1 << 16
STRATA = 64


class NumericError(ValueError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    sample_count: int = 10**6
    seed: int = 0
    chart: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.sample_count <= 0:
            raise ValueError("sample_count must be positive")


@dataclass(frozen=True)
class IntegralEstimate:
    value: complex
    std_error: float
    samples_used: int
    std_error_real: float = 0.0
    std_error_imag: float = 0.0

    def within(self, target: complex, sigmas: float = 3.0) -> bool:
        return abs(self.value - target) <= sigmas * self.std_error


def _chunk_bounds(total: int) -> List[Tuple[int, int]]:
    return [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]


def _sample_chunk(start: int, stop: int, n: int, rng: np.random.Generator):
    """Chart points and compactification weights for sample indices [start, stop)."""
    size = stop - start
    raw = rng.random((size, 2 * n))
    strata = np.arange(start, stop) % STRATA
    raw[:, 0] = (strata + raw[:, 0]) / STRATA
    t = raw[:, :n] * (math.pi / 2)
    phi = raw[:, n:] * (2 * math.pi)
    r = np.tan(t)
    u = r * np.exp(1j * phi)
    # dV = r dr dphi = tan(t) sec^2(t) dt dphi, box measure (pi/2 * 2 pi) per coordinate
    w = np.prod(r / np.cos(t) ** 2 * (math.pi / 2) * (2 * math.pi), axis=1)
    return u, w, strata


def monte_carlo(integrand: Callable[[np.ndarray], np.ndarray], n: int, config: SamplerConfig) -> IntegralEstimate:
    """Stratified estimate of the integral of ``integrand`` over C^n (Lebesgue measure).

    The stratum of sample ``k`` is ``k mod STRATA`` (on the first radial
    variable), and chunk ``j`` draws from the ``j``-th child of
    ``SeedSequence(seed)``, so results do not depend on ``workers``.
    """
    bounds = _chunk_bounds(config.sample_count)
    seeds = np.random.SeedSequence(config.seed).spawn(len(bounds))

    def run(job):
        (start, stop), ss = job
        u, w, strata = _sample_chunk(start, stop, n, np.random.default_rng(ss))
        h = integrand(u) * w
        if not np.all(np.isfinite(h)):
            raise NumericError("integrand is not finite; the sections may share a zero")
        re, im = h.real, h.imag
        return (np.bincount(strata, minlength=STRATA),
                np.bincount(strata, re, STRATA), np.bincount(strata, im, STRATA),
                np.bincount(strata, re * re, STRATA), np.bincount(strata, im * im, STRATA))

    jobs = list(zip(bounds, seeds))
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    cnt = np.zeros(STRATA)
    s_re, s_im, q_re, q_im = (np.zeros(STRATA) for _ in range(4))
    for c, a, b, qa, qb in parts:  # fixed reduction order
        cnt += c
        s_re += a
        s_im += b
        q_re += qa
        q_im += qb
    used = cnt > 0
    cnt, s_re, s_im, q_re, q_im = cnt[used], s_re[used], s_im[used], q_re[used], q_im[used]
    k = len(cnt)
    mean_re, mean_im = s_re / cnt, s_im / cnt
    denom = np.maximum(cnt - 1, 1)
    var_re = np.maximum(q_re - cnt * mean_re ** 2, 0) / denom
    var_im = np.maximum(q_im - cnt * mean_im ** 2, 0) / denom
    value = complex(mean_re.mean(), mean_im.mean())
    se_re = float(np.sqrt(np.sum(var_re / cnt)) / k)
    se_im = float(np.sqrt(np.sum(var_im / cnt)) / k)
    return IntegralEstimate(value, math.hypot(se_re, se_im), config.sample_count, se_re, se_im)


def _stack_det(rows: List[List[np.ndarray]]) -> np.ndarray:
    M = np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)
    return np.linalg.det(M)


def form_constant(n: int) -> complex:
    """(-1)^{n(n-1)/2} n! / (2 pi i)^n times the conversion dxbar_I ^ dx_I -> dV."""
    sign = (-1) ** (n * (n - 1) // 2)
    prefactor = sign * math.factorial(n) / (2j * math.pi) ** n
    # dxbar_1..dxbar_n ^ dx_1..dx_n = sign * prod(dxbar_k ^ dx_k), dxbar ^ dx = 2i du dv
    measure = sign * (2j) ** n
    return prefactor * measure


def residue_integrand(fan: Fan, f_seq: Sequence[Polynomial], g: Polynomial, chart: int):
    """Pointwise integrand on the chart of maximal cone ``chart`` (before the constant)."""
    if not (fan.smooth and fan.simplicial):
        raise NumericError("integral formula is implemented on smooth fans only")
    if chart < 0 or chart >= len(fan.max_cones):
        raise NumericError(f"chart index {chart} out of range")
    I = tuple(sorted(fan.max_cones[chart]))
    det_n = lattice.det_nI(fan, I)
    fs = [dehomogenize(fan, f, I) for f in f_seq]
    dfs = [[dehomogenize(fan, partial(f, rho), I) for f in f_seq] for rho in I]
    gc = dehomogenize(fan, g, I)
    n = fan.rank

    def integrand(u: np.ndarray) -> np.ndarray:
        vals = [f(u) for f in fs]
        rows = [vals] + [[d(u) for d in drow] for drow in dfs]
        D = _stack_det(rows)
        S = sum(np.abs(v) ** 2 for v in vals)
        if np.any(S == 0):
            raise NumericError("all sections vanish at a sample point")
        return gc(u) * np.conj(D) * det_n / S ** (n + 1)

    return integrand


def residue_integral(fan: Fan, beta: DegreeClass, f_seq: Sequence[Polynomial], g: Polynomial,
                     config: SamplerConfig = SamplerConfig(), check: bool = True) -> IntegralEstimate:
    """Monte Carlo estimate of the residue of g (should match ``toric_residue``)."""
    n = fan.rank
    if n > 2:
        raise NumericError("numeric residues are limited to n <= 2")
    if len(f_seq) != n + 1:
        raise NumericError(f"need {n + 1} sections")
    if check:
        from .residue import check_condition3
        if not check_condition3(fan, beta, f_seq):
            raise NumericError("the sections share a zero on X; the integrand is singular")
    integrand = residue_integrand(fan, f_seq, g, config.chart)
    est = monte_carlo(integrand, n, config)
    k = form_constant(n)
    return IntegralEstimate(est.value * k, est.std_error * abs(k), est.samples_used,
                            *_rotate_errors(est, k))


def _rotate_errors(est: IntegralEstimate, k: complex) -> Tuple[float, float]:
    # k is real or purely imaginary here, so errors just move between components
    if abs(k.imag) < 1e-12 * abs(k):
        return est.std_error_real * abs(k), est.std_error_imag * abs(k)
    return est.std_error_imag * abs(k), est.std_error_real * abs(k)


def appendix_normalization(n: int, config: SamplerConfig = SamplerConfig()) -> IntegralEstimate:
    """(-1/(2 pi i))^n times the integral of the normalized volume form over P^n; equals 1."""
    if n not in (1, 2):
        raise NumericError("appendix normalization supports n in {1, 2}")

    def integrand(u):
        return 1.0 / (1.0 + np.sum(np.abs(u) ** 2, axis=1)) ** (n + 1) + 0j

    est = monte_carlo(integrand, n, config)
    sign_eta = (-1) ** (n * (n + 1) // 2)
    sign_swap = (-1) ** (n * (n - 1) // 2)
    k = (-1 / (2j * math.pi)) ** n * sign_eta * math.factorial(n) * sign_swap * (2j) ** n
    return IntegralEstimate(est.value * k, est.std_error * abs(k), est.samples_used,
                            *_rotate_errors(est, k))


def chart_volume_quadrature(n: int) -> Tuple[float, float]:
    """Integral of dV / (1 + |u|^2)^(n+1) over C^n by radial quadrature, with error estimate."""
    sphere = 2 * math.pi ** n / math.factorial(n - 1)
    val, err = integrate.quad(lambda r: r ** (2 * n - 1) / (1 + r * r) ** (n + 1), 0, np.inf)
    return sphere * val, sphere * err
