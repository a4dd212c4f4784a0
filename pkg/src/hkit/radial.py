"""Finite-difference eigensolvers for the dual pair of radial equations.

The oscillator equation in D dimensions and the Coulomb equation in
d = D/2 + 1 dimensions are both reduced by R = x^{-(dim-1)/2} chi to

    -chi'' + [Lambda / x^2 + (2m/hbar^2) V(x)] chi = (2m/hbar^2) E chi,

with Lambda = ell (ell + dim - 2) + (dim - 1)(dim - 3)/4, and solved on a
uniform grid as a symmetric tridiagonal eigenproblem.  Eigenvalues are
Richardson-refined from two grids by default.  The box is sized so that
the WKB barrier action beyond the outer turning point suppresses the
Dirichlet truncation below the eigenvalue tolerance; the classical
turning point alone leaves errors far above 1e-6 for Coulomb tails.

The duality map r = u^2 is implemented level-by-level in both directions,
and the substitution check resamples a solved oscillator eigenfunction
onto r = u^2 and measures how well it satisfies the Coulomb equation with
the mapped energy and coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import GridTooCoarse, InterpolationFailure

_ACTION_TARGET = 14.0   # exp(-2*14) ~ 7e-13 tail leakage at the wall
_BOX_CAP_FACTOR = 60.0  # hard stop for the wall search, in turning-point units

OSCILLATOR = "oscillator"
COULOMB = "coulomb"
MODIFIED = "modified"


@dataclass(frozen=True)
class RadialProblem:
    """One radial eigenproblem: kind, dimension, angular momentum, potential data.

    `dim` is D for the oscillator and modified kinds, d for the Coulomb
    kind; `ell` is the global angular momentum L (integer) or its dual
    l = L/2 (half-integers welcome).  `box` overrides the automatic wall
    placement; `n_points` is the coarse interior grid size.
    """
    kind: str
    dim: float
    ell: float
    omega: float = 0.0
    e2: float = 0.0
    coeffs: tuple[float, ...] = ()
    mass: float = 1.0
    hbar: float = 1.0
    n_points: int = 4096
    box: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (OSCILLATOR, COULOMB, MODIFIED):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.dim <= 2:
            raise ValueError(f"dimension must exceed 2, got {self.dim}")
        if self.ell < 0:
            raise ValueError(f"angular momentum must be non-negative, got {self.ell}")
        if self.kind == OSCILLATOR and float(self.ell) != int(self.ell):
            raise ValueError(f"oscillator L must be an integer, got {self.ell}")
        if self.mass <= 0 or self.hbar <= 0:
            raise ValueError("mass and hbar must be positive")
        if self.n_points < 64:
            raise ValueError(f"n_points must be at least 64, got {self.n_points}")
        if self.kind == OSCILLATOR and self.omega < 0:
            raise ValueError(f"omega must be non-negative, got {self.omega}")
        if self.kind == COULOMB and self.e2 <= 0:
            raise ValueError(f"coulomb coupling must be positive, got {self.e2}")
        if self.kind == MODIFIED:
            if len(self.coeffs) < 2:
                raise ValueError("modified potential needs at least (c0, c1)")
            if self.coeffs[-1] <= 0:
                raise ValueError("modified potential must confine: leading coefficient > 0")
        if self.box is not None and self.box <= 0:
            raise ValueError(f"box must be positive, got {self.box}")

    @staticmethod
    def oscillator(D: int, L: int, omega: float, *, mass: float = 1.0,
                   hbar: float = 1.0, n_points: int = 4096,
                   box: float | None = None) -> "RadialProblem":
        return RadialProblem(OSCILLATOR, float(D), float(L), omega=float(omega),
                             mass=mass, hbar=hbar, n_points=n_points, box=box)

    @staticmethod
    def coulomb(d: float, l: float, e2: float, *, mass: float = 1.0,
                hbar: float = 1.0, n_points: int = 4096,
                box: float | None = None) -> "RadialProblem":
        return RadialProblem(COULOMB, float(d), float(l), e2=float(e2),
                             mass=mass, hbar=hbar, n_points=n_points, box=box)

    @staticmethod
    def modified(coeffs, D: int = 8, L: int = 0, *, mass: float = 1.0,
                 hbar: float = 1.0, n_points: int = 4096,
                 box: float | None = None) -> "RadialProblem":
        return RadialProblem(MODIFIED, float(D), float(L),
                             coeffs=tuple(float(c) for c in coeffs),
                             mass=mass, hbar=hbar, n_points=n_points, box=box)


def effective_lambda(dim: float, ell: float) -> float:
    """Centrifugal strength of the reduced equation."""
    return ell * (ell + dim - 2) + (dim - 1) * (dim - 3) / 4.0


def oscillator_level(problem: RadialProblem, n_r: int) -> float:
    """Closed-form oscillator level hbar w (2 n_r + L + D/2)."""
    return problem.hbar * problem.omega * (2 * n_r + problem.ell + problem.dim / 2)


def coulomb_level(problem: RadialProblem, n_r: int) -> float:
    """Closed-form bound level -m e2^2 / (2 hbar^2 (n_r + l + (d-1)/2)^2)."""
    n = n_r + problem.ell + (problem.dim - 1) / 2
    return -problem.mass * problem.e2 ** 2 / (2 * problem.hbar ** 2 * n * n)


def _scaled_potential(problem: RadialProblem):
    """(2m/hbar^2) V(x) as a vectorized callable."""
    scale = 2 * problem.mass / problem.hbar ** 2
    if problem.kind == OSCILLATOR:
        half_mw2 = 0.5 * problem.mass * problem.omega ** 2
        return lambda x: scale * half_mw2 * x * x
    if problem.kind == COULOMB:
        e2 = problem.e2
        return lambda x: scale * (-e2) / x
    coeffs = problem.coeffs[::-1]
    return lambda x: scale * np.polyval(coeffs, x * x)


def _auto_box(problem: RadialProblem, scaled_top: float) -> float:
    """Wall position: outer turning point plus enough barrier action.

    `scaled_top` is (2m/hbar^2) E of the least-bound retained level.  The
    wall goes where the WKB action integral of the effective potential
    past the outer turning point reaches _ACTION_TARGET, so the truncated
    tail cannot shift eigenvalues at the tolerances used here.
    """
    lam = effective_lambda(problem.dim, problem.ell)
    w = _scaled_potential(problem)

    def forbidden(x: float) -> float:
        return lam / (x * x) + float(w(np.asarray(x))) - scaled_top

    # Outer turning point: last sign change on a geometric scan.
    xs = np.geomspace(1e-6, 1e7, 1400)
    vals = np.array([forbidden(x) for x in xs])
    inside = np.nonzero(vals < 0)[0]
    if inside.size == 0:
        # No classically allowed region at this energy; centrifugal wall
        # dominates.  Fall back to the scale where the potential passes
        # the energy.
        turn = float(xs[np.argmin(np.abs(vals))])
    else:
        lo = xs[inside[-1]]
        hi = xs[min(inside[-1] + 1, xs.size - 1)]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if forbidden(mid) < 0:
                lo = mid
            else:
                hi = mid
        turn = hi
    # Accumulate sqrt(w_eff - lambda_top) until the action target is met.
    step = max(turn, 1.0) / 400.0
    action = 0.0
    x = turn
    cap = _BOX_CAP_FACTOR * max(turn, 1.0)
    prev = 0.0
    while action < _ACTION_TARGET and x < cap:
        x += step
        cur = math.sqrt(max(forbidden(x), 0.0))
        action += 0.5 * (prev + cur) * step
        prev = cur
    return max(x, 1.5 * turn)


def _fd_eigen(lam: float, wfun, box: float, n: int, k: int):
    """Lowest k scaled eigenvalues and vectors of the reduced operator."""
    h = box / (n + 1)
    x = h * np.arange(1, n + 1)
    diag = 2.0 / (h * h) + lam / (x * x) + wfun(x)
    off = np.full(n - 1, -1.0 / (h * h))
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    return x, diag, off, vals, vecs


def _matrix_residuals(diag, off, vals, vecs) -> np.ndarray:
    """||(T - lambda) v|| / (||T|| ||v||) per retained eigenpair."""
    opscale = np.max(np.abs(diag)) + 2 * np.max(np.abs(off))
    out = np.empty(vals.size)
    for j in range(vals.size):
        v = vecs[:, j]
        tv = diag * v
        tv[:-1] += off * v[1:]
        tv[1:] += off * v[:-1]
        out[j] = np.linalg.norm(tv - vals[j] * v) / (opscale * np.linalg.norm(v))
    return out


@dataclass(frozen=True)
class EigenResult:
    """Solved levels of one radial problem on the fine grid."""
    problem: RadialProblem
    box: float
    eigenvalues: np.ndarray        # Richardson-refined energies
    raw_eigenvalues: np.ndarray    # fine-grid energies before refinement
    eigenvectors: np.ndarray       # (n_fine, k), L2-normalized columns
    grid: np.ndarray               # fine interior nodes
    residual_norms: np.ndarray     # matrix residuals per retained pair
    convergence: np.ndarray        # relative size of the Richardson correction


def _solve(problem: RadialProblem, levels: int, refine: bool,
           rtol: float, scaled_top: float) -> EigenResult:
    lam = effective_lambda(problem.dim, problem.ell)
    wfun = _scaled_potential(problem)
    box = problem.box if problem.box is not None else _auto_box(problem, scaled_top)
    n = problem.n_points
    if levels > n // 4:
        raise ValueError(f"{levels} levels on {n} points will not resolve")
    escale = problem.hbar ** 2 / (2 * problem.mass)

    if not refine:
        x, diag, off, vals, vecs = _fd_eigen(lam, wfun, box, n, levels)
        energies = vals * escale
        return EigenResult(problem, box, energies, energies.copy(),
                           _normalize(vecs, box / (n + 1)), x,
                           _matrix_residuals(diag, off, vals, vecs),
                           np.full(levels, np.nan))

    _, _, _, coarse, _ = _fd_eigen(lam, wfun, box, n, levels)
    nf = 2 * n + 1
    x, diag, off, fine, vecs = _fd_eigen(lam, wfun, box, nf, levels)
    refined = (4.0 * fine - coarse) / 3.0
    floor = np.max(np.abs(refined)) * 1e-9 + 1e-300
    conv = np.abs(fine - coarse) / (3.0 * np.maximum(np.abs(refined), floor))
    if np.any(conv > math.sqrt(rtol)):
        worst = int(np.argmax(conv))
        raise GridTooCoarse(
            f"level {worst}: Richardson correction {conv[worst]:.2e} exceeds "
            f"sqrt(rtol) = {math.sqrt(rtol):.2e}; raise n_points")
    return EigenResult(problem, box, refined * escale, fine * escale,
                       _normalize(vecs, box / (nf + 1)), x,
                       _matrix_residuals(diag, off, fine, vecs), conv)


def _normalize(vecs: np.ndarray, h: float) -> np.ndarray:
    out = vecs / np.sqrt(h * np.sum(vecs * vecs, axis=0, keepdims=True))
    for j in range(out.shape[1]):
        lead = np.nonzero(np.abs(out[:, j]) > 1e-3 * np.max(np.abs(out[:, j])))[0][0]
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def solve_oscillator(problem: RadialProblem, levels: int = 1, *,
                     refine: bool = True, rtol: float = 1e-6) -> EigenResult:
    """Lowest `levels` oscillator energies, near hbar w (2 n_r + L + D/2)."""
    if problem.kind != OSCILLATOR:
        raise ValueError(f"need an oscillator problem, got {problem.kind!r}")
    if problem.omega == 0 and problem.box is None:
        raise ValueError("free oscillator (omega = 0) needs an explicit box")
    top = oscillator_level(problem, levels - 1) if problem.omega > 0 else 0.0
    scaled_top = 2 * problem.mass * top / problem.hbar ** 2
    return _solve(problem, levels, refine, rtol, scaled_top)


def solve_coulomb(problem: RadialProblem, levels: int = 1, *,
                  refine: bool = True, rtol: float = 1e-6) -> EigenResult:
    """Lowest `levels` bound Coulomb energies, near the inverse-square law."""
    if problem.kind != COULOMB:
        raise ValueError(f"need a coulomb problem, got {problem.kind!r}")
    top = coulomb_level(problem, levels - 1)
    scaled_top = 2 * problem.mass * top / problem.hbar ** 2
    return _solve(problem, levels, refine, rtol, scaled_top)


def solve_modified(problem: RadialProblem, levels: int = 1, *,
                   refine: bool = True, rtol: float = 1e-6) -> EigenResult:
    """Lowest `levels` energies of an oscillator-like polynomial potential.

    The wall needs the top retained energy, which has no closed form
    here, so a coarse pilot solve bootstraps the box before the final
    run.
    """
    if problem.kind != MODIFIED:
        raise ValueError(f"need a modified problem, got {problem.kind!r}")
    scale = 2 * problem.mass / problem.hbar ** 2
    if problem.box is None:
        c1 = problem.coeffs[1] if problem.coeffs[1] > 0 else problem.coeffs[-1]
        w_eff = math.sqrt(2 * c1 / problem.mass)
        guess = (problem.coeffs[0]
                 + problem.hbar * w_eff * (2 * (levels + 1) + problem.ell + problem.dim / 2))
        pilot_box = _auto_box(problem, scale * guess)
        pilot = _solve(replace(problem, n_points=768, box=pilot_box),
                       levels, False, rtol, scale * guess)
        spacing = (pilot.eigenvalues[-1] - pilot.eigenvalues[0]) / max(levels - 1, 1)
        top = pilot.eigenvalues[-1] + max(spacing, abs(pilot.eigenvalues[-1]) * 0.1)
        problem = replace(problem, box=_auto_box(problem, scale * top))
    # box is set by now, so the top-energy argument below is never consulted
    return _solve(problem, levels, refine, rtol, 0.0)


def modified_ansatz(c0: float, c1: float, E: float) -> tuple[float, float]:
    """Dual (energy, coupling) of an oscillator-like level E with potential
    c0 + c1 u^2 + (higher even powers): eps = -c1/4 and e2 = (E - c0)/4.

    Exact on Fractions as well as floats; for the pure oscillator
    (c0 = 0, c1 = m w^2 / 2) it reduces to eps = -m w^2 / 8, e2 = E/4.
    """
    quarter = Fraction(1, 4) if isinstance(E, (Fraction, int)) else 0.25
    return -c1 * quarter, (E - c0) * quarter


@dataclass(frozen=True)
class MappedLevel:
    """One source level pushed through r = u^2 onto its dual problem."""
    index: int
    source_value: float
    dual_problem: RadialProblem
    dual_index: int
    predicted: float


def duality_map(result: EigenResult, direction: str = "oscillator->coulomb") -> list[MappedLevel]:
    """Map a solved spectrum level-by-level onto its dual problem.

    Forward: oscillator level E_n becomes the coupling e2 = E_n/4 of a
    Coulomb problem in d = D/2 + 1 dimensions with l = L/2, whose n-th
    bound level must sit at eps = -m w^2/8 (one energy for every n: the
    trade of quantized coupling against fixed energy).  Backward: bound
    level eps_n turns into the frequency w = sqrt(-8 eps_n / m) of an
    oscillator in D = 2(d - 1) dimensions with L = 2 l, whose n-th level
    must sit at E = 4 e2.  The w = 0 edge (eps = 0, free limit) stays
    well-defined; it just maps to a frequency-free problem.
    """
    src = result.problem
    out = []
    if direction == "oscillator->coulomb":
        if src.kind != OSCILLATOR:
            raise ValueError(f"forward map needs an oscillator source, got {src.kind!r}")
        predicted = -src.mass * src.omega ** 2 / 8.0
        for n, energy in enumerate(result.eigenvalues):
            dual = RadialProblem.coulomb(src.dim / 2 + 1, src.ell / 2, float(energy) / 4.0,
                                         mass=src.mass, hbar=src.hbar,
                                         n_points=src.n_points)
            out.append(MappedLevel(n, float(energy), dual, n, predicted))
        return out
    if direction == "coulomb->oscillator":
        if src.kind != COULOMB:
            raise ValueError(f"backward map needs a coulomb source, got {src.kind!r}")
        predicted = 4.0 * src.e2
        for n, eps in enumerate(result.eigenvalues):
            w = math.sqrt(max(-8.0 * float(eps) / src.mass, 0.0))
            dual = RadialProblem.oscillator(int(round(2 * (src.dim - 1))),
                                            int(round(2 * src.ell)), w,
                                            mass=src.mass, hbar=src.hbar,
                                            n_points=src.n_points)
            out.append(MappedLevel(n, float(eps), dual, n, predicted))
        return out
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class SubstitutionResult:
    """Residual of a resampled oscillator eigenfunction in the dual equation."""
    level: int
    eps: float
    e2: float
    rel_residual: float
    passed: bool
    window: tuple[float, float]
    n_samples: int


def substitution_residual_check(result: EigenResult, level: int = 0, *,
                                eps: float | None = None, e2: float | None = None,
                                tol: float = 1e-4) -> SubstitutionResult:
    """Resample a solved oscillator radial function onto r = u^2 and test it.

    The full radial function R(u) = u^{-(D-1)/2} chi(u) is interpolated
    as a function of r = u^2 and inserted into the dual equation

        R'' + (d-1)/r R' - l(l+d-2)/r^2 R + (2m/hbar^2)(eps + e2/r) R = 0

    with d = D/2 + 1, l = L/2 and, unless overridden, the ansatz values
    eps = -m w^2/8 and e2 = E/4 from the solved eigenvalue.  Reports the
    relative L2 residual over the classically relevant window.  Passing
    wrong (eps, e2) on purpose makes the residual jump by orders, which
    is used as the negative control.
    """
    prob = result.problem
    if prob.kind != OSCILLATOR:
        raise ValueError(f"need an oscillator eigenpair, got {prob.kind!r}")
    if level >= result.eigenvectors.shape[1]:
        raise ValueError(f"level {level} not retained")
    energy = float(result.eigenvalues[level])
    if eps is None:
        eps = -prob.mass * prob.omega ** 2 / 8.0
    if e2 is None:
        e2 = energy / 4.0

    u = result.grid
    chi = result.eigenvectors[:, level]
    rad = chi * u ** (-(prob.dim - 1) / 2.0)
    r = u * u
    turn = math.sqrt(2 * energy / (prob.mass * prob.omega ** 2)) if prob.omega > 0 else u[-1]
    lo_u, hi_u = 0.25 * turn, 1.2 * turn
    mask = (u >= lo_u) & (u <= hi_u)
    if np.count_nonzero(mask) < 32:
        raise InterpolationFailure(
            f"window [{lo_u:.3g}, {hi_u:.3g}] holds too few grid points")
    spline = CubicSpline(r, rad)
    rw = r[mask]
    s0 = spline(rw)
    s1 = spline(rw, 1)
    s2 = spline(rw, 2)
    d = prob.dim / 2 + 1
    l = prob.ell / 2
    scale = 2 * prob.mass / prob.hbar ** 2
    resid = (s2 + (d - 1) / rw * s1 - l * (l + d - 2) / rw ** 2 * s0
             + scale * (eps + e2 / rw) * s0)
    drive = scale * (abs(eps) + e2 / rw) * np.abs(s0)
    rel = float(np.linalg.norm(resid) / np.linalg.norm(drive))
    if not np.isfinite(rel):
        raise InterpolationFailure("residual evaluation produced non-finite values")
    return SubstitutionResult(level=level, eps=float(eps), e2=float(e2),
                              rel_residual=rel, passed=(rel < tol),
                              window=(float(rw[0]), float(rw[-1])),
                              n_samples=int(rw.size))
