"""Numerical search for orthogonal matrices with a prescribed sign pattern.

The orthogonal group is explored through Cayley charts Q = B (I - A)(I + A)^-1
with A skew-symmetric and B a signed permutation whose determinant sign is the
search target (the chart preserves it).  Sign constraints become a smooth
penalty: hinge-squared terms push signed entries past a margin, quadratic
terms push zero-pattern entries to zero.  Plain gradient descent with
backtracking line search, restarted from random bases, is enough at these
orders.

A numerical find can be promoted to a certificate: every entry is replaced by
its best rational approximation with bounded denominator and the result is
re-verified with exact arithmetic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .exact import QuadMatrix, RatMatrix, is_orthogonal, matrix_to_jsonable
from .signpat import SignPattern, necessary_check, perm_sign, sign_pattern_of

TARGET_ANY = "any"
Target = Union[int, str]


def _normalize_target(target: Target):
    if target in (1, -1):
        return int(target)
    if target in (TARGET_ANY, None, 0):
        return None
    raise ValueError(f"determinant target must be +1, -1 or 'any', got {target!r}")


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and tolerances for realization search.

    margin is the sign clearance requested of every nonzero-pattern entry;
    note the default 0.05 is deliberately robust and must be lowered (the CLI
    exposes --margin) to find realizations whose smallest entry is tiny, such
    as the det -1 side of the bundled 7x7 pattern (smallest entry ~0.019786).
    """

    restarts: int = 50
    max_iters: int = 2000
    margin: float = 0.05
    zero_tol: float = 1e-9
    ortho_tol: float = 1e-9
    step_init: float = 1.0
    step_min: float = 1e-14
    step_grow: float = 2.0
    step_shrink: float = 0.5
    armijo: float = 1e-4
    rng_seed: int = 0
    time_budget: Optional[float] = None
    denom_bound: Optional[int] = None

    def __post_init__(self):
        if not (0 < self.margin < 1):
            raise ValueError("margin must lie in (0, 1)")
        for name in ("zero_tol", "ortho_tol", "step_init", "step_min"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SkewParams:
    """Strict upper triangle (row-major) of an n x n skew-symmetric matrix."""

    n: int
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        m = self.n * (self.n - 1) // 2
        if len(self.x) != m:
            raise ValueError(f"expected {m} parameters for order {self.n}, got {len(self.x)}")

    def to_matrix(self) -> np.ndarray:
        return _skew(self.n, np.asarray(self.x, dtype=float))


def _skew(n: int, x: np.ndarray) -> np.ndarray:
    A = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    A[iu] = x
    A -= A.T
    return A


def cayley(A: SkewParams, base: Optional[np.ndarray] = None) -> np.ndarray:
    """Orthogonal matrix base @ (I - A)(I + A)^-1; det equals det(base)."""
    n = A.n
    S = A.to_matrix()
    I = np.eye(n)
    Q = (I - S) @ np.linalg.inv(I + S)
    return Q if base is None else np.asarray(base, dtype=float) @ Q


def ortho_residual(Q: np.ndarray) -> float:
    """Max-norm of Q^T Q - I."""
    Q = np.asarray(Q, dtype=float)
    return float(np.max(np.abs(Q.T @ Q - np.eye(Q.shape[0]))))


def reorthonormalize(M) -> np.ndarray:
    """Nearest orthogonal matrix (polar factor via SVD).

    Idempotent on orthogonal inputs up to roundoff; preserves the determinant
    sign of the input.  Raises on singular input.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("reorthonormalize expects a square matrix")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    U, s, Vt = np.linalg.svd(M)
    if s[-1] <= s[0] * M.shape[0] * np.finfo(float).eps:
        raise ValueError("degenerate input: matrix is singular to working precision")
    return U @ Vt


def to_float(M) -> np.ndarray:
    """Float image of an exact matrix (entries rounded once, to nearest)."""
    if isinstance(M, (RatMatrix, QuadMatrix)):
        return np.array([[float(M[i, j]) for j in range(M.cols)] for i in range(M.rows)])
    return np.asarray(M, dtype=float)


def float_det_sign(Q: np.ndarray) -> int:
    sign, _ = np.linalg.slogdet(np.asarray(Q, dtype=float))
    return int(sign)


def perturb(Q: np.ndarray, eps: float, rng: np.random.Generator) -> np.ndarray:
    """Entrywise uniform noise in [-eps, eps], the noise model used in tests."""
    Q = np.asarray(Q, dtype=float)
    return Q + rng.uniform(-eps, eps, size=Q.shape)


class _CompiledPattern:
    """Pattern S as float mask arrays, shared across optimizer iterations."""

    def __init__(self, S: SignPattern):
        self.S = S
        self.n = S.n
        self.sarr = np.array(S.entries, dtype=float).reshape(S.n, S.n)
        self.nonzero = self.sarr != 0
        self.zero = ~self.nonzero
        self.iu = np.triu_indices(S.n, 1)

    def min_margin(self, Q: np.ndarray) -> float:
        if not self.nonzero.any():
            return float("inf")
        return float(np.min((self.sarr * Q)[self.nonzero]))

    def max_zero_violation(self, Q: np.ndarray) -> float:
        if not self.zero.any():
            return 0.0
        return float(np.max(np.abs(Q[self.zero])))

    def hard_zero(self, Q: np.ndarray, zero_tol: float) -> np.ndarray:
        out = Q.copy()
        out[self.zero & (np.abs(Q) <= zero_tol)] = 0.0
        return out


def objective(S: SignPattern, Q: np.ndarray, margin: float) -> float:
    """Penalty value: 0 iff every signed entry clears the margin and every
    zero-pattern entry is exactly zero."""
    if margin <= 0:
        raise ValueError("margin must be positive")
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (S.n, S.n):
        raise ValueError(f"matrix shape {Q.shape} does not match pattern order {S.n}")
    cp = _CompiledPattern(S)
    f, _, _ = _penalty_terms(cp, Q, margin)
    return f


def _penalty_terms(cp: _CompiledPattern, Q: np.ndarray, margin: float):
    """(value, hinge part, gradient wrt Q)."""
    H = np.maximum(np.where(cp.nonzero, margin - cp.sarr * Q, 0.0), 0.0)
    Z = np.where(cp.zero, Q, 0.0)
    hinge = float(np.sum(H * H))
    f = hinge + float(np.sum(Z * Z))
    G = -2.0 * H * cp.sarr + 2.0 * Z
    return f, hinge, G


def _chart_value_grad(cp: _CompiledPattern, x: np.ndarray, base: np.ndarray, margin: float):
    """Objective and gradient in chart coordinates at parameter vector x."""
    n = cp.n
    I = np.eye(n)
    A = _skew(n, x)
    C = np.linalg.inv(I + A)
    M = (I - A) @ C
    Q = base @ M
    f, hinge, G = _penalty_terms(cp, Q, margin)
    # dQ = -B (I + M) dA C  =>  df/dA = W with W as below; skew pairing gives
    # df/dx_k = W[i,j] - W[j,i] for the upper-triangle slot k = (i,j)
    W = -(I + M).T @ base.T @ G @ C.T
    grad = W[cp.iu] - W.T[cp.iu]
    return Q, f, hinge, grad


@dataclass
class RealizationResult:
    """A numerically found orthogonal realization of a sign pattern.

    q is reported with sub-zero_tol entries on zero-pattern positions snapped
    to exact 0; ortho_residual, min_margin and objective_value refer to this
    reported matrix, while max_zero_violation records the worst zero-pattern
    entry magnitude before snapping.
    """

    q: np.ndarray
    det_sign: int
    objective_value: float
    ortho_residual: float
    min_margin: float
    max_zero_violation: float
    certificate: Optional[RatMatrix] = None
    restart_index: int = 0
    iterations: int = 0

    def to_json_dict(self) -> dict:
        return {
            "q": [[float(v) for v in row] for row in self.q],
            "det_sign": self.det_sign,
            "objective_value": float(self.objective_value),
            "ortho_residual": float(self.ortho_residual),
            "min_margin": float(self.min_margin),
            "max_zero_violation": float(self.max_zero_violation),
            "certificate": None if self.certificate is None else matrix_to_jsonable(self.certificate),
            "restart_index": self.restart_index,
            "iterations": self.iterations,
        }


class _Deadline:
    def __init__(self, budget: Optional[float]):
        self.expiry = None if budget is None else time.monotonic() + budget

    def exceeded(self) -> bool:
        return self.expiry is not None and time.monotonic() > self.expiry


def _try_accept(cp: _CompiledPattern, Q: np.ndarray, hinge: float, cfg: SearchConfig):
    """Full success check; returns the hard-zeroed matrix on acceptance."""
    if hinge != 0.0:
        return None
    if cp.max_zero_violation(Q) > cfg.zero_tol:
        return None
    Qz = cp.hard_zero(Q, cfg.zero_tol)
    if ortho_residual(Qz) > cfg.ortho_tol:
        return None
    return Qz


def _descend(cp: _CompiledPattern, base: np.ndarray, x0: np.ndarray, cfg: SearchConfig, deadline: _Deadline):
    """Backtracking gradient descent in one Cayley chart.

    Returns (accepted Qz or None, raw Q, x, iterations used).
    """
    x = np.asarray(x0, dtype=float)
    Q, f, hinge, g = _chart_value_grad(cp, x, base, cfg.margin)
    Qz = _try_accept(cp, Q, hinge, cfg)
    if Qz is not None:
        return Qz, Q, x, 0
    step = cfg.step_init
    for it in range(1, cfg.max_iters + 1):
        gnorm2 = float(g @ g)
        if gnorm2 <= 1e-30:
            return None, Q, x, it - 1
        accepted = False
        while step >= cfg.step_min:
            xn = x - step * g
            Qn, fn, hn, gn = _chart_value_grad(cp, xn, base, cfg.margin)
            if fn <= f - cfg.armijo * step * gnorm2:
                accepted = True
                break
            step *= cfg.step_shrink
        if not accepted:
            return None, Q, x, it - 1
        x, Q, f, hinge, g = xn, Qn, fn, hn, gn
        Qz = _try_accept(cp, Q, hinge, cfg)
        if Qz is not None:
            return Qz, Q, x, it
        step = min(step * cfg.step_grow, cfg.step_init)
        if it % 64 == 0 and deadline.exceeded():
            return None, Q, x, it
    return None, Q, x, cfg.max_iters


def _random_signed_perm(rng: np.random.Generator, n: int, det_target: Optional[int]) -> np.ndarray:
    perm = tuple(int(v) for v in rng.permutation(n))
    signs = [int(v) for v in rng.integers(0, 2, size=n) * 2 - 1]
    if det_target is not None:
        d = perm_sign(perm)
        for s in signs:
            d *= s
        if d != det_target:
            signs[0] = -signs[0]
    B = np.zeros((n, n))
    for i in range(n):
        B[i, perm[i]] = signs[i]
    return B


def _assemble(cp: _CompiledPattern, Qz: np.ndarray, Q_raw: np.ndarray, cfg: SearchConfig,
              restart_index: int, iterations: int) -> RealizationResult:
    result = RealizationResult(
        q=Qz,
        det_sign=float_det_sign(Qz),
        objective_value=objective(cp.S, Qz, cfg.margin),
        ortho_residual=ortho_residual(Qz),
        min_margin=cp.min_margin(Qz),
        max_zero_violation=cp.max_zero_violation(Q_raw),
        restart_index=restart_index,
        iterations=iterations,
    )
    if cfg.denom_bound is not None:
        result.certificate = rational_certify(Qz, cfg.denom_bound)
    return result


def search_realization(S: SignPattern, target: Target, cfg: Optional[SearchConfig] = None) -> Optional[RealizationResult]:
    """Hunt for an orthogonal matrix with pattern S and the target determinant
    sign; None means no find within budget, never impossibility.

    Deterministic for a fixed cfg.rng_seed (restart r uses its own generator
    seeded by (rng_seed, r); the first success by restart index wins).
    """
    cfg = cfg or SearchConfig()
    det_target = _normalize_target(target)
    if not necessary_check(S).passed:
        return None
    cp = _CompiledPattern(S)
    n = S.n
    m = n * (n - 1) // 2
    deadline = _Deadline(cfg.time_budget)
    for r in range(cfg.restarts):
        if deadline.exceeded():
            return None
        rng = np.random.default_rng([cfg.rng_seed, r])
        side = det_target if det_target is not None else int(rng.choice((-1, 1)))
        base = _random_signed_perm(rng, n, side)
        # the base itself realizes signed-permutation patterns outright
        _, hinge_b, _ = _penalty_terms(cp, base, cfg.margin)
        Qz = _try_accept(cp, base, hinge_b, cfg)
        if Qz is not None:
            return _assemble(cp, Qz, base, cfg, r, 0)
        x0 = rng.uniform(-1.0, 1.0, size=m)
        Qz, Q_raw, _, iters = _descend(cp, base, x0, cfg, deadline)
        if Qz is not None:
            return _assemble(cp, Qz, Q_raw, cfg, r, iters)
    return None


def refine_from(Q0, S: SignPattern, target: Target, cfg: Optional[SearchConfig] = None) -> Optional[RealizationResult]:
    """Polish a seed matrix into a realization, staying in its basin.

    The seed is projected onto the orthogonal group and descent runs in the
    Cayley chart centered there; its determinant sign is therefore fixed, and
    a mismatched target returns None immediately.
    """
    cfg = cfg or SearchConfig()
    det_target = _normalize_target(target)
    Q0 = np.asarray(Q0, dtype=float)
    if Q0.shape != (S.n, S.n):
        raise ValueError(f"seed shape {Q0.shape} does not match pattern order {S.n}")
    if ortho_residual(Q0) > 0.5:
        raise ValueError("seed is too far from orthogonal (residual > 0.5)")
    base = reorthonormalize(Q0)
    if det_target is not None and float_det_sign(base) != det_target:
        return None
    cp = _CompiledPattern(S)
    deadline = _Deadline(cfg.time_budget)
    x0 = np.zeros(S.n * (S.n - 1) // 2)
    Qz, Q_raw, _, iters = _descend(cp, base, x0, cfg, deadline)
    if Qz is None:
        return None
    return _assemble(cp, Qz, Q_raw, cfg, 0, iters)


def rational_certify(Q, denom_bound: int, zero_tol: float = 0.0) -> Optional[RatMatrix]:
    """Lift a float matrix to an exactly verified rational orthogonal matrix.

    Each entry is replaced by its best rational approximation with denominator
    <= denom_bound (continued-fraction convergent); the candidate must then
    pass the exact orthogonality check and reproduce the float sign pattern,
    else None.
    """
    if denom_bound < 1:
        raise ValueError("denominator bound must be at least 1")
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError("certification expects a square matrix")
    n = Q.shape[0]
    entries = []
    for q in Q.flat:
        q = float(q)
        if abs(q) <= zero_tol:
            entries.append(Fraction(0))
        else:
            entries.append(Fraction(q).limit_denominator(denom_bound))
    cand = RatMatrix(n, n, tuple(entries))
    if not is_orthogonal(cand):
        return None
    if sign_pattern_of(cand) != sign_pattern_of(Q, zero_tol):
        return None
    return cand
