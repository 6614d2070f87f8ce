"""Floating-point Hodge metrics along twisted nilpotent orbits.

Evaluates metrics on the top Hodge piece and its augmented variant, fits
logarithmic growth orders along boundary rays, and compares finite-difference
curvature against the graded boundary value computed from the exact weight
filtration.  Everything runs in double precision with two documented
tolerances: 1e-8 for algebraic identities and 1e-2 for asymptotic fits (the
fits are limited by log-log convergence, not by arithmetic).  Subspace
intersections use singular-value thresholding at 1e-10 relative, surfaced as
the svd_tol knob.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, log, pi

import numpy as np
from scipy.linalg import expm, lstsq, qr

from .errors import NotPolarized, PoorFit
from .filtrations import NilpotentCone, index_set, weight_filtration
from .linalg import RationalMatrix

ALGEBRAIC_TOL = 1e-8
FIT_TOL = 1e-2
SVD_TOL = 1e-10

TWO_PI_I = 2j * pi


def _np_matrix(m: RationalMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m.entries], dtype=float)


def log_coord(t: complex) -> complex:
    """Inverse of t = exp(2 pi i z) on the principal branch."""
    return np.log(complex(t)) / TWO_PI_I


class FlagPoint:
    """Partial flag F^n <= ... <= F^1 of column spans (F^0 is everything)."""

    def __init__(self, weight: int, levels: dict[int, np.ndarray], svd_tol: float = SVD_TOL):
        self.weight = weight
        self.levels = {p: np.asarray(m, dtype=complex) for p, m in levels.items()}
        dims = {p: m.shape[1] for p, m in self.levels.items()}
        ps = sorted(dims, reverse=True)
        for a, b in zip(ps, ps[1:]):
            big, small = self.levels[b], self.levels[a]
            resid = small - big @ np.linalg.lstsq(big, small, rcond=None)[0]
            if np.linalg.norm(resid) > svd_tol * max(1.0, np.linalg.norm(small)):
                raise ValueError(f"F^{a} is not contained in F^{b}")

    def level(self, p: int) -> np.ndarray:
        if p in self.levels:
            return self.levels[p]
        dim = next(iter(self.levels.values())).shape[0]
        if p <= 0:
            return np.eye(dim, dtype=complex)
        raise KeyError(f"flag level {p} not provided")

    def transform(self, g: np.ndarray) -> "FlagPoint":
        return FlagPoint(self.weight, {p: g @ m for p, m in self.levels.items()})


def _nullspace(m: np.ndarray, svd_tol: float = SVD_TOL) -> np.ndarray:
    if m.shape[0] == 0:
        return np.eye(m.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(m)
    cutoff = svd_tol * max(1.0, s[0] if s.size else 0.0)
    nrank = int(np.sum(s > cutoff))
    return vh[nrank:].conj().T


def _intersect_spans(a: np.ndarray, b: np.ndarray, svd_tol: float = SVD_TOL) -> np.ndarray:
    """Columns spanning span(a) cap span(b)."""
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    null = _nullspace(np.hstack([a, -b]), svd_tol)
    return a @ null[: a.shape[1]]


def hodge_decomposition(
    flag: FlagPoint, form: np.ndarray, tol: float = ALGEBRAIC_TOL
) -> dict[tuple[int, int], np.ndarray]:
    """Hodge decomposition H^{p,q} = F^p cap conj(F^{n-p}) with positivity.

    Raises NotPolarized when the pieces fail to fill the space or the Hermitian
    form i^{p-q} Q(u, conj v) is not positive definite on some piece.
    """
    n = flag.weight
    dim = form.shape[0]
    pieces: dict[tuple[int, int], np.ndarray] = {}
    total = 0
    stack = []
    for p in range(n, -1, -1):
        q = n - p
        basis = _intersect_spans(flag.level(p), flag.level(q).conj())
        if basis.shape[1]:
            basis, _ = np.linalg.qr(basis)
        pieces[(p, q)] = basis
        total += basis.shape[1]
        if basis.shape[1]:
            stack.append(basis)
    if total != dim:
        raise NotPolarized(f"Hodge pieces span dimension {total} of {dim}")
    combined = np.hstack(stack)
    smin = np.linalg.svd(combined, compute_uv=False)[-1]
    if smin < tol:
        raise NotPolarized("Hodge pieces are not in direct sum")
    for (p, q), basis in pieces.items():
        if basis.shape[1] == 0:
            continue
        gram = (1j) ** (p - q) * (basis.T @ form @ basis.conj())
        herm = 0.5 * (gram + gram.conj().T)
        if np.linalg.norm(gram - herm) > tol * max(1.0, np.linalg.norm(gram)):
            raise NotPolarized(f"H^{p},{q} pairing is not Hermitian")
        if np.linalg.eigvalsh(herm).min() <= tol:
            raise NotPolarized(f"H^{p},{q} pairing is not positive definite")
    return pieces


@dataclass(frozen=True)
class Twist:
    """Boundary twist w -> zeta(w), commuting with every generator."""

    kind: str  # "none" | "exp_linear"
    generator: np.ndarray | None = None

    def matrix(self, w: complex, dim: int) -> np.ndarray:
        if self.kind == "none":
            return np.eye(dim, dtype=complex)
        if self.kind == "exp_linear":
            return expm(complex(w) * self.generator)
        raise ValueError(f"unknown twist kind {self.kind!r}")


class OrbitSpec:
    """Twisted nilpotent orbit exp(sum l(t_i) N_i) . zeta(w) . F0."""

    def __init__(self, cone: NilpotentCone, f0: FlagPoint, twist: Twist | None = None,
                 tol: float = 1e-10):
        self.cone = cone
        self.f0 = f0
        self.twist = twist or Twist("none")
        self.form = _np_matrix(cone.form)
        self.gens = [_np_matrix(n) for n in cone.generators]
        if self.twist.kind != "none":
            xi = np.asarray(self.twist.generator, dtype=complex)
            for i, n in enumerate(self.gens):
                comm = xi @ n - n @ xi
                if np.linalg.norm(comm, ord=np.inf) > tol:
                    raise ValueError(f"twist does not commute with generator {i + 1}")

    @property
    def weight(self) -> int:
        return self.cone.weight

    def group_element(self, t, w) -> np.ndarray:
        z = sum(log_coord(ti) * n for ti, n in zip(t, self.gens, strict=True))
        return expm(z) @ self.twist.matrix(w, self.form.shape[0])

    def flag_at(self, t, w) -> FlagPoint:
        return self.f0.transform(self.group_element(t, w))

    def limit_frame(self, w) -> np.ndarray:
        """Columns zeta(w) . F0^n; the t-direction factor removed."""
        return self.twist.matrix(w, self.form.shape[0]) @ self.f0.level(self.weight)

    def check_horizontal(self, tol: float = ALGEBRAIC_TOL) -> None:
        """Verify N_j . F0^p <= F0^{p-1} on every pair of provided flag levels."""
        for p in sorted(self.f0.levels, reverse=True):
            if p - 1 > 0 and (p - 1) not in self.f0.levels:
                continue  # the target level was not supplied; nothing to check
            target = self.f0.level(p - 1)
            for j, n in enumerate(self.gens):
                moved = n @ self.f0.level(p)
                resid = moved - target @ np.linalg.lstsq(target, moved, rcond=None)[0]
                if np.linalg.norm(resid) > tol * max(1.0, np.linalg.norm(moved)):
                    raise ValueError(
                        f"generator {j + 1} moves F^{p} outside F^{p - 1}"
                    )


def _top_gram(orbit: OrbitSpec, frame: np.ndarray) -> np.ndarray:
    return (1j) ** orbit.weight * (frame.T @ orbit.form @ frame.conj())


def log_det_lambda(orbit: OrbitSpec, t, w) -> float:
    """log det of the Hodge-metric Gram matrix of the transported F^n frame."""
    frame = orbit.group_element(t, w) @ orbit.f0.level(orbit.weight)
    gram = _top_gram(orbit, frame)
    herm = 0.5 * (gram + gram.conj().T)
    eigs = np.linalg.eigvalsh(herm)
    if eigs.min() <= 0:
        raise NotPolarized("top Hodge pairing is not positive definite")
    return float(np.sum(np.log(eigs)))


def augmented_weights(n: int) -> list[tuple[int, int]]:
    """Pairs (p, n_p) entering the augmented determinant, n_p = floor((n-p+1)/2)."""
    return [(p, floor((n - p + 1) / 2)) for p in range(0, floor((n - 1) / 2) + 1)]


def augmented_log_det(orbit: OrbitSpec, t, w) -> float:
    """Weighted sum of graded log-determinants; equals log_det_lambda for n <= 2.

    The graded piece F^p/F^{p+1} carries the quotient Hodge metric, whose
    determinant on the transported frames is the ratio of consecutive full
    Hodge-metric Gram determinants (the Hodge decomposition is orthogonal for
    the Weil-operator metric, so nested frames split off a Schur complement).
    """
    g = orbit.group_element(t, w)
    flag = orbit.f0.transform(g)
    pieces = hodge_decomposition(flag, orbit.form)
    n = orbit.weight
    stack = [b for b in pieces.values() if b.shape[1]]
    weights = np.concatenate(
        [
            np.full(b.shape[1], (1j) ** (p - q))
            for (p, q), b in pieces.items()
            if b.shape[1]
        ]
    )
    basis = np.hstack(stack)
    weil = basis @ np.diag(weights) @ np.linalg.inv(basis)

    def gram_log_det(frame: np.ndarray) -> float:
        if frame.shape[1] == 0:
            return 0.0
        gram = (weil @ frame).T @ orbit.form @ frame.conj()
        herm = 0.5 * (gram + gram.conj().T)
        eigs = np.linalg.eigvalsh(herm)
        if eigs.min() <= 0:
            raise NotPolarized("Hodge-metric Gram matrix not positive definite")
        return float(np.sum(np.log(eigs)))

    def level_frame(p: int) -> np.ndarray:
        if p > n:
            return np.zeros((orbit.form.shape[0], 0), dtype=complex)
        return flag.level(p)

    total = 0.0
    for p, n_p in augmented_weights(n):
        total += n_p * (
            gram_log_det(level_frame(n - p)) - gram_log_det(level_frame(n - p + 1))
        )
    return total


@dataclass(frozen=True)
class ExpansionFit:
    """Fitted leading growth h ~ A (log|t|^{-1})^m along a boundary ray."""

    power: int
    amplitude: float
    residual: float


def expansion_fit(
    orbit: OrbitSpec,
    ray,
    w,
    taus=tuple(10.0 ** -k for k in range(4, 13)),
    residual_threshold: float = FIT_TOL,
) -> ExpansionFit:
    """Select the integer growth order of log h against log log|t|^{-1}.

    ray maps tau in (0,1) to the t-tuple; the boundary-approach rate is read
    from the first coordinate.  Each candidate power m in 0..2n is fitted with
    an A + B/L correction and the smallest max-deviation wins.
    """
    ys, ls = [], []
    for tau in taus:
        t = ray(tau)
        ys.append(log_det_lambda(orbit, t, w))
        ls.append(-log(abs(t[0])))
    ys = np.array(ys)
    ls = np.array(ls)
    design = np.column_stack([np.ones_like(ls), 1.0 / ls])
    best: tuple[float, int, float] | None = None
    for m in range(0, 2 * orbit.weight + 1):
        target = ys - m * np.log(ls)
        coef, *_ = lstsq(design, target)
        resid = float(np.max(np.abs(target - design @ coef)))
        if best is None or resid < best[0]:
            best = (resid, m, float(np.exp(coef[0])))
    resid, m, amp = best
    if resid > residual_threshold:
        raise PoorFit(f"best growth fit has residual {resid:.3g}")
    return ExpansionFit(m, amp, resid)


def _second_derivative(f, x0: float, h: float) -> float:
    return (
        -f(x0 + 2 * h) + 16 * f(x0 + h) - 30 * f(x0) + 16 * f(x0 - h) - f(x0 - 2 * h)
    ) / (12 * h * h)


def mixed_second_derivative(f, w0: complex, step: float = 5e-2) -> float:
    """d/dw d/dwbar of a real-valued f via (1/4)(d^2/dx^2 + d^2/dy^2).

    Five-point stencils per real axis, Richardson-extrapolated over two step
    sizes.
    """
    w0 = complex(w0)

    def laplacian(h: float) -> float:
        fx = _second_derivative(lambda x: f(complex(x, w0.imag)), w0.real, h)
        fy = _second_derivative(lambda y: f(complex(w0.real, y)), w0.imag, h)
        return fx + fy

    coarse = laplacian(step)
    fine = laplacian(step / 2)
    return 0.25 * (16 * fine - coarse) / 15


class _NestedFrame:
    """Holomorphically-varying graded frames of the limit flag along W(N_I).

    Pivot patterns are frozen at a base point so that nearby evaluations give
    holomorphic bases; the induced basis-change factors are then pluriharmonic
    and drop out of mixed second derivatives of the block log-determinants.
    """

    def __init__(self, orbit: OrbitSpec, index, w_base: complex, svd_tol: float = SVD_TOL):
        index = index_set(index)
        n_i = orbit.cone.n_of(index)
        filtration = weight_filtration(n_i, orbit.cone.weight)
        self.orbit = orbit
        self.n_float = _np_matrix(n_i)
        self.filtration = filtration
        self.svd_tol = svd_tol
        # Exact complements of each step, as float constraint matrices.
        self.constraints = {}
        for level in filtration.levels():
            comp = filtration.step(level).orthogonal_complement()
            self.constraints[level] = _np_matrix(comp.basis)
        self._freeze(w_base)

    def _coefficient_kernel(self, level: int, frame: np.ndarray, pivots=None):
        c = self.constraints[level]
        m = c @ frame if c.shape[0] else np.zeros((0, frame.shape[1]))
        if m.shape[0] == 0:
            return np.eye(frame.shape[1], dtype=complex), ()
        if pivots is None:
            _, r, perm = qr(m, pivoting=True)
            diag = np.abs(np.diag(r)) if min(m.shape) else np.array([])
            nrank = int(np.sum(diag > self.svd_tol * max(1.0, diag[0] if diag.size else 0)))
            pivots = tuple(int(p) for p in perm[:nrank])
        free = [j for j in range(m.shape[1]) if j not in pivots]
        cols = []
        a = m[:, list(pivots)]
        for j in free:
            sol = np.linalg.lstsq(a, -m[:, j], rcond=None)[0] if pivots else np.zeros(0)
            col = np.zeros(m.shape[1], dtype=complex)
            col[j] = 1.0
            for pi, s in zip(pivots, sol):
                col[pi] = s
            cols.append(col)
        basis = np.column_stack(cols) if cols else np.zeros((m.shape[1], 0), dtype=complex)
        return basis, pivots

    def _freeze(self, w_base: complex) -> None:
        frame = self.orbit.limit_frame(w_base)
        self.pivot_table = {}
        self.column_choice = {}
        prev = np.zeros((frame.shape[1], 0), dtype=complex)
        for level in self.filtration.levels():
            basis, pivots = self._coefficient_kernel(level, frame)
            self.pivot_table[level] = pivots
            chosen = []
            acc = prev
            for j in range(basis.shape[1]):
                cand = np.column_stack([acc, basis[:, j]])
                svals = np.linalg.svd(cand, compute_uv=False)
                if cand.shape[1] <= cand.shape[0] and svals[-1] > self.svd_tol:
                    chosen.append(j)
                    acc = cand
            self.column_choice[level] = tuple(chosen)
            prev = acc

    def log_det(self, w: complex) -> float:
        """Sum over levels of log|det Q(N^q u_i, conj u_j)| on the level frames."""
        frame = self.orbit.limit_frame(w)
        n = self.orbit.cone.weight
        total = 0.0
        for level in self.filtration.levels():
            chosen = self.column_choice[level]
            if not chosen:
                continue
            basis, _ = self._coefficient_kernel(level, frame, self.pivot_table[level])
            reps = frame @ basis[:, list(chosen)]
            q_pow = level - n
            if q_pow < 0:
                raise NotPolarized(
                    "top Hodge piece meets a weight level below the center"
                )
            mat = np.linalg.matrix_power(self.n_float.astype(complex), q_pow) if q_pow else None
            paired = (mat @ reps) if mat is not None else reps
            block = paired.T @ self.orbit.form @ reps.conj()
            det = np.linalg.det(block)
            if abs(det) <= 0.0:
                raise NotPolarized(f"degenerate graded pairing at level {level}")
            total += float(np.log(abs(det)))
        return total


@dataclass(frozen=True)
class CurvatureReport:
    """Interior curvature values against the graded boundary value."""

    points: tuple[tuple[float, ...], ...]  # |t| per step
    interior: tuple[float, ...]
    boundary: float
    errors: tuple[float, ...]
    decreasing: bool
    final_error: float


def curvature_limit_check(
    orbit: OrbitSpec, index, w0: complex, t_sequence, step: float = 5e-2
) -> CurvatureReport:
    """Compare d_w d_wbar log h along t -> 0 with the boundary graded value."""
    nested = _NestedFrame(orbit, index, w0)
    boundary = mixed_second_derivative(nested.log_det, w0, step)
    interior = []
    for t in t_sequence:
        interior.append(
            mixed_second_derivative(lambda w: log_det_lambda(orbit, t, w), w0, step)
        )
    errors = [abs(v - boundary) for v in interior]
    decreasing = all(b < a + 1e-12 for a, b in zip(errors, errors[1:]))
    return CurvatureReport(
        tuple(tuple(abs(ti) for ti in t) for t in t_sequence),
        tuple(interior),
        boundary,
        tuple(errors),
        decreasing,
        errors[-1],
    )


def residue_integral(
    coefficients: dict[tuple[int, int], complex],
    t: complex,
    nodes_per_unit: int = 24,
    n_theta: int = 64,
) -> float:
    """Positive area integral of the residue 1-form pairing on the local curve
    xy = t inside the unit bidisc.

    Parametrizing x = exp(s + i theta), the integrand |g(x, t/x)|^2 is smooth
    and the integral is over s in [log|t|, 0], theta in [0, 2pi); the g = 1
    value is exactly 2 pi log(1/|t|).
    """
    t = complex(t)
    if not 0 < abs(t) < 1:
        raise ValueError("t must satisfy 0 < |t| < 1")
    s_lo = log(abs(t))
    deg = max((max(i, j) for i, j in coefficients), default=0)
    n_theta = max(n_theta, 4 * deg + 8)
    thetas = np.linspace(0.0, 2 * pi, n_theta, endpoint=False)
    npanels = max(1, int(np.ceil(-s_lo)))
    glx, glw = np.polynomial.legendre.leggauss(nodes_per_unit)
    edges = np.linspace(s_lo, 0.0, npanels + 1)
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        s_nodes = mid + half * glx
        s_weights = half * glw
        x = np.exp(s_nodes[:, None] + 1j * thetas[None, :])
        y = t / x
        g = np.zeros_like(x)
        for (i, j), c in coefficients.items():
            g = g + c * x**i * y**j
        vals = (np.abs(g) ** 2).sum(axis=1) * (2 * pi / n_theta)
        total += float(np.sum(vals * s_weights))
    return total
