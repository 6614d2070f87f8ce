"""Siegel-domain escape probes for two-variable boundary-degenerate orbits on
the rank-two symplectic group.

The setup fixes two commuting standard triples in sp(4), the boundary normal
form (p_j, q_j, r_j) with r_j^2 = p_j q_j for the cone generators, and the
explicit solvable-parameter systems of the minimal and maximal parabolic
horospherical decompositions.  A family escapes every Siegel domain of a
parabolic when one of the monitored solvable parameters is unbounded in the
wrong direction along the family; this is decided by a log-log slope fit over
the sampled grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from .errors import NotInDomain, PZero
from .linalg import RationalMatrix

SLOPE_THRESHOLD = 0.5


def _unit(i: int, j: int) -> RationalMatrix:
    rows = [[int(r == i and c == j) for c in range(4)] for r in range(4)]
    return RationalMatrix.from_rows(rows)


@dataclass(frozen=True)
class Sp4Setup:
    """Two commuting standard triples and the antidiagonal symplectic form."""

    form: RationalMatrix
    n_hat: tuple[RationalMatrix, RationalMatrix]
    y: tuple[RationalMatrix, RationalMatrix]
    n_hat_plus: tuple[RationalMatrix, RationalMatrix]


def build_setup() -> Sp4Setup:
    """Construct the setup and verify all bracket identities exactly."""
    form = RationalMatrix.from_rows(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    )
    n1, n2 = _unit(0, 3).scale(-1), _unit(1, 2).scale(-1)
    y1 = _unit(3, 3) - _unit(0, 0)
    y2 = _unit(2, 2) - _unit(1, 1)
    # Raising elements carry a sign making [N^+, N] = Y close exactly.
    np1, np2 = _unit(3, 0).scale(-1), _unit(2, 1).scale(-1)

    def bracket(a, b):
        return a @ b - b @ a

    for n, y, npl in ((n1, y1, np1), (n2, y2, np2)):
        assert bracket(y, n) == n.scale(-2), "lowering bracket failed"
        assert bracket(y, npl) == npl.scale(2), "raising bracket failed"
        assert bracket(npl, n) == y, "triple bracket failed"
        assert (n.transpose() @ form + form @ n).is_zero(), "form not preserved"
    for a in (n1, y1, np1):
        for b in (n2, y2, np2):
            assert bracket(a, b).is_zero(), "triples do not commute"
    assert form.transpose() == form.scale(-1), "form must be alternating"
    return Sp4Setup(form, (n1, n2), (y1, y2), (np1, np2))


class ConeSpec:
    """Cone data (p_j, q_j, r_j), one triple per generator.

    Generators must lie in the closed positivity cone r_j^2 <= p_j q_j with
    p_j, q_j >= 0; equality is the boundary-nilpotent normal form, while
    interior directions (such as the one-variable cone p = q = (1), r = (0))
    have strict inequality.
    """

    def __init__(self, p, q, r, tol: float = 1e-12):
        p, q, r = tuple(map(float, p)), tuple(map(float, q)), tuple(map(float, r))
        if not len(p) == len(q) == len(r):
            raise ValueError("p, q, r must have equal lengths")
        for j, (pj, qj, rj) in enumerate(zip(p, q, r)):
            if pj < 0 or qj < 0:
                raise ValueError(f"p_{j + 1}, q_{j + 1} must be nonnegative")
            if rj * rj > pj * qj + tol:
                raise ValueError(f"r_{j + 1}^2 <= p_{j + 1} q_{j + 1} fails")
        self.p, self.q, self.r = p, q, r
        self.size = len(p)

    def boundary_generators(self) -> tuple[bool, ...]:
        """Which generators lie on the nilpotent-boundary orbit r^2 = pq."""
        return tuple(
            abs(rj * rj - pj * qj) <= 1e-12
            for pj, qj, rj in zip(self.p, self.q, self.r)
        )

    def normalized(self) -> bool:
        return (
            abs(sum(self.p) - 1) < 1e-9
            and abs(sum(self.q) - 1) < 1e-9
            and abs(sum(self.r)) < 1e-9
        )

    def sums(self, y) -> tuple[float, float, float]:
        y = tuple(map(float, y))
        if len(y) != self.size:
            raise ValueError("parameter vector has wrong length")
        return (
            sum(rj * yj for rj, yj in zip(self.r, y)),
            sum(pj * yj for pj, yj in zip(self.p, y)),
            sum(qj * yj for qj, yj in zip(self.q, y)),
        )


def orbit_point(cone: ConeSpec, y) -> np.ndarray:
    """The orbit's 2-plane at purely imaginary times, as 4 x 2 columns."""
    if any(float(v) <= 0 for v in y):
        raise ValueError("parameters must be positive")
    r, p, q = cone.sums(y)
    col1 = np.array([-1j * r, -1j * p, 1.0, 0.0])
    col2 = np.array([-1j * q, -1j * r, 0.0, 1.0])
    return np.column_stack([col1, col2])


@dataclass(frozen=True)
class SiegelSolution:
    """Solvable parameters placing the orbit point in a horospherical slice."""

    parabolic: str  # "minimal" | "maximal"
    a: float
    d: float | None = None
    beta: float | None = None
    b: np.ndarray | None = None  # 2x2, maximal parabolic only

    def point(self) -> np.ndarray:
        if self.parabolic == "minimal":
            e2d, e2a = np.exp(2 * self.d), np.exp(2 * self.a)
            col1 = np.array([-1j * self.beta * e2d, -1j * e2d, 1.0, 0.0])
            col2 = np.array(
                [-1j * (e2a + self.beta**2 * e2d), -1j * self.beta * e2d, 0.0, 1.0]
            )
            return np.column_stack([col1, col2])
        e2a = np.exp(2 * self.a)
        b1, b2 = self.b[0], self.b[1]
        col1 = np.array([-1j * e2a * (b1 @ b2), -1j * e2a * (b2 @ b2), 1.0, 0.0])
        col2 = np.array([-1j * e2a * (b1 @ b1), -1j * e2a * (b1 @ b2), 0.0, 1.0])
        return np.column_stack([col1, col2])


def solve_minimal(cone: ConeSpec, y) -> SiegelSolution:
    """Solve r = beta e^{2d}, p = e^{2d}, q = e^{2a} + beta^2 e^{2d}."""
    r, p, q = cone.sums(y)
    if p <= 0:
        raise PZero("p(y) must be positive for the minimal parabolic")
    e2d = p
    beta = r / p
    e2a = q - r * r / p
    if e2a <= 0:
        raise NotInDomain("q(y) p(y) - r(y)^2 must be positive")
    return SiegelSolution("minimal", a=0.5 * log(e2a), d=0.5 * log(e2d), beta=beta)


def solve_maximal(cone: ConeSpec, y) -> SiegelSolution:
    """Solve the Gram system q = e^{2a} B1.B1, r = e^{2a} B1.B2, p = e^{2a} B2.B2.

    B is normalized lower-triangular with positive diagonal and det B = 1
    (solutions are unique up to a left rotation).
    """
    r, p, q = cone.sums(y)
    disc = p * q - r * r
    if disc <= 0 or p <= 0:
        raise NotInDomain("p(y) q(y) - r(y)^2 must be positive")
    e2a = sqrt(disc)
    gram = np.array([[q, r], [r, p]]) / e2a  # rows/cols ordered (B1, B2)
    # Cholesky of the reversed Gram so that B is lower triangular in (B1, B2).
    l11 = sqrt(gram[0, 0])
    l21 = gram[1, 0] / l11
    l22 = sqrt(gram[1, 1] - l21 * l21)
    b = np.array([[l11, 0.0], [l21, l22]])
    return SiegelSolution("maximal", a=0.5 * log(e2a), b=b)


@dataclass(frozen=True)
class ProbeReport:
    verdict: str  # "escapes-every-Siegel-set" | "contained"
    parabolic: str
    monitored: dict[str, tuple[float, ...]]
    slopes: dict[str, float]
    grid: tuple[float, ...]


def _loglog_slope(ts, vals) -> float:
    xs = np.log(np.asarray(ts))
    ys = np.log(np.asarray(vals))
    return float(np.polyfit(xs, ys, 1)[0])


def boundedness_probe(
    cone: ConeSpec,
    family,
    parabolic: str,
    grid=tuple(10.0**k for k in range(1, 7)),
    slope_threshold: float = SLOPE_THRESHOLD,
) -> ProbeReport:
    """Decide whether the family escapes every Siegel domain of the parabolic.

    family maps the grid parameter T to the positive tuple y(T).  For the
    minimal parabolic the monitored quantities e^{2(a-d)} and e^{2d} must stay
    bounded below; for the maximal parabolic the row norms of B must stay
    bounded above.  A fitted log-log slope beyond the threshold in the bad
    direction gives the escape verdict.
    """
    if parabolic not in ("minimal", "maximal"):
        raise ValueError("parabolic must be 'minimal' or 'maximal'")
    monitored: dict[str, list[float]] = {}
    for t_val in grid:
        y = family(t_val)
        if parabolic == "minimal":
            sol = solve_minimal(cone, y)
            vals = {
                "exp_2(a-d)": np.exp(2 * (sol.a - sol.d)),
                "exp_2d": np.exp(2 * sol.d),
            }
        else:
            sol = solve_maximal(cone, y)
            # Fourth powers are the scale-invariant ratios q/p and p/q.
            vals = {
                "norm_B1_4": float(sol.b[0] @ sol.b[0]) ** 2,
                "norm_B2_4": float(sol.b[1] @ sol.b[1]) ** 2,
            }
        for k, v in vals.items():
            monitored.setdefault(k, []).append(float(v))
    slopes = {k: _loglog_slope(grid, v) for k, v in monitored.items()}
    if parabolic == "minimal":
        escapes = any(s < -slope_threshold for s in slopes.values())
    else:
        escapes = any(s > slope_threshold for s in slopes.values())
    return ProbeReport(
        "escapes-every-Siegel-set" if escapes else "contained",
        parabolic,
        {k: tuple(v) for k, v in monitored.items()},
        slopes,
        tuple(float(t) for t in grid),
    )
