"""Relation spaces of a nilpotent cone, their support splits, and positive
integer bases.

For an index set I the relation space S_I collects the coefficient vectors a
with sum a_i N_i in W_{-1}(ad N_I).  Each subspace S of Q^k determines a
unique support subset K carrying complementary nonnegative witnesses in S and
S^perp; the witnesses are produced by one exact Farkas alternative per
coordinate.  All feasibility questions are settled by an exact rational
simplex with Bland's rule, so there are no tolerance parameters anywhere in
this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ConeTooLarge, InvalidSplit
from .filtrations import IndexSet, NilpotentCone, adjoint_filtration, index_set
from .linalg import Q, RationalMatrix, Subspace, kernel, vec

MAX_GENERATORS = 12


def relation_space(cone: NilpotentCone, index) -> Subspace:
    """S_I = {a in Q^k : sum a_i N_i lies in W_{-1}(ad N_I)}.

    For I empty this is the space of linear relations among the generators.
    """
    index = index_set(index)
    if not index:
        flat_cols = [n.flatten() for n in cone.generators]
        rows = tuple(zip(*flat_cols))
        return kernel(RationalMatrix.from_rows(rows, cols=cone.k))
    adj = adjoint_filtration(cone, index)
    ctx = adj.context
    coord_cols = []
    for n in cone.generators:
        coords = ctx.to_coords(n)
        if coords is None:  # pragma: no cover - cone validation guarantees this
            raise AssertionError("generator outside the isometry algebra")
        coord_cols.append(coords)
    level = adj.filtration.step(-1)
    comp = level.orthogonal_complement()
    m = RationalMatrix.from_rows(tuple(zip(*coord_cols)), cols=cone.k)
    return kernel(comp.basis @ m) if comp.dim else Subspace.full(cone.k)


# ---------------------------------------------------------------------------
# Exact linear programming.


@dataclass(frozen=True)
class FarkasAlternative:
    """Either a nonnegative solution x of Ax = b, or a certificate y with
    A^T y >= 0 and y.b < 0.  Exactly one of the two is set."""

    solution: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None


def _phase_one(a_rows: list[list[Fraction]], b: list[Fraction], n: int):
    """Exact phase-one simplex for {x >= 0 : Ax = b}.

    Returns (value, x, y): value is the artificial optimum (0 iff feasible),
    x a feasible point when value = 0, and y the simplex multipliers of the
    sign-normalized system otherwise.  Bland's rule throughout, so the
    iteration terminates.
    """
    m = len(b)
    signs = [Q(1) if bi >= 0 else Q(-1) for bi in b]
    tab = [[signs[i] * x for x in a_rows[i]] + [Q(0)] * m + [signs[i] * b[i]] for i in range(m)]
    for i in range(m):
        tab[i][n + i] = Q(1)
    basis = [n + i for i in range(m)]
    # Reduced cost row for min(sum of artificials); artificial columns start at 0.
    obj = [-sum(tab[i][j] for i in range(m)) for j in range(n)] + [Q(0)] * m

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # pragma: no cover - phase one is bounded
            raise AssertionError("phase-one problem cannot be unbounded")
        row = best[1]
        piv = tab[row][enter]
        tab[row] = [x / piv for x in tab[row]]
        for i in range(m):
            if i != row and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
        f = obj[enter]
        if f:
            obj = [x - f * y for x, y in zip(obj, tab[row][:-1])]
        basis[row] = enter

    value = sum(tab[i][-1] for i in range(m) if basis[i] >= n)
    x = [Q(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    # Multipliers for the normalized system: y_i = 1 - reduced cost of the
    # i-th artificial column; undo the sign normalization afterwards.
    y = [signs[i] * (Q(1) - obj[n + i]) for i in range(m)]
    return value, tuple(x), tuple(y)


def farkas_alternative(a: RationalMatrix, b) -> FarkasAlternative:
    """Exact Farkas alternative for Ax = b, x >= 0."""
    b = list(vec(b))
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    value, x, y = _phase_one([list(r) for r in a.entries], b, a.cols)
    if value == 0:
        return FarkasAlternative(solution=x, certificate=None)
    return FarkasAlternative(solution=None, certificate=tuple(-yi for yi in y))


@dataclass(frozen=True)
class FarkasSplit:
    """The unique support subset K of Lemma-2.8 type for a subspace S."""

    support: IndexSet  # 1-based positions where the S-side witness is positive
    witness: tuple[Fraction, ...]  # v in S, nonnegative, support exactly K
    cowitness: tuple[Fraction, ...]  # v~ in S^perp, nonnegative, support K^c


def farkas_split(s: Subspace) -> FarkasSplit:
    k = s.ambient_dim
    mu = s.orthogonal_complement().basis
    ns = mu.rows
    b = [Q(0)] * ns + [Q(1)]
    support: list[int] = []
    v = [Q(0)] * k
    v_tilde = [Q(0)] * k
    for i in range(k):
        e_i = [Q(0)] * k
        e_i[i] = Q(1)
        a_i = RationalMatrix.from_rows(list(mu.entries) + [e_i], cols=k)
        res = farkas_alternative(a_i, b)
        if res.solution is not None:
            support.append(i + 1)
            v = [a + c for a, c in zip(v, res.solution)]
        else:
            y = res.certificate
            x_tilde = [Q(0)] * k
            for coef, row in zip(y[:ns], mu.entries):
                if coef:
                    x_tilde = [a + coef * c for a, c in zip(x_tilde, row)]
            v_tilde = [a + c for a, c in zip(v_tilde, x_tilde)]
    return FarkasSplit(tuple(support), tuple(v), tuple(v_tilde))


def _primitive_integer(v) -> list[int]:
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def positive_basis(s: Subspace, support) -> RationalMatrix:
    """Integer basis of S^perp that vanishes on K and is positive elsewhere.

    Rows are a Q-basis of S^perp drawn from the saturated lattice: the
    Hermite-normal-form lattice basis, shifted by the minimal nonnegative
    multiple of the strictly-positive certificate (the integerized cowitness),
    which replaces the first lattice row it depends on.
    """
    support = index_set(support)
    split = farkas_split(s)
    if support != split.support:
        raise InvalidSplit(f"support {support} does not match the split {split.support}")
    from .linalg import lattice_basis, solve

    perp = s.orthogonal_complement()
    k = s.ambient_dim
    off = [i for i in range(k) if (i + 1) not in support]
    for row in perp.basis.entries:
        if any(row[i - 1] != 0 for i in support):
            raise InvalidSplit("S^perp does not vanish on the support positions")
    h = lattice_basis(perp)
    if h.rows == 0:
        return RationalMatrix(0, k, ())
    cert = _primitive_integer(split.cowitness)
    gamma = solve(h.transpose(), cert)
    j0 = next(j for j, g in enumerate(gamma) if g != 0)
    rows = [cert]
    for j, hrow in enumerate(h.entries):
        if j == j0:
            continue
        need = max(
            (Fraction(1 - hrow[i], cert[i]) for i in off if hrow[i] < 1),
            default=Q(0),
        )
        shift = max(0, -(-need.numerator // need.denominator))  # ceil
        rows.append([int(x) + shift * c for x, c in zip(hrow, cert)])
    return RationalMatrix.from_rows(rows, cols=k)


@dataclass(frozen=True)
class RelationData:
    """Everything the chart construction needs for one index set."""

    index: IndexSet
    space: Subspace
    support: IndexSet  # K_I
    basis: RationalMatrix  # positive integer basis of S_I^perp
    witness: tuple[Fraction, ...]
    cowitness: tuple[Fraction, ...]


def relation_data(cone: NilpotentCone, index) -> RelationData:
    index = index_set(index)
    s = relation_space(cone, index)
    split = farkas_split(s)
    basis = positive_basis(s, split.support)
    return RelationData(index, s, split.support, basis, split.witness, split.cowitness)


@dataclass(frozen=True)
class KIndexMap:
    """The full table I -> K_I, its image, and the stratum partition."""

    table: dict[IndexSet, IndexSet]
    image: tuple[IndexSet, ...]
    strata: dict[IndexSet, tuple[IndexSet, ...]]


def k_index_map(
    cone: NilpotentCone, max_generators: int | None = None, jobs: int = 1
) -> KIndexMap:
    cap = MAX_GENERATORS if max_generators is None else max_generators
    if cone.k > cap:
        raise ConeTooLarge(f"{cone.k} generators exceed the enumeration cap {cap}")
    subsets = [
        tuple(i + 1 for i in range(cone.k) if mask >> i & 1)
        for mask in range(1 << cone.k)
    ]

    def split_of(index: IndexSet) -> IndexSet:
        return farkas_split(relation_space(cone, index)).support

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        cone.lie_algebra()  # prime the shared cache before fanning out
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            supports = list(pool.map(split_of, subsets))
    else:
        supports = [split_of(i) for i in subsets]
    table: dict[IndexSet, IndexSet] = dict(zip(subsets, supports))
    image = tuple(sorted(set(table.values()), key=lambda t: (len(t), t)))
    strata = {
        k: tuple(sorted((i for i in table if table[i] == k), key=lambda t: (len(t), t)))
        for k in image
    }
    return KIndexMap(table, image, strata)
