"""Monomial boundary charts of a nilpotent cone and their image relations.

Each support set K in the image of I -> K_I contributes the monomial map
t -> (t^c) over the positive integer basis of S_K^perp; the stacked exponent
rows form the assembled chart.  Multiplicative relations among the chart
coordinates are the integer kernel lattice of the transposed exponent matrix,
and distinct strata are separated by monomial vanishing patterns.  Chart
equality is always lattice equality: printed monomial lists are one basis
choice among many.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SampleInconsistent, SeparationFailure
from .cones import KIndexMap, RelationData, k_index_map, relation_data
from .filtrations import IndexSet, NilpotentCone, index_set
from .linalg import RationalMatrix, hnf_rows, integer_kernel, vec


def monomial_strings(rows, var: str = "t") -> tuple[str, ...]:
    out = []
    for row in rows:
        factors = [
            f"{var}{i + 1}" if e == 1 else f"{var}{i + 1}^{e}"
            for i, e in enumerate(row)
            if e
        ]
        out.append("*".join(factors) if factors else "1")
    return tuple(out)


@dataclass(frozen=True)
class MonomialMap:
    """t -> (t^c) over the exponent rows; rows vanish exactly on K."""

    support: IndexSet  # K
    exponents: tuple[tuple[int, ...], ...]
    ambient: int  # number of t-coordinates

    def monomial_strings(self, var: str = "t") -> tuple[str, ...]:
        return monomial_strings(self.exponents, var)


@dataclass(frozen=True)
class BinomialRelationSet:
    """HNF basis of the lattice of relations z^{u+} = z^{u-}."""

    vectors: tuple[tuple[int, ...], ...]

    def as_equations(self, var: str = "z") -> tuple[str, ...]:
        def side(indices_exps):
            factors = [
                f"{var}{i + 1}" if e == 1 else f"{var}{i + 1}^{e}"
                for i, e in indices_exps
            ]
            return "*".join(factors) if factors else "1"

        out = []
        for u in self.vectors:
            pos = [(i, e) for i, e in enumerate(u) if e > 0]
            neg = [(i, -e) for i, e in enumerate(u) if e < 0]
            out.append(f"{side(pos)} = {side(neg)}")
        return tuple(out)


@dataclass(frozen=True)
class MonomialAtlas:
    """The assembled chart: one monomial map per K in the image of I -> K_I."""

    k_map: KIndexMap
    charts: tuple[MonomialMap, ...]
    relation_table: dict[IndexSet, RelationData]

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row for chart in self.charts for row in chart.exponents)

    @property
    def size(self) -> int:
        return len(self.exponents)

    def relations(self) -> BinomialRelationSet:
        return binomial_relations(self.exponents)

    def certificate_chart(self) -> tuple[tuple[int, ...], ...]:
        """One canonical monomial per stratum: the integerized cowitness.

        Ordered by descending support size; for the three-generator example
        this reproduces the compact four-monomial chart whose single relation
        is z1*z2*z3 = z4^2.
        """
        from .cones import _primitive_integer

        rows = []
        for k in sorted(self.k_map.image, key=lambda t: (-len(t), t)):
            data = self.relation_table[k]
            if any(x != 0 for x in data.cowitness):
                rows.append(tuple(_primitive_integer(data.cowitness)))
        return tuple(rows)


def _int_rows(m: RationalMatrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m.entries)


def build_atlas(cone: NilpotentCone, jobs: int = 1) -> MonomialAtlas:
    """Assemble the per-K monomial maps from the relation-space pipeline."""
    km = k_index_map(cone, jobs=jobs)
    table: dict[IndexSet, RelationData] = {}
    charts = []
    for k in km.image:
        data = relation_data(cone, k)
        table[k] = data
        charts.append(MonomialMap(k, _int_rows(data.basis), cone.k))
    return MonomialAtlas(km, tuple(charts), table)


def binomial_relations(rows) -> BinomialRelationSet:
    """All multiplicative relations among the monomials t^{c_1}..t^{c_m}.

    A relation is an integer vector u with sum u_j c_j = 0; the set returned
    is the HNF basis of that kernel lattice.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return BinomialRelationSet(())
    ncols = len(rows)
    constraints = [[rows[j][i] for j in range(ncols)] for i in range(len(rows[0]))]
    ker = integer_kernel(constraints, ncols)
    return BinomialRelationSet(tuple(tuple(r) for r in hnf_rows(ker)))


@dataclass(frozen=True)
class SeparationReport:
    """Monomial witnesses showing distinct chart strata have disjoint images."""

    witnesses: dict[tuple[IndexSet, IndexSet], int]  # pair -> atlas row index
    separated: bool


def separation_check(atlas: MonomialAtlas) -> SeparationReport:
    """Find, for every pair K != K', a coordinate vanishing identically on one
    stratum and nowhere on the other.

    A monomial row c (with support K_c^c) vanishes identically on the stratum
    of J iff J is not contained in K_c, and is nowhere zero on it otherwise.
    A missing witness indicates duplicated strata and raises SeparationFailure.
    """
    rows = atlas.exponents
    supports = [chart.support for chart in atlas.charts for _ in chart.exponents]
    witnesses: dict[tuple[IndexSet, IndexSet], int] = {}
    ks = [chart.support for chart in atlas.charts]
    for a in range(len(ks)):
        for b in range(a + 1, len(ks)):
            k1, k2 = ks[a], ks[b]
            found = None
            for idx in range(len(rows)):
                kc = supports[idx]
                vanishes_on_1 = not set(k1) <= set(kc)
                vanishes_on_2 = not set(k2) <= set(kc)
                if vanishes_on_1 != vanishes_on_2:
                    found = idx
                    break
            if found is None:
                raise SeparationFailure(f"strata {k1} and {k2} are not separated")
            witnesses[(k1, k2)] = found
    return SeparationReport(witnesses, True)


def fiber_tangency(mmap: MonomialMap, a, t) -> bool:
    """Whether the log vector field with coefficients a is tangent to the
    monomial fibers through t.

    Requires t_j != 0 off the support stratum, where all chart monomials are
    nonvanishing; tangency is then the exact condition a . c = 0 per row.
    """
    a = vec(a)
    if len(a) != mmap.ambient:
        raise ValueError("coefficient vector has wrong length")
    for j in range(mmap.ambient):
        if (j + 1) not in mmap.support and abs(complex(t[j])) == 0.0:
            raise ValueError(f"t_{j + 1} must be nonzero off the stratum")
    return all(
        sum((ai * ci for ai, ci in zip(a, row)), Fraction(0)) == 0
        for row in mmap.exponents
    )


@dataclass(frozen=True)
class FiberSample:
    """One sampled point for the decoupled fiber condition.

    derivative is the sampled directional derivative of the residual-flag
    generator along the candidate vector (d x k complex arrays are accepted
    as nested lists or numpy arrays).
    """

    t: tuple[complex, ...]
    w: tuple[complex, ...]
    derivative: "np.ndarray"


@dataclass(frozen=True)
class DecoupledFiberReport:
    exact_tangent: bool  # a lies in the relation space S_I
    sample_tangent: tuple[bool, ...]  # per-sample derivative vanishing
    tangent: tuple[bool, ...]  # conjunction, per sample


def decoupled_fiber_check(
    cone: NilpotentCone,
    index,
    a,
    b,
    samples,
    tol: float = 1e-9,
) -> DecoupledFiberReport:
    """Check the split fiber condition at user-supplied samples.

    The candidate tangent vector has t-part a (exact rationals) and w-part b.
    It is tangent iff a lies in S_I (exact) and the sampled derivative of the
    residual generator vanishes (numeric, tol).  A sampled derivative with a
    nonzero component inside span{N_i} contradicts the split coordinates, in
    which that component vanishes identically, and raises SampleInconsistent.
    """
    from .cones import relation_space

    index = index_set(index)
    a = vec(a)
    exact_ok = relation_space(cone, index).contains_vector(a)
    gens = np.array(
        [[[float(x) for x in row] for row in n.entries] for n in cone.generators]
    )
    span = gens.reshape(cone.k, -1).T  # columns span {N_i} in flattened form
    pinv = np.linalg.pinv(span)
    numeric = []
    for sample in samples:
        deriv = np.asarray(sample.derivative, dtype=complex)
        flat = deriv.reshape(-1)
        inside = span @ (pinv @ flat)
        if np.linalg.norm(inside, ord=np.inf) > tol:
            raise SampleInconsistent(
                "sampled derivative has a component along the nilpotent span"
            )
        numeric.append(bool(np.linalg.norm(flat, ord=np.inf) <= tol))
    return DecoupledFiberReport(
        exact_ok, tuple(numeric), tuple(exact_ok and n for n in numeric)
    )
