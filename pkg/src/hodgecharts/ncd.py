"""Graded dimension bookkeeping for one-parameter normal-crossing surface
degenerations, plus the dual-graph computation for nodal curves.

The cohomology of each surface piece is modeled as the span of its
double-curve classes (assumed independent, so h^2 must be at least the number
of curves on the piece) plus an orthogonal remainder that all combinatorial
maps kill.  Restriction maps carry Cech alternating signs in the component
order; Gysin maps are the transposes of the dual restriction maps.  With this
convention the middle-weight square is a complex exactly when the triple point
formula D^2|_{X_i} + D^2|_{X_j} + #(triple points on D_ij) = 0 holds for every
double curve, and the two outer complexes are mutually transposed, so the
outer graded dimensions match in dual pairs by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Disconnected, IncidenceError, NotAComplex
from .linalg import Q, RationalMatrix, image, kernel, rank, solve


@dataclass(frozen=True)
class SurfacePiece:
    name: str
    h: tuple[int, int, int, int, int]  # h^0 .. h^4


@dataclass(frozen=True)
class DoubleCurve:
    ends: tuple[str, str]
    genus: int
    self_intersections: tuple[int, int]  # in ends[0] and ends[1]


@dataclass(frozen=True)
class TriplePoint:
    ends: tuple[str, str, str]


class NCDSurface:
    """A combinatorial normal-crossing surface X = union of smooth pieces."""

    def __init__(
        self,
        components,
        curves,
        triples=(),
        odd_gysin: RationalMatrix | None = None,
        odd_restriction: RationalMatrix | None = None,
    ):
        components = tuple(components)
        names = [c.name for c in components]
        if len(set(names)) != len(names):
            raise IncidenceError("component names must be unique")
        order = {n: i for i, n in enumerate(names)}

        def normalize_pair(pair):
            a, b = pair
            if a not in order or b not in order:
                raise IncidenceError(f"unknown component in {pair}")
            if a == b:
                raise IncidenceError(f"double curve {pair} must join two pieces")
            return (a, b) if order[a] < order[b] else (b, a)

        norm_curves = []
        for c in curves:
            ends = normalize_pair(c.ends)
            flip = ends != tuple(c.ends)
            si = c.self_intersections[::-1] if flip else c.self_intersections
            norm_curves.append(DoubleCurve(ends, c.genus, tuple(si)))
        pair_index = {}
        for idx, c in enumerate(norm_curves):
            if c.ends in pair_index:
                raise IncidenceError(f"duplicate double curve {c.ends}")
            pair_index[c.ends] = idx

        norm_triples = []
        for t in triples:
            ends = tuple(sorted(set(t.ends), key=order.get))
            if len(ends) != 3:
                raise IncidenceError(f"triple point {t.ends} needs three distinct pieces")
            for pair in ((ends[0], ends[1]), (ends[0], ends[2]), (ends[1], ends[2])):
                if pair not in pair_index:
                    raise IncidenceError(f"triple point {ends} misses double curve {pair}")
            norm_triples.append(TriplePoint(ends))

        for comp in components:
            if any(x < 0 for x in comp.h):
                raise IncidenceError(f"negative cohomology dimension on {comp.name}")
            ncurves = sum(1 for c in norm_curves if comp.name in c.ends)
            if comp.h[2] < ncurves:
                raise IncidenceError(
                    f"h^2({comp.name}) = {comp.h[2]} cannot carry {ncurves} curve classes"
                )

        self.components = components
        self.curves = tuple(norm_curves)
        self.triples = tuple(norm_triples)
        self.order = order
        self.pair_index = pair_index
        self.odd_gysin = odd_gysin
        self.odd_restriction = odd_restriction

    def triple_count(self, curve: DoubleCurve) -> int:
        a, b = curve.ends
        return sum(1 for t in self.triples if a in t.ends and b in t.ends)


def triple_point_check(surface: NCDSurface) -> dict[tuple[str, str], bool]:
    """Per-curve integer identity D^2|_i + D^2|_j + #triple points = 0."""
    return {
        c.ends: sum(c.self_intersections) + surface.triple_count(c) == 0
        for c in surface.curves
    }


def _cech_sign(position: int) -> int:
    return -1 if position % 2 else 1


@dataclass
class WeightComplexes:
    """All matrices of the weight spectral complexes, with basis bookkeeping."""

    surface: NCDSurface
    # even-weight outer pair (mutually transposed)
    r1: RationalMatrix  # H0(X^[1]) -> H0(X^[2])
    r2: RationalMatrix  # H0(X^[2]) -> H0(X^[3])
    g1: RationalMatrix  # H0(X^[3])(-2) -> H2(X^[2])(-1), = r2^T
    g2: RationalMatrix  # H2(X^[2])(-1) -> H4(X^[1]), = r1^T
    # middle-weight square
    g_mid: RationalMatrix  # H0(X^[2])(-1) -> H2(X^[1])
    r_mid: RationalMatrix  # H2(X^[1]) -> H2(X^[2])
    # odd-weight pair
    g_odd: RationalMatrix  # H1(X^[2])(-1) -> H3(X^[1])
    r_odd: RationalMatrix  # H1(X^[1]) -> H1(X^[2])
    h2_layout: dict = field(default_factory=dict)  # component -> (offset, curves, pad)


def build_weight_complexes(surface: NCDSurface) -> WeightComplexes:
    comps = surface.components
    curves = surface.curves
    triples = surface.triples
    n1, n2, n3 = len(comps), len(curves), len(triples)
    order = surface.order

    r1_rows = []
    for c in curves:
        row = [Q(0)] * n1
        row[order[c.ends[0]]] = Q(1)
        row[order[c.ends[1]]] = Q(-1)
        r1_rows.append(row)
    r1 = RationalMatrix.from_rows(r1_rows, cols=n1)

    r2_rows = []
    for t in triples:
        row = [Q(0)] * n2
        pairs = ((t.ends[0], t.ends[1]), (t.ends[0], t.ends[2]), (t.ends[1], t.ends[2]))
        for pos, pair in enumerate(pairs):
            row[surface.pair_index[pair]] = Q(_cech_sign(pos))
        r2_rows.append(row)
    r2 = RationalMatrix.from_rows(r2_rows, cols=n2)

    # H2(X^[1]) basis: per component, its curve classes then remainder padding.
    h2_layout: dict[str, tuple[int, tuple[int, ...], int]] = {}
    offset = 0
    for comp in comps:
        on_comp = tuple(i for i, c in enumerate(curves) if comp.name in c.ends)
        pad = comp.h[2] - len(on_comp)
        h2_layout[comp.name] = (offset, on_comp, pad)
        offset += comp.h[2]
    h2_dim = offset

    g_mid_rows = [[Q(0)] * n2 for _ in range(h2_dim)]
    for ci, c in enumerate(curves):
        for end, sign in zip(c.ends, (1, -1)):
            off, on_comp, _ = h2_layout[end]
            g_mid_rows[off + on_comp.index(ci)][ci] = Q(sign)
    g_mid = RationalMatrix.from_rows(g_mid_rows, cols=n2)

    def curve_product(comp_name: str, ci: int, cj: int) -> int:
        if ci == cj:
            c = curves[ci]
            return c.self_intersections[c.ends.index(comp_name)]
        members = set(curves[ci].ends) | set(curves[cj].ends)
        return sum(1 for t in triples if members <= set(t.ends))

    r_mid_rows = [[Q(0)] * h2_dim for _ in range(n2)]
    for target_ci, c in enumerate(curves):
        for end, sign in zip(c.ends, (1, -1)):
            off, on_comp, _ = h2_layout[end]
            for slot, source_ci in enumerate(on_comp):
                r_mid_rows[target_ci][off + slot] = Q(
                    sign * curve_product(end, source_ci, target_ci)
                )
    r_mid = RationalMatrix.from_rows(r_mid_rows, cols=h2_dim)

    h1_x1 = sum(comp.h[1] for comp in comps)
    h1_x2 = sum(2 * c.genus for c in curves)
    h3_x1 = sum(comp.h[3] for comp in comps)
    g_odd = surface.odd_gysin
    if g_odd is None:
        g_odd = RationalMatrix.zeros(h3_x1, h1_x2)
    elif (g_odd.rows, g_odd.cols) != (h3_x1, h1_x2):
        raise IncidenceError("odd Gysin matrix has the wrong shape")
    r_odd = surface.odd_restriction
    if r_odd is None:
        r_odd = RationalMatrix.zeros(h1_x2, h1_x1)
    elif (r_odd.rows, r_odd.cols) != (h1_x2, h1_x1):
        raise IncidenceError("odd restriction matrix has the wrong shape")

    return WeightComplexes(
        surface, r1, r2, r2.transpose(), r1.transpose(), g_mid, r_mid, g_odd, r_odd,
        h2_layout,
    )


def friedman_check(w: WeightComplexes) -> bool:
    """Whether the middle-weight square composes to zero."""
    return (w.r_mid @ w.g_mid + w.g1 @ w.r2).is_zero()


def _require_complex(w: WeightComplexes) -> None:
    if not (w.r2 @ w.r1).is_zero():
        raise NotAComplex("restriction complex does not compose to zero")
    if not (w.g2 @ w.g1).is_zero():
        raise NotAComplex("Gysin complex does not compose to zero")
    if not friedman_check(w):
        raise NotAComplex("middle-weight square does not compose to zero")


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of the graded pieces, lowest weight first."""

    dims: tuple[int, int, int, int, int]

    def __getitem__(self, i: int) -> int:
        return self.dims[i]


def graded_dims(w: WeightComplexes) -> GradedDims:
    _require_complex(w)
    i4 = kernel(w.g1).dim
    i0 = w.r2.rows - rank(w.r2)
    first = w.g_mid.stack(w.r2)  # H0(X^[2]) -> H2(X^[1]) + H0(X^[3])
    second_rows = tuple(
        a + b for a, b in zip(w.r_mid.entries, _pad_rows(w.g1, w.r_mid.rows))
    )
    second = RationalMatrix(
        w.r_mid.rows, w.r_mid.cols + w.g1.cols, second_rows
    )
    i2 = kernel(second).dim - rank(first)
    i3 = kernel(w.g_odd).dim
    i1 = w.r_odd.rows - rank(w.r_odd)
    return GradedDims((i0, i1, i2, i3, i4))


def _pad_rows(m: RationalMatrix, nrows: int):
    if m.rows != nrows:
        raise NotAComplex("block shapes are inconsistent")
    return m.entries


@dataclass(frozen=True)
class MonodromyReport:
    even_iso: bool
    even_matrix: RationalMatrix  # ker G1 -> coker R2 in a complement basis
    odd_iso: bool
    odd_matrix: RationalMatrix


def _kernel_to_cokernel(g: RationalMatrix, r: RationalMatrix):
    """Induced map ker(g) -> target/im(r), with g acting on the space r maps to."""
    ker = kernel(g)
    im = image(r)
    n = g.cols
    # Complement basis of im(r): the non-pivot standard vectors.
    pivots = set(im.basis.rref()[1]) if im.dim else set()
    free = [j for j in range(n) if j not in pivots]
    stacked = im.basis.stack(
        RationalMatrix.from_rows(
            [[Q(int(j == f)) for j in range(n)] for f in free], cols=n
        )
    ).transpose()
    cols = []
    for v in ker.basis.entries:
        coeffs = solve(stacked, v)
        if coeffs is None:  # pragma: no cover - complement spans everything
            raise AssertionError("cokernel complement does not span")
        cols.append(coeffs[im.dim :])
    rows = tuple(zip(*cols)) if cols else tuple(() for _ in free)
    mat = RationalMatrix(len(free), ker.dim, tuple(tuple(r_) for r_ in rows))
    iso = ker.dim == len(free) and rank(mat) == ker.dim
    return iso, mat


def monodromy_graded_maps(w: WeightComplexes) -> MonodromyReport:
    """Check that the induced maps from top kernels to bottom cokernels are
    isomorphisms, in both the even and the odd chain."""
    _require_complex(w)
    even_iso, even_mat = _kernel_to_cokernel(w.g1, w.r2)
    odd_iso, odd_mat = _kernel_to_cokernel(w.g_odd, w.r_odd)
    return MonodromyReport(even_iso, even_mat, odd_iso, odd_mat)


def curve_lmhs(vertices, edges) -> tuple[int, int, int]:
    """Graded dimensions (Gr_0, Gr_1, Gr_2) for a nodal curve dual graph.

    vertices: iterable of (name, genus); edges: iterable of (name, name) pairs
    (multi-edges and loops allowed).  The graph must be connected.
    """
    vertices = list(vertices)
    names = [v[0] for v in vertices]
    if len(set(names)) != len(names):
        raise Disconnected("vertex names must be unique")
    parent = {n: n for n in names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if a not in parent or b not in parent:
            raise Disconnected(f"edge ({a}, {b}) uses an unknown vertex")
        parent[find(a)] = find(b)
    if len({find(n) for n in names}) != 1:
        raise Disconnected("dual graph is not connected")
    b1 = len(list(edges)) - len(names) + 1
    gr1 = 2 * sum(g for _, g in vertices)
    return (b1, gr1, b1)
