"""Three-parameter persistence modules of fibered PL families.

A family f(t, x) = (t, f_t(x)) yields, for each degree j, a module over the
grid of triples (a, b, c): the homology of the part of the prism complex
lying over times in [a, b] with vertex values at most c.  The partial order
has (a, b, c) below (a', b', c') when [a, b] is contained in [a', b'] and
c <= c', so structure maps widen the time window and raise the level.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .homology import FieldSpec, betti, induced_rank
from .rational import format_rational, parse_rational
from .simplicial import PrismComplex, slab_sublevel

Point = Tuple[int, int, int]  # (a_index, b_index, c_index), a_index <= b_index


class ModuleError(ValueError):
    pass


class ThinRefusal(Exception):
    """The module is not presented as a direct sum of thin summands.

    Distinct from ModuleError: the input is a perfectly good module, it just
    does not admit (or we cannot certify) a thin decomposition.  Carries a
    witness grid point or pair.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _leq(x: Point, y: Point) -> bool:
    return y[0] <= x[0] and x[1] <= y[1] and x[2] <= y[2]


def _join(x: Point, y: Point) -> Point:
    return (min(x[0], y[0]), max(x[1], y[1]), max(x[2], y[2]))


@dataclass
class IntervalSummand:
    """A thin summand: pointwise dimension one over its support."""

    support: frozenset  # of Point

    def min_points(self) -> List[Point]:
        return sorted(p for p in self.support
                      if not any(q != p and _leq(q, p) for q in self.support))


@dataclass
class Module3:
    degree: int
    fieldspec: FieldSpec
    time_values: List[Fraction]
    level_values: List[Fraction]
    dims: Dict[Point, int]
    edge_ranks: Dict[Tuple[Point, Point], int]
    prism: Optional[PrismComplex] = None

    # ----- queries -------------------------------------------------------

    def points(self):
        nt, nl = len(self.time_values), len(self.level_values)
        for i in range(nt):
            for j in range(i, nt):
                for k in range(nl):
                    yield (i, j, k)

    def dim(self, point: Point) -> int:
        return self.dims.get(point, 0)

    def neighbors_up(self, point: Point):
        """Grid points one step up in the order (wider window or higher level)."""
        i, j, k = point
        if i > 0:
            yield (i - 1, j, k)
        if j < len(self.time_values) - 1:
            yield (i, j + 1, k)
        if k < len(self.level_values) - 1:
            yield (i, j, k + 1)

    def neighbors_down(self, point: Point):
        i, j, k = point
        if i < j:
            yield (i + 1, j, k)
            yield (i, j - 1, k)
        if k > 0:
            yield (i, j, k - 1)

    def edge_rank(self, x: Point, y: Point) -> int:
        return self.edge_ranks.get((x, y), 0)

    def rank(self, x: Point, y: Point) -> int:
        """Rank of the structure map x -> y, computed on the complexes.

        Composing edge ranks only bounds this from above, so long maps go
        back to the prism when one is attached.
        """
        if not _leq(x, y):
            raise ModuleError(f"{x} is not below {y}")
        if x == y:
            return self.dim(x)
        if (x, y) in self.edge_ranks:
            return self.edge_ranks[(x, y)]
        if self.prism is None:
            raise ModuleError("long-range rank needs the source complex")
        sub = slab_sublevel(self.prism, x[0], x[1], self.level_values[x[2]])
        sup = slab_sublevel(self.prism, y[0], y[1], self.level_values[y[2]])
        return induced_rank(sub.simplices, sup.simplices,
                            self.degree, self.fieldspec)

    def support(self):
        return {p for p, d in self.dims.items() if d > 0}

    # ----- serialization --------------------------------------------------

    def to_json_dict(self):
        nt, nl = len(self.time_values), len(self.level_values)
        dims = [[[self.dim((i, j, k)) for k in range(nl)]
                 if i <= j else None
                 for j in range(nt)] for i in range(nt)]
        edges = sorted(
            ([list(x), list(y), r] for (x, y), r in self.edge_ranks.items()
             if r > 0),
            key=lambda e: (e[0], e[1]))
        return {
            "degree": self.degree,
            "field": self.fieldspec.characteristic,
            "time_values": [format_rational(t) for t in self.time_values],
            "level_values": [format_rational(c) for c in self.level_values],
            "dims": dims,
            "edge_ranks": edges,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "c", "dim"])
        for i, j, k in self.points():
            w.writerow([format_rational(self.time_values[i]),
                        format_rational(self.time_values[j]),
                        format_rational(self.level_values[k]),
                        self.dim((i, j, k))])
        return buf.getvalue()

    @classmethod
    def from_json_dict(cls, data) -> "Module3":
        times = [parse_rational(t) for t in data["time_values"]]
        levels = [parse_rational(c) for c in data["level_values"]]
        dims = {}
        for i, row in enumerate(data["dims"]):
            for j, col in enumerate(row):
                if col is None:
                    continue
                for k, d in enumerate(col):
                    if d:
                        dims[(i, j, k)] = int(d)
        edges = {(tuple(x), tuple(y)): int(r)
                 for x, y, r in data.get("edge_ranks", [])}
        return cls(degree=int(data["degree"]),
                   fieldspec=FieldSpec(int(data["field"])),
                   time_values=times, level_values=levels,
                   dims=dims, edge_ranks=edges)


def build_module(p: PrismComplex, degree: int,
                 fieldspec: FieldSpec = FieldSpec(),
                 level_values: Optional[List[Fraction]] = None) -> Module3:
    """Compute dims and adjacent-edge ranks over the full grid.

    The level grid defaults to the distinct vertex values, midpoints between
    consecutive ones, and one value above the maximum, which captures every
    combinatorial change of the sublevel complexes.
    """
    if degree < 0:
        raise ModuleError("degree must be nonnegative")
    times = list(p.time_breakpoints)
    levels = list(level_values) if level_values is not None else p.level_values()
    nt, nl = len(times), len(levels)
    slabs = {}
    for i in range(nt):
        for j in range(i, nt):
            for k in range(nl):
                slabs[(i, j, k)] = slab_sublevel(p, i, j, levels[k]).simplices
    dims = {}
    for pt, sx in slabs.items():
        d = betti(sx, degree, fieldspec)
        if d:
            dims[pt] = d
    mod = Module3(degree=degree, fieldspec=fieldspec, time_values=times,
                  level_values=levels, dims=dims, edge_ranks={}, prism=p)
    for pt in list(slabs):
        if pt not in dims:
            continue
        for up in mod.neighbors_up(pt):
            if up not in dims:
                continue
            r = induced_rank(slabs[pt], slabs[up], degree, fieldspec)
            if r:
                mod.edge_ranks[(pt, up)] = r
    return mod


@dataclass
class BettiReport:
    modules: Dict[int, Module3]

    def to_json_dict(self):
        return {str(j): m.to_json_dict() for j, m in sorted(self.modules.items())}


def betti_report(p: PrismComplex, max_degree: int,
                 fieldspec: FieldSpec = FieldSpec()) -> BettiReport:
    return BettiReport({j: build_module(p, j, fieldspec)
                        for j in range(max_degree + 1)})


@dataclass
class Subdiagram:
    """Restriction of a module to a chosen list of grid points."""

    module: Module3
    points: List[Point]
    dims: List[int]
    ranks: Dict[Tuple[int, int], int]  # positions in the point list

    def rank(self, src: int, dst: int) -> int:
        if (src, dst) not in self.ranks:
            raise ModuleError(
                f"points {self.points[src]} and {self.points[dst]} are "
                "incomparable; no structure map between them")
        return self.ranks[(src, dst)]


def finite_subdiagram(mod: Module3, points: List[Point]) -> Subdiagram:
    """Dims at the chosen points plus composite ranks of every comparable
    ordered pair, each computed directly on the slab inclusion."""
    nt, nl = len(mod.time_values), len(mod.level_values)
    for p in points:
        i, j, k = p
        if not (0 <= i <= j < nt and 0 <= k < nl):
            raise ModuleError(f"grid point {p} out of range")
    dims = [mod.dim(p) for p in points]
    ranks = {}
    for s, x in enumerate(points):
        for t, y in enumerate(points):
            if _leq(x, y):
                ranks[(s, t)] = mod.rank(x, y)
    return Subdiagram(module=mod, points=list(points), dims=dims, ranks=ranks)


# ----- thin decomposition --------------------------------------------------


def _zigzag_components(support, adjacency):
    """Connected components of the support under rank-carrying edges."""
    seen = set()
    comps = []
    for start in sorted(support):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adjacency(x):
                if y in support and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(IntervalSummand(frozenset(comp)))
    return comps


def _check_components_split(mod: Module3, comps: List[IntervalSummand]):
    """Conservative soundness checks on the rank-one adjacency components.

    Inside a component every adjacent in-support edge must carry rank one,
    and comparable points of distinct components must have composite rank
    zero (checked on one witness pair per ordered component pair when the
    source complex is available)."""
    for comp in comps:
        for x in comp.support:
            for y in mod.neighbors_up(x):
                if y in comp.support and mod.edge_rank(x, y) == 0:
                    raise ThinRefusal(
                        f"support is connected through {x} -> {y} but the "
                        "edge carries rank 0; not a sum of thin summands",
                        witness=(x, y))
    if len(comps) < 2 or mod.prism is None:
        return
    for ca in comps:
        for cb in comps:
            if ca is cb:
                continue
            pair = None
            for x in sorted(ca.support):
                for y in sorted(cb.support):
                    if _leq(x, y):
                        pair = (x, y)
                        break
                if pair:
                    break
            if pair is not None and mod.rank(*pair) >= 1:
                raise ThinRefusal(
                    "components are not independent: nonzero map "
                    f"{pair[0]} -> {pair[1]} across components",
                    witness=pair)


def _top_point(mod: Module3) -> Point:
    return (0, len(mod.time_values) - 1, len(mod.level_values) - 1)


def _joint_rank(mod: Module3, x: Point, xp: Point, y: Point) -> int:
    """Dimension of the span of the two images in H(y) in degree zero.

    The union of the two slab complexes includes into the slab at y, and in
    degree zero the image of the union is exactly the sum of the images.
    """
    if mod.prism is None:
        raise ModuleError("joint rank needs the source complex")
    sx = slab_sublevel(mod.prism, x[0], x[1], mod.level_values[x[2]]).simplices
    sxp = slab_sublevel(mod.prism, xp[0], xp[1], mod.level_values[xp[2]]).simplices
    sy = slab_sublevel(mod.prism, y[0], y[1], mod.level_values[y[2]]).simplices
    return induced_rank(sx | sxp, sy, mod.degree, mod.fieldspec)


def thin_decompose(mod: Module3) -> List[IntervalSummand]:
    """Split the module into thin (pointwise dimension one) summands.

    With all dims at most one this is the zigzag component decomposition of
    the support along rank-one edges.  With dims up to two the layer that
    survives to the widest window at the highest level is peeled off first,
    provided the peel is consistent: any two minimal points of the peel must
    have images spanning at most one dimension at their join.  Otherwise, or
    with a dim above two, the module is refused with a witness.
    """
    support = mod.support()
    if not support:
        return []
    max_dim = max(mod.dims.values())
    if max_dim == 1:
        comps = _zigzag_components(
            support,
            lambda x: [y for y in list(mod.neighbors_up(x))
                       if mod.edge_rank(x, y) >= 1]
                      + [y for y in list(mod.neighbors_down(x))
                         if mod.edge_rank(y, x) >= 1])
        _check_components_split(mod, comps)
        return comps
    if max_dim > 2:
        worst = max(support, key=lambda p: mod.dims[p])
        raise ThinRefusal(
            f"no thin decomposition: dimension {mod.dims[worst]} at grid "
            f"point {worst}", witness=worst)

    top = _top_point(mod)
    if mod.dim(top) != 1:
        raise ThinRefusal(
            "no thin decomposition along the top layer: dimension at the "
            f"widest window, highest level is {mod.dim(top)}, not 1",
            witness=top)
    peel = {x for x in support if mod.rank(x, top) >= 1}
    minimal = [x for x in sorted(peel)
               if not any(y in peel and y != x and _leq(y, x)
                          for y in mod.neighbors_down(x))]
    for idx, x in enumerate(minimal):
        for xp in minimal[idx + 1:]:
            y = _join(x, xp)
            if _joint_rank(mod, x, xp, y) > 1:
                raise ThinRefusal(
                    "no thin decomposition: the classes at grid points "
                    f"{x} and {xp} stay independent at {y}",
                    witness=(x, xp, y))
    residual_dims = {x: mod.dims.get(x, 0) - (1 if x in peel else 0)
                     for x in support}
    residual = {x for x, d in residual_dims.items() if d >= 1}
    if any(d > 1 for d in residual_dims.values()):
        worst = max(residual, key=lambda p: residual_dims[p])
        raise ThinRefusal(
            f"no thin decomposition after the peel: dimension "
            f"{residual_dims[worst]} left at {worst}", witness=worst)

    def res_edge(x, y):
        r = mod.edge_rank(x, y)
        return r - (1 if x in peel and y in peel else 0)

    rest = _zigzag_components(
        residual,
        lambda x: [y for y in list(mod.neighbors_up(x)) if res_edge(x, y) >= 1]
                  + [y for y in list(mod.neighbors_down(x))
                     if res_edge(y, x) >= 1])
    return [IntervalSummand(frozenset(peel))] + rest


def check_indecomposable_sufficient(mod: Module3) -> bool:
    """Sufficient indecomposability test for modules with a one-dimensional
    top corner: every minimal support point must send a nonzero class all
    the way to the widest window at the highest level.  Returns False when
    the criterion does not apply or some minimal point dies on the way."""
    support = mod.support()
    if not support:
        return False
    top = _top_point(mod)
    if mod.dim(top) != 1:
        return False
    minimal = [x for x in support
               if all(mod.dim(y) == 0 for y in mod.neighbors_down(x))]
    return all(mod.rank(x, top) >= 1 for x in minimal)
