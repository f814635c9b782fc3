"""Deterministic generators for the poset and lattice families used throughout."""

from __future__ import annotations

import string
from itertools import combinations
from typing import Callable, Iterable, Iterator, Literal, Sequence

from .exceptions import BadParams, UnknownFamily
from .poset import Poset, build_poset, ordinal_sum, proper_part

# -- set-like labels -----------------------------------------------------------


def set_label(items: Iterable) -> str:
    return "{" + ",".join(str(x) for x in items) + "}"


def _subset_order(ground: Sequence, subsets: list[tuple]) -> list[tuple]:
    pos = {v: i for i, v in enumerate(ground)}
    return sorted(subsets, key=lambda s: (len(s), [pos[v] for v in s]))


def _inclusion_poset(ground: Sequence, subsets: list[tuple], top_label: str | None = None) -> Poset:
    subsets = _subset_order(ground, [tuple(s) for s in subsets])
    sets = [frozenset(s) for s in subsets]
    labels = [set_label(s) for s in subsets]
    if top_label is None:
        return Poset.from_leq(labels, lambda i, j: sets[i] <= sets[j])
    n = len(sets)
    return Poset.from_leq(
        labels + [top_label], lambda i, j: j == n or (i != n and sets[i] <= sets[j])
    )


# -- families -------------------------------------------------------------------


def boolean(n: int) -> Poset:
    """Subsets of ``{1..n}`` ordered by inclusion."""
    ground = list(range(1, n + 1))
    subsets = [c for k in range(n + 1) for c in combinations(ground, k)]
    return _inclusion_poset(ground, subsets)


def chain(n: int) -> Poset:
    labels = [f"c{i}" for i in range(n)]
    return Poset(labels, [(i, i + 1) for i in range(n - 1)])


def _level_name(level: int) -> str:
    if level < 26:
        return string.ascii_lowercase[level]
    return f"L{level}_"


def antichain(k: int, prefix: str = "a") -> Poset:
    return Poset([f"{prefix}{j}" for j in range(1, k + 1)], [])


def stacked_antichains(n: int, k: int) -> Poset:
    """Ordinal sum of ``n`` copies of the ``k``-element antichain, levels ``a``, ``b``, ..."""
    P = Poset([], [])
    for level in range(n):
        P = ordinal_sum(P, antichain(k, _level_name(level)))
    return P


def face_lattice(
    facets: Sequence[Iterable[str]],
    kind: Literal["simplicial", "polytope"] = "simplicial",
    vertices: Sequence[str] | None = None,
) -> Poset:
    """Face lattice with bottom ``{}`` and a top element.

    ``kind="simplicial"`` takes every subset of a facet as a face and adds
    a fresh top ``1^``. ``kind="polytope"`` takes the facets of a polytope
    boundary: faces are intersections of facets, and the top is the whole
    vertex set.
    """
    facets = [tuple(f) for f in facets]
    if vertices is None:
        vertices = sorted({v for f in facets for v in f})
    pos = {v: i for i, v in enumerate(vertices)}
    canon = lambda s: tuple(sorted(s, key=pos.__getitem__))
    faces: set[tuple] = set()
    if kind == "simplicial":
        for f in facets:
            for k in range(len(f) + 1):
                faces.update(canon(c) for c in combinations(f, k))
        return _inclusion_poset(vertices, sorted(faces), top_label="1^")
    if kind == "polytope":
        frontier = {frozenset(f) for f in facets}
        closed = set(frontier)
        while frontier:
            new = set()
            for a in frontier:
                for b in closed:
                    c = a & b
                    if c not in closed:
                        new.add(c)
            closed |= new
            frontier = new
        closed.add(frozenset())
        closed.add(frozenset(vertices))
        return _inclusion_poset(vertices, [canon(s) for s in closed])
    raise BadParams(f"unknown face lattice kind {kind!r}")


def polygon(n: int) -> Poset:
    vs = [str(i) for i in range(1, n + 1)]
    return face_lattice([(vs[i], vs[(i + 1) % n]) for i in range(n)], "polytope", vs)


def tetrahedron() -> Poset:
    vs = ["1", "2", "3", "4"]
    return face_lattice(list(combinations(vs, 3)), "polytope", vs)


def octahedron() -> Poset:
    vs = ["x+", "x-", "y+", "y-", "z+", "z-"]
    facets = [(x, y, z) for x in ("x+", "x-") for y in ("y+", "y-") for z in ("z+", "z-")]
    return face_lattice(facets, "polytope", vs)


def cube() -> Poset:
    vs = [f"{a}{b}{c}" for a in "01" for b in "01" for c in "01"]
    facets = []
    for axis in range(3):
        for value in "01":
            facets.append(tuple(v for v in vs if v[axis] == value))
    return face_lattice(facets, "polytope", vs)


def partition(n: int) -> Poset:
    """Set partitions of ``{1..n}`` ordered by refinement (finest at the bottom)."""

    def partitions(items: list[int]) -> Iterator[list[list[int]]]:
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in partitions(rest):
            yield [[first]] + p
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1:]

    sep = "" if n <= 9 else ","
    parts = []
    for p in partitions(list(range(1, n + 1))):
        blocks = sorted(tuple(sorted(b)) for b in p)
        parts.append(tuple(blocks))
    parts.sort(key=lambda p: (-len(p), p))
    labels = ["|".join(sep.join(map(str, b)) for b in p) for p in parts]
    blocksets = [[frozenset(b) for b in p] for p in parts]

    def refines(i: int, j: int) -> bool:
        return all(any(b <= c for c in blocksets[j]) for b in blocksets[i])

    return Poset.from_leq(labels, refines)


def divisor(m: int) -> Poset:
    divs = [d for d in range(1, m + 1) if m % d == 0]
    return Poset.from_leq([str(d) for d in divs], lambda i, j: divs[j] % divs[i] == 0)


def uniform_matroid(r: int, n: int) -> Poset:
    """Lattice of flats of the uniform matroid U(r, n)."""
    ground = list(range(1, n + 1))
    flats = [c for k in range(r) for c in combinations(ground, k)]
    flats.append(tuple(ground))
    return _inclusion_poset(ground, flats)


def fig2_standin() -> Poset:
    """Rank-one poset whose Hasse graph is two 4-cycles glued at the minimal element ``b``.

    2-edge-connected but not 2-vertex-connected: ``b`` is a cut vertex.
    """
    return build_poset(
        ["t1", "t2", "t3", "t4", "b", "b1", "b2"],
        [
            ("b", "t1"), ("b1", "t1"), ("b1", "t2"), ("b", "t2"),
            ("b", "t3"), ("b2", "t3"), ("b2", "t4"), ("b", "t4"),
        ],
    )


FIG2_APEX = "b"


def remark36_Q() -> Poset:
    """The stand-in with a 2-antichain stacked on top."""
    return ordinal_sum(fig2_standin(), antichain(2))


def remark37b() -> Poset:
    """Two 2-antichains stacked below the stand-in."""
    return ordinal_sum(ordinal_sum(antichain(2, "p"), antichain(2, "q")), fig2_standin())


SEC5_FACETS = [
    tuple(c) for c in combinations("abcd", 3)
] + [tuple(c) for c in combinations("bcde", 3) if tuple(c) != ("b", "c", "d")]


def sec5_lattice() -> Poset:
    """Face lattice of two tetrahedron boundaries glued along the triangle bcd."""
    return face_lattice(SEC5_FACETS, "simplicial", list("abcde"))


FAMILIES: dict[str, tuple[int, Callable[..., Poset]]] = {
    "boolean": (1, boolean),
    "chain": (1, chain),
    "antichain": (1, antichain),
    "stacked_antichains": (2, stacked_antichains),
    "polygon": (1, polygon),
    "square": (0, lambda: polygon(4)),
    "tetrahedron": (0, tetrahedron),
    "octahedron": (0, octahedron),
    "cube": (0, cube),
    "partition": (1, partition),
    "divisor": (1, divisor),
    "uniform_matroid": (2, uniform_matroid),
    "fig1": (0, lambda: stacked_antichains(3, 2)),
    "fig2_standin": (0, fig2_standin),
    "remark36_Q": (0, remark36_Q),
    "remark37b": (0, remark37b),
    "sec5_lattice": (0, sec5_lattice),
}

_MINIMA = {
    "boolean": (0,),
    "chain": (1,),
    "antichain": (1,),
    "stacked_antichains": (1, 1),
    "polygon": (3,),
    "partition": (1,),
    "divisor": (1,),
    "uniform_matroid": (1, 1),
}


def generate(name: str, params: Sequence[int] = ()) -> Poset:
    """Build a catalog poset by family name and integer parameters."""
    try:
        arity, fn = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(name) from None
    params = [int(p) for p in params]
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    for p, lo in zip(params, _MINIMA.get(name, ())):
        if p < lo:
            raise BadParams(f"{name} parameter {p} below minimum {lo}")
    if name == "uniform_matroid" and params[0] > params[1]:
        raise BadParams("uniform_matroid needs r <= n")
    return fn(*params)


def instances() -> list[tuple[str, Poset]]:
    """Named catalog posets: small families, the counterexample posets and proper parts of lattices."""
    out: list[tuple[str, Poset]] = []
    for n in range(1, 5):
        out.append((f"chain({n})", chain(n)))
    for k in range(1, 4):
        out.append((f"antichain({k})", antichain(k)))
    for n, k in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        out.append((f"stacked_antichains({n},{k})", stacked_antichains(n, k)))
    for name in ("fig2_standin", "remark36_Q", "remark37b"):
        out.append((name, generate(name)))
    out.append(("fig1", generate("fig1")))
    lattices = [
        ("boolean(2)", boolean(2)),
        ("boolean(3)", boolean(3)),
        ("boolean(4)", boolean(4)),
        ("polygon(3)", polygon(3)),
        ("square", polygon(4)),
        ("polygon(5)", polygon(5)),
        ("tetrahedron", tetrahedron()),
        ("octahedron", octahedron()),
        ("cube", cube()),
        ("partition(3)", partition(3)),
        ("partition(4)", partition(4)),
        ("divisor(12)", divisor(12)),
        ("divisor(30)", divisor(30)),
        ("uniform_matroid(2,4)", uniform_matroid(2, 4)),
        ("uniform_matroid(3,4)", uniform_matroid(3, 4)),
        ("sec5_lattice", sec5_lattice()),
    ]
    for name, L in lattices:
        out.append((name, L))
        out.append((f"proper({name})", proper_part(L)))
    return out
