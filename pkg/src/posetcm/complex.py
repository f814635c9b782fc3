"""Simplicial complexes stored by their facets, and order complexes of posets.

A complex keeps an ordered ground set of vertex names; faces are bit masks
over that ground set. The complex ``{∅}`` is ``facets == {0}``; the void
complex (no faces at all) is rejected.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Literal, Sequence

from .exceptions import FaceNotInComplex, VoidComplex
from .poset import Poset, bits, popcount


def _maximal(masks: Iterable[int]) -> frozenset[int]:
    ordered = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


class SimplicialComplex:
    __slots__ = ("ground", "facets", "_index")

    def __init__(self, ground: Sequence[str], facets: Iterable[int]):
        self.ground = tuple(ground)
        facets = _maximal(facets)
        if not facets:
            raise VoidComplex("the void complex is not supported")
        self.facets = facets
        self._index = {v: i for i, v in enumerate(self.ground)}

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[str]], ground: Sequence[str] | None = None):
        faces = [tuple(f) for f in faces]
        if ground is None:
            seen: dict[str, None] = {}
            for f in faces:
                for v in f:
                    seen.setdefault(v)
            ground = list(seen)
        index = {v: i for i, v in enumerate(ground)}
        masks = []
        for f in faces:
            m = 0
            for v in f:
                m |= 1 << index[v]
            masks.append(m)
        return cls(ground, masks)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, {len(self.facets)} facets)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facet_sets() == other.facet_sets()

    def __hash__(self) -> int:
        return hash(self.facet_sets())

    # -- conversions -----------------------------------------------------

    def mask(self, face: Iterable[str]) -> int:
        m = 0
        for v in face:
            try:
                m |= 1 << self._index[v]
            except KeyError:
                raise FaceNotInComplex(f"{v!r} is not in the ground set") from None
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(mask))

    def facet_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(self.names(f)) for f in self.facets)

    def sorted_facets(self) -> list[tuple[str, ...]]:
        return sorted(self.names(f) for f in self.facets)

    # -- shape -------------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) == 1

    @property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.names(self.vertex_mask)

    def cone_apex(self) -> str | None:
        common = ~0
        for f in self.facets:
            common &= f
        if common <= 0:
            return None
        return self.ground[(common & -common).bit_length() - 1]

    def contains(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def faces(self) -> Iterator[int]:
        """Every face (including the empty face) exactly once."""
        seen: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                if sub not in seen:
                    seen.add(sub)
                    yield sub
                if sub == 0:
                    break
                sub = (sub - 1) & f

    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        """Faces grouped by dimension, each as a sorted index tuple, sorted canonically."""
        out: dict[int, set[tuple[int, ...]]] = {}
        for f in self.facets:
            idx = tuple(bits(f))
            for k in range(len(idx) + 1):
                bucket = out.setdefault(k - 1, set())
                bucket.update(combinations(idx, k))
        return {d: sorted(fs) for d, fs in sorted(out.items())}

    def f_vector(self) -> list[int]:
        """Face counts from dimension -1 up."""
        by_dim = self.faces_by_dim()
        return [len(by_dim[d]) for d in range(-1, self.dim + 1)]

    # -- local subcomplexes -----------------------------------------------

    def link(self, face: int) -> "SimplicialComplex":
        if not self.contains(face):
            raise FaceNotInComplex(self.names(face))
        return SimplicialComplex(self.ground, [f & ~face for f in self.facets if f & face == face])

    def open_star(self, face: int) -> frozenset[int]:
        if not self.contains(face):
            raise FaceNotInComplex(self.names(face))
        return frozenset(g for g in self.faces() if g & face == face)

    def contrastar(self, face: int) -> "SimplicialComplex":
        """Faces not containing ``face``; a nonempty face is assumed."""
        out = []
        for f in self.facets:
            if f & face != face:
                out.append(f)
            else:
                out.extend(f & ~(1 << v) for v in bits(face))
        return SimplicialComplex(self.ground, out)

    def delete(self, vertices: int) -> "SimplicialComplex":
        """Induced subcomplex on the vertices outside ``vertices``."""
        return SimplicialComplex(self.ground, [f & ~vertices for f in self.facets])


# -- public operations -------------------------------------------------------


def order_complex(P: Poset, mask: int | None = None) -> SimplicialComplex:
    """Complex of chains of ``P`` (restricted to ``mask`` if given)."""
    chains = P.maximal_chains(mask)
    return SimplicialComplex(P.labels, chains or [0])


def face_local(
    cx: SimplicialComplex,
    face: Iterable[str],
    kind: Literal["link", "open_star", "contrastar"],
):
    m = cx.mask(face)
    if kind == "link":
        return cx.link(m)
    if kind == "open_star":
        return cx.open_star(m)
    if kind == "contrastar":
        return cx.contrastar(m)
    raise ValueError(f"unknown kind {kind!r}")


def delete_vertices(cx: SimplicialComplex, vertices: Iterable[str]) -> SimplicialComplex:
    """``Δ ∖ A``; names outside the ground set are ignored."""
    m = 0
    for v in vertices:
        i = cx._index.get(v)
        if i is not None:
            m |= 1 << i
    return cx.delete(m)


def intersect_complexes(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """Intersection of complexes sharing one ground set."""
    first = complexes[0]
    facets = list(first.facets)
    for other in complexes[1:]:
        if other.ground != first.ground:
            raise ValueError("complexes must share a ground set")
        facets = [f & g for f in facets for g in other.facets]
        facets = list(_maximal(facets))
    return SimplicialComplex(first.ground, facets)


def complex_stats(cx: SimplicialComplex) -> tuple[int, bool, str | None]:
    return cx.dim, cx.is_pure, cx.cone_apex()
