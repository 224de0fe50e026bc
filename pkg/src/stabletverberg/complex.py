"""Finite abstract simplicial complexes stored by their maximal faces.

A face is a strictly increasing tuple of non-negative integers. A complex
keeps an ambient ``universe`` of admissible vertices together with the
antichain of its maximal faces; every subset of a maximal face is a face.

Two degenerate complexes are kept apart on purpose:

* the *void* complex has no faces at all (``maximal_faces == ()``);
* the *empty-face* complex ``{∅}`` has exactly one face, the empty one
  (``maximal_faces == ((),)``). It is the unit for :func:`join`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, MalformedInputError

Face = tuple  # tuple[int, ...], strictly increasing

FORMAT_VERSION = 1


def make_face(vertices: Iterable[int]) -> Face:
    vs = list(vertices)
    out = tuple(sorted(vs))
    if len(set(out)) != len(out):
        raise MalformedInputError(f"duplicate vertex in face {vs!r}")
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool):
            raise MalformedInputError(f"vertex {v!r} is not an integer")
    return out


def _antichain(faces: Iterable[Face]) -> tuple[Face, ...]:
    """Drop every face contained in another one; return canonical order."""
    unique = sorted(set(faces), key=lambda f: (-len(f), f))
    kept: list[frozenset] = []
    out: list[Face] = []
    for f in unique:
        fs = frozenset(f)
        if any(fs <= k for k in kept):
            continue
        kept.append(fs)
        out.append(f)
    return tuple(sorted(out))


@dataclass(frozen=True)
class SimplicialComplex:
    universe: tuple[int, ...]
    maximal_faces: tuple[Face, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    # -- basic queries -------------------------------------------------
    @property
    def is_void(self) -> bool:
        return not self.maximal_faces

    @property
    def dim(self) -> int:
        """Dimension; -1 for ``{∅}`` and -2 for the void complex."""
        if self.is_void:
            return -2
        return max(len(f) for f in self.maximal_faces) - 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.maximal_faces for v in f}))

    def __contains__(self, face: Iterable[int]) -> bool:
        s = set(face)
        return any(s.issubset(m) for m in self.maximal_faces)

    def faces(self, k: int) -> list[Face]:
        """All faces of dimension ``k`` in lexicographic order."""
        if k < -1 or self.is_void:
            return []
        cached = self._cache.get(k)
        if cached is None:
            found = set()
            for m in self.maximal_faces:
                if len(m) >= k + 1:
                    found.update(combinations(m, k + 1))
            cached = sorted(found)
            self._cache[k] = cached
        return list(cached)

    def all_faces(self) -> list[Face]:
        out: list[Face] = []
        for k in range(-1, self.dim + 1):
            out.extend(self.faces(k))
        return out

    def f_vector(self) -> tuple[int, ...]:
        """Face counts in dimensions 0..dim (the empty face is not counted)."""
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def same_faces(self, other: SimplicialComplex) -> bool:
        """Face-set equality, ignoring the ambient universes."""
        return self.maximal_faces == other.maximal_faces

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "universe": list(self.universe),
            "maximal_faces": [list(f) for f in self.maximal_faces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> SimplicialComplex:
        try:
            universe = data["universe"]
            faces = data["maximal_faces"]
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"complex JSON lacks field {exc}") from None
        return make_complex([make_face(f) for f in faces], universe=universe)

    @classmethod
    def from_json(cls, text: str) -> SimplicialComplex:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"invalid complex JSON: {exc}") from None
        return cls.from_dict(data)


def make_complex(
    maximal_candidates: Iterable[Iterable[int]],
    universe: Iterable[int] | None = None,
) -> SimplicialComplex:
    """Build the complex generated by ``maximal_candidates``.

    The universe defaults to the union of the candidates. Candidates that lie
    inside another candidate are discarded.
    """
    faces = [make_face(c) for c in maximal_candidates]
    if universe is None:
        uni = tuple(sorted({v for f in faces for v in f}))
    else:
        uni = make_face(universe)
        allowed = set(uni)
        for f in faces:
            if not allowed.issuperset(f):
                raise MalformedInputError(f"face {f} leaves the universe")
    return SimplicialComplex(uni, _antichain(faces))


def void_complex(universe: Iterable[int] = ()) -> SimplicialComplex:
    return make_complex([], universe=universe)


def empty_face_complex() -> SimplicialComplex:
    return SimplicialComplex((), ((),))


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    """The full simplex on ``vertices``."""
    f = make_face(vertices)
    return SimplicialComplex(f, (f,))


def simplex_boundary(vertices: Iterable[int]) -> SimplicialComplex:
    f = make_face(vertices)
    return make_complex(combinations(f, len(f) - 1), universe=f)


def discrete(vertices: Iterable[int]) -> SimplicialComplex:
    f = make_face(vertices)
    return make_complex([(v,) for v in f], universe=f)


def faces_of_dim(K: SimplicialComplex, k: int) -> list[Face]:
    return K.faces(k)


# -- joins ----------------------------------------------------------------


def join_vertex_map(K: SimplicialComplex, L: SimplicialComplex) -> dict[tuple[int, int], int]:
    """Flattening of tagged vertices ``(component, v)`` used by :func:`join`.

    Component 1 is ``K`` and component 2 is ``L``. Vertex ``v`` of component
    ``c`` is sent to its 1-based rank inside that component's universe, offset
    by the sizes of the universes of earlier components. The join therefore
    lives on ``[|U_K| + |U_L|]``, with ``K`` occupying the first block.
    """
    tags = {(1, v): i + 1 for i, v in enumerate(K.universe)}
    offset = len(K.universe)
    tags.update({(2, v): offset + i + 1 for i, v in enumerate(L.universe)})
    return tags


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    tags = join_vertex_map(K, L)
    universe = tuple(range(1, len(K.universe) + len(L.universe) + 1))
    faces = []
    for s in K.maximal_faces:
        left = [tags[1, v] for v in s]
        for t in L.maximal_faces:
            faces.append(tuple(left + [tags[2, w] for w in t]))
    # unions of maximal faces on disjoint supports already form an antichain
    return SimplicialComplex(universe, tuple(sorted(faces)))


def n_fold_join(K: SimplicialComplex, n: int) -> SimplicialComplex:
    """``K^{*n}``; component ``c`` occupies vertices ``(c-1)|U|+1 .. c|U|``."""
    if n < 1:
        raise DomainError(f"n-fold join needs n >= 1, got {n}")
    if n == 1:
        return relabel(K, {v: i + 1 for i, v in enumerate(K.universe)})
    return join(K, n_fold_join(K, n - 1))


# -- vertex maps and set operations ----------------------------------------


def translate(T: SimplicialComplex, s: int) -> SimplicialComplex:
    return SimplicialComplex(
        tuple(v + s for v in T.universe),
        tuple(tuple(v + s for v in f) for f in T.maximal_faces),
    )


def relabel(
    K: SimplicialComplex, bijection: Mapping[int, int] | Callable[[int], int]
) -> SimplicialComplex:
    fn = bijection.__getitem__ if isinstance(bijection, Mapping) else bijection
    try:
        image = {v: fn(v) for v in K.universe}
    except KeyError as exc:
        raise DomainError(f"vertex map undefined on {exc}") from None
    if len(set(image.values())) != len(image):
        raise DomainError("vertex map is not injective on the universe")
    faces = [tuple(sorted(image[v] for v in f)) for f in K.maximal_faces]
    return SimplicialComplex(tuple(sorted(image.values())), tuple(sorted(faces)))


def union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    universe = tuple(sorted(set(K.universe) | set(L.universe)))
    return SimplicialComplex(universe, _antichain(K.maximal_faces + L.maximal_faces))


def union_all(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    universe = sorted({v for K in complexes for v in K.universe})
    faces = [f for K in complexes for f in K.maximal_faces]
    return SimplicialComplex(tuple(universe), _antichain(faces))


def intersection(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    universe = tuple(sorted(set(K.universe) | set(L.universe)))
    if K.is_void or L.is_void:
        return SimplicialComplex(universe, ())
    faces = set()
    for s in K.maximal_faces:
        ss = set(s)
        for t in L.maximal_faces:
            faces.add(tuple(sorted(ss.intersection(t))))
    return SimplicialComplex(universe, _antichain(faces))


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0:
        raise DomainError(f"skeleton dimension must be >= 0, got {k}")
    faces = set()
    for m in K.maximal_faces:
        if len(m) <= k + 1:
            faces.add(m)
        else:
            faces.update(combinations(m, k + 1))
    return SimplicialComplex(K.universe, _antichain(faces))


# -- symmetry and independence --------------------------------------------


@dataclass(frozen=True)
class RotationAction:
    """The cyclic shift ``j -> j+1 mod p`` on the vertex labels ``1..p``."""

    p: int

    def __post_init__(self):
        if self.p < 1:
            raise DomainError(f"rotation modulus must be positive, got {self.p}")

    def apply(self, v: int, m: int = 1) -> int:
        return (v - 1 + m) % self.p + 1

    def apply_face(self, face: Iterable[int], m: int = 1) -> Face:
        return tuple(sorted(self.apply(v, m) for v in face))


def is_rotation_invariant(K: SimplicialComplex, action: RotationAction) -> bool:
    if K.universe != tuple(range(1, action.p + 1)):
        raise DomainError(f"complex universe is not [1..{action.p}]")
    faces = set(K.maximal_faces)
    # a bijection that maps maximal faces to faces permutes the maximal faces
    return all(action.apply_face(f) in faces for f in K.maximal_faces)


def edges(K: SimplicialComplex) -> set[tuple[int, int]]:
    return set(K.faces(1))


def find_independent_set(K: SimplicialComplex, q: int) -> Face | None:
    """Lexicographically least ``q`` vertices of ``K`` spanning no edge."""
    if q < 0:
        raise DomainError(f"independent set size must be >= 0, got {q}")
    verts = K.vertices
    adjacent: dict[int, set[int]] = {v: set() for v in verts}
    for a, b in K.faces(1):
        adjacent[a].add(b)
        adjacent[b].add(a)

    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == q:
            return True
        for i in range(start, len(verts) - (q - len(chosen)) + 1):
            v = verts[i]
            if any(v in adjacent[c] for c in chosen):
                continue
            chosen.append(v)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None
