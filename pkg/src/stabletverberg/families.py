"""The q-stable complexes on a path and on a cycle, and identities among them.

Vertices are labelled ``1..r`` (path) or ``1..p`` (cycle, standing for
Z/p). A set is q-stable on the path if any two elements differ by at least
``q``; on the cycle the cyclic distance ``min(|i-j|, p-|i-j|)`` is used.

``L(r, q)`` and ``C(p, q)`` are the complexes of all q-stable sets. The
superscript-``a`` versions keep only the sets that extend to a q-stable set
with at least ``a`` elements; they are generated by the maximal q-stable sets
of size ``>= a``, which the constructors enumerate directly from their gap
sequences instead of scanning all subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .complex import (
    Face,
    SimplicialComplex,
    intersection,
    make_complex,
    relabel,
    simplex,
    translate,
    union,
    union_all,
    void_complex,
)
from .errors import DomainError


class Verification(NamedTuple):
    ok: bool
    witness: Face | None = None


@dataclass(frozen=True)
class FamilyParams:
    q: int
    a: int
    k: int | None = None

    @property
    def p(self) -> int:
        """Cycle length ``(a+1)q+1`` used throughout the cyclic pipeline."""
        return (self.a + 1) * self.q + 1

    @property
    def m(self) -> int:
        if self.k is None:
            raise DomainError("truncated-complex size needs k")
        return (self.a - 2) * self.q + self.k + 2


def _check_q(q: int) -> None:
    if q < 2:
        raise DomainError(f"gap parameter q must be >= 2, got {q}")


# -- enumeration of maximal q-stable sets ---------------------------------


def _maximal_linear(r: int, q: int) -> Iterator[Face]:
    # maximal iff first <= q, consecutive gaps <= 2q-1 and last > r-q
    def grow(prefix: list[int]) -> Iterator[Face]:
        last = prefix[-1]
        if last + q > r:
            yield tuple(prefix)
            return
        for nxt in range(last + q, min(last + 2 * q - 1, r) + 1):
            prefix.append(nxt)
            yield from grow(prefix)
            prefix.pop()

    for first in range(1, min(q, r) + 1):
        yield from grow([first])


def _maximal_cyclic(p: int, q: int) -> Iterator[Face]:
    # maximal iff every cyclic gap lies in [q, 2q-1]
    if p <= 2 * q - 1:
        for v in range(1, p + 1):
            yield (v,)
        return

    def grow(prefix: list[int]) -> Iterator[Face]:
        first, last = prefix[0], prefix[-1]
        closing = first + p - last
        if len(prefix) >= 2 and q <= closing <= 2 * q - 1:
            yield tuple(prefix)
        for nxt in range(last + q, min(last + 2 * q - 1, first + p - q, p) + 1):
            prefix.append(nxt)
            yield from grow(prefix)
            prefix.pop()

    # the minimum sits below the closing gap, which is at most 2q-1
    for first in range(1, min(2 * q - 1, p) + 1):
        yield from grow([first])


def linear_stable(r: int, q: int) -> SimplicialComplex:
    """L_r: q-stable subsets of [r] (no wrap-around)."""
    return linear_stable_extendable(r, q, 0)


def linear_stable_extendable(r: int, q: int, a: int) -> SimplicialComplex:
    """L_r^a: faces of L_r contained in a q-stable set of size ``>= a``."""
    _check_q(q)
    universe = range(1, r + 1) if r > 0 else ()
    if r <= 0:
        return make_complex([()] if a <= 0 else [], universe=())
    faces = [f for f in _maximal_linear(r, q) if len(f) >= a]
    return make_complex(faces, universe=universe)


def cyclic_stable(p: int, q: int) -> SimplicialComplex:
    """C_p: q-stable subsets of Z/p, vertices labelled 1..p."""
    return cyclic_stable_extendable(p, q, 0)


def cyclic_stable_extendable(p: int, q: int, a: int) -> SimplicialComplex:
    """C_p^a: faces of C_p contained in a q-stable set of size ``>= a``."""
    _check_q(q)
    if p < 1:
        raise DomainError(f"cycle length must be positive, got {p}")
    faces = [f for f in _maximal_cyclic(p, q) if len(f) >= a]
    return make_complex(faces, universe=range(1, p + 1))


def truncated_complex(q: int, a: int, k: int) -> SimplicialComplex:
    """T^{a-1}_m with ``m = (a-2)q + k + 2``, in its block-sequence form.

    Generated by the ``(a-1)``-element stable sets whose block sequence has
    ``k_1 >= 2`` (they live on ``2..m``) or ``k_{a-1} <= 2`` (they live on
    ``1..m-k``), that is ``(L^{a-1}_{m-1} + 1) ∪ L^{a-1}_{m-k}``.

    For ``k <= q-2`` this agrees with :func:`truncated_complex_literal`. For
    ``k = q-1`` the path has ``(a-1)q+1`` vertices, ``L^{a-1}_m`` gains
    ``a``-element faces, and the two readings differ.
    """
    _check_q(q)
    if a < 2 or not 1 <= k <= q - 1:
        raise DomainError(f"need a >= 2 and 1 <= k <= q-1, got a={a}, k={k}")
    m = FamilyParams(q, a, k).m
    shifted = translate(linear_stable_extendable(m - 1, q, a - 1), 1)
    head = linear_stable_extendable(m - k, q, a - 1)
    return make_complex(shifted.maximal_faces + head.maximal_faces, universe=range(1, m + 1))


def truncated_complex_literal(q: int, a: int, k: int) -> SimplicialComplex:
    """Maximal faces of L^{a-1}_m that miss vertex 1 or miss all of the last ``k`` vertices."""
    _check_q(q)
    if a < 2 or not 1 <= k <= q - 1:
        raise DomainError(f"need a >= 2 and 1 <= k <= q-1, got a={a}, k={k}")
    m = FamilyParams(q, a, k).m
    tail = set(range(m - k + 1, m + 1))
    base = linear_stable_extendable(m, q, a - 1)
    kept = [f for f in base.maximal_faces if 1 not in f or tail.isdisjoint(f)]
    return make_complex(kept, universe=range(1, m + 1))


def block_sequence(face: Face, q: int, a: int, r: int) -> tuple[int, ...]:
    """Offsets ``k_j`` of a maximal face of L^{a-1}_r inside its blocks.

    Block ``j < a-1`` is ``{(j-1)q+1, .., jq}`` and the last block is
    ``{(a-2)q+1, .., r}``; the element in block ``j`` equals ``(j-1)q + k_j``.
    """
    _check_q(q)
    if a < 2 or not (a - 2) * q + 1 <= r <= (a - 1) * q:
        raise DomainError(f"r={r} outside [(a-2)q+1, (a-1)q] for q={q}, a={a}")
    face = tuple(face)
    if face not in linear_stable_extendable(r, q, a - 1).maximal_faces:
        raise DomainError(f"{face} is not a maximal face of L^{a - 1}_{r}")
    seq = tuple(v - j * q for j, v in enumerate(face))
    if len(seq) != a - 1 or not all(1 <= x <= r - (a - 2) * q for x in seq):
        raise DomainError(f"{face} does not meet every block once")
    return seq


# -- identities -------------------------------------------------------------


def _first_difference(K: SimplicialComplex, L: SimplicialComplex) -> Face | None:
    """A face lying in exactly one of the two complexes, or None."""
    for f in K.maximal_faces:
        if f not in L:
            return f
    for f in L.maximal_faces:
        if f not in K:
            return f
    return None


def compare_faces(K: SimplicialComplex, L: SimplicialComplex) -> Verification:
    witness = _first_difference(K, L)
    return Verification(witness is None, witness)


def linear_translates_union(r: int, q: int, a: int) -> SimplicialComplex:
    """Union of the translates ``L^a_r + j`` for ``j = 0..q-1``."""
    base = linear_stable_extendable(r, q, a)
    return union_all([translate(base, j) for j in range(q)])


def verify_decomposition(p: int, q: int, a: int, r: int | None = None) -> Verification:
    """Check ``C^a_p`` against the union of ``q`` translates of ``L^a_r``, r = p-q+1."""
    if r is None:
        r = p - q + 1
    if r + q - 1 != p:
        raise DomainError(f"need r + q - 1 = p, got r={r}, q={q}, p={p}")
    if r < 1:
        raise DomainError(f"path length r={r} must be positive")
    return compare_faces(cyclic_stable_extendable(p, q, a), linear_translates_union(r, q, a))


def verify_L_equals_La(r: int, q: int) -> Verification:
    """Check ``L_r = L^a_r`` for ``a = floor(r / (2q-1))``."""
    a = r // (2 * q - 1)
    return compare_faces(linear_stable(r, q), linear_stable_extendable(r, q, a))


def verify_truncated_decomposition(q: int, a: int, k: int) -> Verification:
    """Whether the literal maximal-face reading of T^{a-1}_m equals its block-sequence form."""
    return compare_faces(truncated_complex_literal(q, a, k), truncated_complex(q, a, k))


@dataclass(frozen=True)
class UnionPieces:
    """The two-piece union of the path complexes used for the cyclic inductive step.

    ``union`` is ``L^a_{r-1} ∪ (L^{a-1}_{r+k-2q} + (q-1))`` with ``r = aq+2``,
    ``intersection`` is the intersection of the two pieces, ``expected``
    is the truncated complex it should equal, and ``apex`` is the extra
    face ``{q, 2q, .., aq}`` present when ``k = q-1``.
    """

    q: int
    a: int
    k: int
    left: SimplicialComplex
    right: SimplicialComplex
    union: SimplicialComplex
    intersection: SimplicialComplex
    expected: SimplicialComplex
    apex: Face | None


def union_step_complex(q: int, a: int, k: int) -> UnionPieces:
    _check_q(q)
    if a < 2 or not 1 <= k <= q - 1:
        raise DomainError(f"need a >= 2 and 1 <= k <= q-1, got a={a}, k={k}")
    r = a * q + 2
    left = linear_stable_extendable(r - 1, q, a)
    right = translate(linear_stable_extendable(r + k - 2 * q, q, a - 1), q - 1)
    truncated = translate(truncated_complex(q, a, k), q - 1)
    apex = None
    expected = truncated
    if k == q - 1:
        apex = tuple(range(q, a * q + 1, q))
        expected = union(truncated, simplex(apex))
    return UnionPieces(
        q, a, k, left, right, union(left, right), intersection(left, right), expected, apex
    )


def apex_overlap(pieces: UnionPieces) -> SimplicialComplex:
    """Intersection of the apex simplex with the truncated part (k = q-1 only)."""
    if pieces.apex is None:
        raise DomainError("apex face only exists when k = q-1")
    truncated = translate(truncated_complex(pieces.q, pieces.a, pieces.k), pieces.q - 1)
    return intersection(simplex(pieces.apex), truncated)


def bipyramid(apex: Face) -> SimplicialComplex:
    """Faces of the simplex ``apex`` that avoid containing both end vertices."""
    first, last = apex[0], apex[-1]
    return make_complex(
        [tuple(v for v in apex if v != first), tuple(v for v in apex if v != last)],
        universe=apex,
    )


@dataclass(frozen=True)
class InductionStep:
    """Pieces of ``M_k = M_{k-1} ∪ (L^a_r + k)`` for the cyclic complex, r = aq+2."""

    q: int
    a: int
    k: int
    previous: SimplicialComplex
    added: SimplicialComplex
    intersection: SimplicialComplex
    expected: SimplicialComplex


def induction_step(q: int, a: int, k: int) -> InductionStep:
    _check_q(q)
    if a < 1 or not 1 <= k <= q - 1:
        raise DomainError(f"need a >= 1 and 1 <= k <= q-1, got a={a}, k={k}")
    r = a * q + 2
    base = linear_stable_extendable(r, q, a)
    previous = union_all([translate(base, j) for j in range(k)])
    added = translate(base, k)
    expected = union(
        translate(linear_stable_extendable(r - 1, q, a), k),
        translate(linear_stable_extendable(r + k - 2 * q, q, a - 1), q),
    )
    return InductionStep(q, a, k, previous, added, intersection(previous, added), expected)


def reflect(K: SimplicialComplex, r: int, k: int) -> SimplicialComplex:
    """Apply ``x -> r + k - x``, which reverses the vertices 1..r+k-1."""
    return relabel(K, lambda x: r + k - x)


def prefix_union(q: int, a: int, k: int) -> SimplicialComplex:
    """``M_k``: union of ``L^a_r + j`` for ``j = 0..k`` with ``r = aq+2``."""
    base = linear_stable_extendable(a * q + 2, q, a)
    return union_all([translate(base, j) for j in range(k + 1)])


def empty_or_void(r: int, q: int, a: int) -> bool:
    """Whether L^a_r has no faces at all (holds iff r <= (a-1)q when a >= 1)."""
    return linear_stable_extendable(r, q, a).is_void


__all__ = [
    "FamilyParams",
    "InductionStep",
    "UnionPieces",
    "Verification",
    "apex_overlap",
    "bipyramid",
    "block_sequence",
    "union_step_complex",
    "compare_faces",
    "cyclic_stable",
    "cyclic_stable_extendable",
    "empty_or_void",
    "induction_step",
    "linear_stable",
    "linear_stable_extendable",
    "linear_translates_union",
    "prefix_union",
    "reflect",
    "truncated_complex",
    "truncated_complex_literal",
    "verify_L_equals_La",
    "verify_decomposition",
    "verify_truncated_decomposition",
    "void_complex",
]
