"""Exact search and verification of Tverberg-type certificates for affine maps.

An affine map of a simplex is determined by the images of its vertices, so
the image of a face is the convex hull of the corresponding points. All
certificates carry rational weights and are re-checked with zero tolerance.

Point indices are 0-based throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .complex import Face, RotationAction, SimplicialComplex, is_rotation_invariant
from .errors import DegenerateInputError, DomainError
from .geometry import (
    PointConfiguration,
    all_collinear,
    bounding_box,
    boxes_meet,
    orient,
    random_integer_configuration,
    strictly_inside,
)
from .lp import check_farkas, feasible_point, solve

Part = tuple  # tuple[int, ...] of point indices

# per-vertex candidate cap for label-cover searches
MAX_LABEL_CANDIDATES = 64
WITNESS_RETRIES = 32


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class ColorConstraint:
    """Disjoint colour classes with either the rainbow or equal-coefficient rule."""

    classes: tuple[tuple[int, ...], ...]
    mode: str = "rainbow"  # or "equal"

    def __post_init__(self):
        seen: set[int] = set()
        for c in self.classes:
            if seen.intersection(c):
                raise DomainError("colour classes must be pairwise disjoint")
            seen.update(c)
        if self.mode not in ("rainbow", "equal"):
            raise DomainError(f"unknown colour mode {self.mode!r}")

    @classmethod
    def of(cls, classes, mode: str = "rainbow") -> ColorConstraint:
        return cls(tuple(tuple(sorted(c)) for c in classes), mode)

    def class_of(self) -> dict[int, int]:
        return {v: k for k, c in enumerate(self.classes) for v in c}


@dataclass(frozen=True)
class PartitionCertificate:
    """Parts with convex weights whose weighted means all equal ``point``."""

    parts: tuple[Part, ...]
    point: tuple[Fraction, ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def verify(
        self,
        config: PointConfiguration,
        *,
        disjoint: bool = True,
        colors: ColorConstraint | None = None,
    ) -> bool:
        if len(self.parts) != len(self.weights) or not self.parts:
            return False
        if disjoint:
            used = [i for part in self.parts for i in part]
            if len(used) != len(set(used)):
                return False
        for part, lam in zip(self.parts, self.weights):
            if not part or len(part) != len(lam):
                return False
            if any(w < 0 for w in lam) or sum(lam) != 1:
                return False
            for t in range(config.dim):
                if sum(w * config[i][t] for i, w in zip(part, lam)) != self.point[t]:
                    return False
        if colors is not None:
            if colors.mode == "rainbow":
                owner = colors.class_of()
                for part in self.parts:
                    hits = [owner[i] for i in part if i in owner]
                    if len(hits) != len(set(hits)):
                        return False
            else:
                for cls in colors.classes:
                    masses = {
                        sum((w for i, w in zip(part, lam) if i in cls), Fraction(0))
                        for part, lam in zip(self.parts, self.weights)
                    }
                    if len(masses) != 1:
                        return False
        return True

    def to_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "point": [str(c) for c in self.point],
            "weights": [[str(w) for w in lam] for lam in self.weights],
        }


@dataclass(frozen=True)
class Infeasibility:
    """Farkas certificate that the parts' hulls share no point.

    ``rows`` and ``rhs`` are the equality system that was solved; ``farkas``
    satisfies ``farkas^T rows >= 0`` and ``farkas^T rhs < 0``.
    """

    parts: tuple[Part, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    farkas: tuple[Fraction, ...]
    dim: int

    def __bool__(self) -> bool:
        return False

    def verify(self) -> bool:
        return check_farkas(self.rows, self.rhs, self.farkas)

    def separating_functional(self) -> tuple[tuple[Fraction, ...], Fraction, Fraction]:
        """For two parts: ``(w, hi, lo)`` with ``w.x <= hi`` on part 0, ``w.x >= lo`` on part 1 and ``hi < lo``."""
        if len(self.parts) != 2:
            raise DomainError("a separating functional needs exactly two parts")
        w = tuple(self.farkas[: self.dim])
        t0, t1 = self.farkas[self.dim], self.farkas[self.dim + 1]
        return w, t0, -t1


# -- the common point LP ---------------------------------------------------------


def _common_point_system(parts, config, equal_classes=()):
    d = config.dim
    cols = [(j, i) for j, part in enumerate(parts) for i in part]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = Fraction(0)
    for t in range(d):
        for j in range(1, len(parts)):
            row = []
            for jj, i in cols:
                if jj == j:
                    row.append(config[i][t])
                elif jj == 0:
                    row.append(-config[i][t])
                else:
                    row.append(zero)
            rows.append(row)
            rhs.append(zero)
    for j in range(len(parts)):
        rows.append([Fraction(1 if jj == j else 0) for jj, _ in cols])
        rhs.append(Fraction(1))
    for cls in equal_classes:
        members = set(cls)
        for j in range(1, len(parts)):
            row = []
            for jj, i in cols:
                inside = i in members
                row.append(Fraction(1 if inside and jj == j else -1 if inside and jj == 0 else 0))
            rows.append(row)
            rhs.append(zero)
    return cols, rows, rhs


def common_point(
    parts: Sequence[Sequence[int]],
    config: PointConfiguration,
    extra: ColorConstraint | None = None,
) -> PartitionCertificate | Infeasibility:
    """Exact LP: a point in the hull of every part, with convex weights.

    ``extra`` with mode ``"equal"`` additionally forces equal coefficient mass
    on each colour class across parts. The result is falsy when infeasible.
    """
    parts = tuple(tuple(p) for p in parts)
    if not parts:
        raise DomainError("need at least one part")
    for p in parts:
        if not p:
            raise DomainError("parts must be nonempty")
        for i in p:
            if not 0 <= i < len(config):
                raise DomainError(f"point index {i} out of range")
    classes = extra.classes if extra is not None and extra.mode == "equal" else ()
    cols, rows, rhs = _common_point_system(parts, config, classes)
    res = feasible_point(rows, rhs)
    if not res.feasible:
        return Infeasibility(parts, tuple(map(tuple, rows)), tuple(rhs), res.farkas, config.dim)
    weights = [[] for _ in parts]
    for (j, _), v in zip(cols, res.x):
        weights[j].append(v)
    first = parts[0]
    point = tuple(
        sum((w * config[i][t] for i, w in zip(first, weights[0])), Fraction(0))
        for t in range(config.dim)
    )
    return PartitionCertificate(parts, point, tuple(tuple(w) for w in weights))


def interval_common_point(parts: Sequence[Sequence[int]], config: PointConfiguration) -> bool:
    """Closed-form test on the line: intervals meet iff max of minima <= min of maxima."""
    if config.dim != 1:
        raise DomainError("interval test is for one-dimensional configurations")
    lo = max(min(config[i][0] for i in p) for p in parts)
    hi = min(max(config[i][0] for i in p) for p in parts)
    return lo <= hi


def _hulls_may_meet(parts, config) -> bool:
    return boxes_meet([bounding_box(config[i] for i in p) for p in parts])


# -- partition enumeration ---------------------------------------------------------


def set_partitions(n: int, q: int) -> Iterator[tuple[Part, ...]]:
    """Partitions of ``0..n-1`` into exactly ``q`` nonempty blocks.

    Generated in lexicographic order of their restricted-growth encodings.
    """
    labels = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[Part, ...]]:
        if n - i < q - used:
            return
        if i == n:
            blocks = [[] for _ in range(q)]
            for v, lab in enumerate(labels):
                blocks[lab].append(v)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(min(used + 1, q)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    if n >= q >= 1:
        yield from rec(0, 0)


def _constrained_assignments(n: int, q: int, colors: ColorConstraint) -> Iterator[tuple[Part, ...]]:
    """Assignments of points to ``q`` labelled-by-first-use parts or to no part.

    Uncoloured points are always used (adding them cannot hurt); coloured
    points may be left out so that every part keeps at most one point per class.
    """
    owner = colors.class_of()
    labels = [0] * n
    hits = [set() for _ in range(q)]

    def rec(i: int, used: int) -> Iterator[tuple[Part, ...]]:
        if i == n:
            if used == q:
                blocks = [[] for _ in range(q)]
                for v, lab in enumerate(labels):
                    if lab >= 0:
                        blocks[lab].append(v)
                yield tuple(tuple(b) for b in blocks)
            return
        cls = owner.get(i)
        for lab in range(min(used + 1, q)):
            if cls is not None:
                if cls in hits[lab]:
                    continue
                hits[lab].add(cls)
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))
            if cls is not None:
                hits[lab].discard(cls)
        if cls is not None:
            labels[i] = -1
            yield from rec(i + 1, used)

    yield from rec(0, 0)


def tverberg_partition(
    config: PointConfiguration,
    q: int,
    constraints: ColorConstraint | None = None,
) -> PartitionCertificate | None:
    """First partition (in enumeration order) into ``q`` parts with a common point."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    n = len(config)
    if constraints is not None and constraints.mode == "equal":
        return equal_coefficient_search(config, q, constraints)
    if constraints is None:
        candidates = set_partitions(n, q)
    else:
        for c in constraints.classes:
            if any(not 0 <= v < n for v in c):
                raise DomainError("colour class refers to a missing point")
        candidates = _constrained_assignments(n, q, constraints)
    for parts in candidates:
        if config.dim == 1:
            if not interval_common_point(parts, config):
                continue
        elif not _hulls_may_meet(parts, config):
            continue
        cert = common_point(parts, config)
        if cert:
            return cert
    return None


def equal_coefficient_search(
    config: PointConfiguration, q: int, classes: ColorConstraint
) -> PartitionCertificate | None:
    """Points in ``q`` disjoint faces with equal images and equal mass on every class."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    equal = ColorConstraint(classes.classes, "equal")
    for parts in set_partitions(len(config), q):
        if not _hulls_may_meet(parts, config):
            continue
        cert = common_point(parts, config, equal)
        if cert:
            return cert
    return None


def colorful_conjecture_search(
    config: PointConfiguration, q: int, classes: ColorConstraint
) -> dict:
    """Search a rainbow Tverberg partition and report the outcome (never asserted)."""
    cert = tverberg_partition(config, q, ColorConstraint(classes.classes, "rainbow"))
    return {
        "q": q,
        "dim": config.dim,
        "classes": [list(c) for c in classes.classes],
        "found": cert is not None,
        "certificate": cert.to_dict() if cert else None,
    }


# -- label covers constrained by a complex ---------------------------------------------


@dataclass(frozen=True)
class LabelCover:
    """``p`` (possibly overlapping) faces with a common image point.

    ``labels[v]`` is the set of indices ``j`` with ``v`` in face ``j``; it must
    be a face of the constraint complex on ``[p]``.
    """

    faces: tuple[Part, ...]
    labels: tuple[Face, ...]
    certificate: PartitionCertificate

    def verify(self, config: PointConfiguration, sigma: SimplicialComplex) -> bool:
        p = len(self.faces)
        for v, lab in enumerate(self.labels):
            if lab not in sigma:
                return False
            if tuple(j for j in range(1, p + 1) if v in self.faces[j - 1]) != tuple(lab):
                return False
        return self.certificate.parts == self.faces and self.certificate.verify(
            config, disjoint=False
        )


def sigma_constrained_cover(
    config: PointConfiguration,
    sigma: SimplicialComplex,
    p: int,
    *,
    max_labels: int = MAX_LABEL_CANDIDATES,
) -> LabelCover | None:
    """Search label sets (maximal faces of ``sigma``) per point so the ``p`` faces share a point.

    Enlarging a label set only enlarges faces, so searching over maximal
    faces of ``sigma`` loses nothing; at most ``max_labels`` of them are tried
    per point.
    """
    if sigma.universe != tuple(range(1, p + 1)):
        raise DomainError(f"constraint complex must live on [1..{p}]")
    if not is_rotation_invariant(sigma, RotationAction(p)):
        raise DomainError("constraint complex is not invariant under rotation")
    options = list(sigma.maximal_faces)[:max_labels]
    n = len(config)
    chosen: list[Face] = []

    def rec(v: int) -> LabelCover | None:
        if v == n:
            faces = tuple(
                tuple(u for u in range(n) if j in chosen[u]) for j in range(1, p + 1)
            )
            if any(not f for f in faces):
                return None
            if config.dim == 1 and not interval_common_point(faces, config):
                return None
            cert = common_point(faces, config)
            if cert:
                return LabelCover(faces, tuple(chosen), cert)
            return None
        covered = {j for lab in chosen for j in lab}
        missing = p - len(covered)
        # each remaining point adds at most max|label| new indices
        if missing > (n - v) * max(len(o) for o in options):
            return None
        for lab in options:
            chosen.append(lab)
            found = rec(v + 1)
            chosen.pop()
            if found:
                return found
        return None

    return rec(0)


# -- rotating an independent set off a face -------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def shift_incidences(I: Sequence[int], sigma_plus: Sequence[int], p: int) -> set[tuple[int, int]]:
    """Pairs ``(i, m)`` with ``i`` in ``I``, ``0 <= m < p`` and the rotation of ``i`` by ``m`` in ``sigma_plus``."""
    rot = RotationAction(p)
    target = set(sigma_plus)
    return {(i, m) for i in I for m in range(p) if rot.apply(i, m) in target}


def shift_to_avoid(
    I: Sequence[int], sigma_plus: Sequence[int], sigma: SimplicialComplex, p: int
) -> int:
    """Least ``m`` in ``0..p-1`` such that ``I`` rotated by ``m`` misses ``sigma_plus``.

    Under the preconditions such an ``m`` always exists: otherwise every
    rotation meets ``sigma_plus`` in exactly one point, giving ``p`` incidences,
    while there are exactly ``|I| * |sigma_plus|`` of them, and a prime ``p``
    greater than ``|I|`` is not such a product.
    """
    I = tuple(sorted(I))
    sigma_plus = tuple(sorted(sigma_plus))
    problems = []
    if not _is_prime(p):
        problems.append(f"p={p} is not prime")
    if p <= len(I):
        problems.append(f"p={p} does not exceed |I|={len(I)}")
    if sigma.universe != tuple(range(1, p + 1)):
        problems.append(f"complex does not live on [1..{p}]")
    elif not is_rotation_invariant(sigma, RotationAction(p)):
        problems.append("complex is not rotation invariant")
    edges = set(sigma.faces(1))
    if len(set(I)) != len(I) or any(v not in sigma.vertices for v in I):
        problems.append(f"I={I} is not a set of vertices")
    elif any((a, b) in edges for n, a in enumerate(I) for b in I[n + 1:]):
        problems.append(f"I={I} is not independent")
    if sigma_plus not in sigma:
        problems.append(f"{sigma_plus} is not a face")
    if problems:
        raise DomainError("; ".join(problems))
    rot = RotationAction(p)
    target = set(sigma_plus)
    for m in range(p):
        if target.isdisjoint(rot.apply(i, m) for i in I):
            return m
    raise AssertionError("no avoiding rotation although the preconditions hold")


# -- optimality of the Tverberg number ----------------------------------------------------


def no_tverberg_partition(config: PointConfiguration, q: int) -> tuple[bool, tuple[Part, ...] | None]:
    """Exhaustively confirm that no ``q``-part partition has a common point.

    Returns ``(True, None)`` on success, else ``(False, offending_parts)``.
    Every partition is either rejected by the exact box test or by an LP
    with a verified Farkas certificate.
    """
    for parts in set_partitions(len(config), q):
        if not _hulls_may_meet(parts, config):
            continue
        res = common_point(parts, config)
        if res:
            return False, parts
        if not res.verify():
            raise AssertionError("invalid infeasibility certificate")
    return True, None


def optimality_witness(q: int, d: int, seed: int = 0) -> PointConfiguration:
    """``(q-1)(d+1)`` points in generic position admitting no ``q``-part Tverberg partition."""
    if q < 2 or d < 1:
        raise DomainError("need q >= 2 and d >= 1")
    n = (q - 1) * (d + 1)
    if n > 12:
        raise DomainError(f"(q-1)(d+1)={n} exceeds the exhaustive-search limit 12")
    rng = random.Random(seed)
    for _ in range(WITNESS_RETRIES):
        config = random_integer_configuration(n, d, rng)
        ok, _ = no_tverberg_partition(config, q)
        if ok:
            return config
    raise RuntimeError(f"no witness found for q={q}, d={d} after {WITNESS_RETRIES} attempts")


# -- planar Birch certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class BirchCertificate:
    triangles: tuple[Part, ...]
    point: tuple[Fraction, Fraction]
    margin: Fraction = field(default=Fraction(0))

    def verify(self, config: PointConfiguration) -> bool:
        used = [i for t in self.triangles for i in t]
        if len(used) != len(set(used)) or any(len(t) != 3 for t in self.triangles):
            return False
        return all(strictly_inside([config[i] for i in t], self.point) for t in self.triangles)

    def to_dict(self) -> dict:
        return {
            "triangles": [list(t) for t in self.triangles],
            "point": [str(c) for c in self.point],
            "margin": str(self.margin),
        }


def triple_partitions(n: int) -> Iterator[tuple[Part, ...]]:
    """Partitions of ``0..n-1`` into triples, each triple led by the least unused index."""

    def rec(rest: tuple[int, ...]) -> Iterator[tuple[Part, ...]]:
        if not rest:
            yield ()
            return
        head = rest[0]
        tail = rest[1:]
        for x in range(len(tail)):
            for y in range(x + 1, len(tail)):
                trip = (head, tail[x], tail[y])
                remaining = tail[:x] + tail[x + 1:y] + tail[y + 1:]
                for more in rec(remaining):
                    yield (trip,) + more

    yield from rec(tuple(range(n)))


def _interior_lp(triangles: Sequence[Sequence[Sequence[Fraction]]]):
    """Maximize the common margin ``t <= 1`` with which ``y`` lies inside every triangle.

    Variables are ``y+ (2), y- (2), t`` followed by one slack per inequality.
    """
    ineqs = []  # (ax, ay, const) meaning ax*y0 + ay*y1 + const >= t
    for a, b, c in triangles:
        s = 1 if orient(a, b, c) > 0 else -1
        for u, v in ((a, b), (b, c), (c, a)):
            ax = -(v[1] - u[1])
            ay = v[0] - u[0]
            const = (v[1] - u[1]) * u[0] - (v[0] - u[0]) * u[1]
            ineqs.append((s * ax, s * ay, s * const))
    m = len(ineqs) + 1
    nvar = 5 + m
    A, b = [], []
    for r, (ax, ay, const) in enumerate(ineqs):
        row = [ax, ay, -ax, -ay, Fraction(-1)] + [Fraction(0)] * m
        row[5 + r] = Fraction(-1)
        A.append(row)
        b.append(-const)
    row = [Fraction(0)] * 4 + [Fraction(1)] + [Fraction(0)] * m
    row[5 + m - 1] = Fraction(1)
    A.append(row)
    b.append(Fraction(1))
    c = [Fraction(0)] * 4 + [Fraction(1)] + [Fraction(0)] * m
    res = solve(c, A, b)
    if res.status != "optimal":
        return None
    x = res.x
    return (x[0] - x[2], x[1] - x[3]), x[4]


def birch_certificate(config: PointConfiguration, q: int) -> BirchCertificate | None:
    """``q`` vertex-disjoint triangles on ``3q`` planar points, strictly containing one common point."""
    if config.dim != 2:
        raise DomainError("Birch certificates need planar points")
    if len(config) != 3 * q:
        raise DomainError(f"need exactly 3q={3 * q} points, got {len(config)}")
    if all_collinear(config.points):
        raise DegenerateInputError("all points are collinear")
    saw_nondegenerate = False
    for parts in triple_partitions(len(config)):
        tris = [[config[i] for i in t] for t in parts]
        if any(orient(*t) == 0 for t in tris):
            continue
        saw_nondegenerate = True
        if not boxes_meet([bounding_box(t) for t in tris]):
            continue
        found = _interior_lp(tris)
        if found is None:
            continue
        point, margin = found
        if margin > 0:
            cert = BirchCertificate(parts, point, margin)
            if not cert.verify(config):
                raise AssertionError("interior LP returned a point outside a triangle")
            return cert
    if not saw_nondegenerate:
        raise DegenerateInputError("every triple partition contains a collinear triple")
    return None


__all__ = [
    "BirchCertificate",
    "ColorConstraint",
    "Infeasibility",
    "LabelCover",
    "PartitionCertificate",
    "birch_certificate",
    "colorful_conjecture_search",
    "common_point",
    "equal_coefficient_search",
    "interval_common_point",
    "no_tverberg_partition",
    "optimality_witness",
    "set_partitions",
    "shift_incidences",
    "shift_to_avoid",
    "sigma_constrained_cover",
    "triple_partitions",
    "tverberg_partition",
]
