"""Rational point configurations and exact planar predicates."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MalformedInputError

Point = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class PointConfiguration:
    """Images ``f(v_0), .., f(v_{n-1})`` of simplex vertices under an affine map."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise MalformedInputError("a configuration needs at least one point")
        d = len(self.points[0])
        if d < 1:
            raise MalformedInputError("points need at least one coordinate")
        for i, pt in enumerate(self.points):
            if len(pt) != d:
                raise MalformedInputError(f"point {i} has {len(pt)} coordinates, expected {d}")

    @classmethod
    def of(cls, points: Iterable[Iterable]) -> PointConfiguration:
        return cls(tuple(tuple(Fraction(c) for c in pt) for pt in points))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def to_text(self) -> str:
        return "".join(" ".join(str(c) for c in pt) + "\n" for pt in self.points)


def parse_rational(token: str) -> Fraction:
    """Parse ``int``, ``decimal`` or ``num/den`` exactly."""
    t = token.strip()
    if not t or any(ch in t for ch in "eEjJ_ ") or t.lower() in ("nan", "inf", "-inf", "+inf"):
        raise ValueError(f"not a rational literal: {token!r}")
    if t.count("/") > 1:
        raise ValueError(f"not a rational literal: {token!r}")
    return Fraction(t)


def parse_points(text: str) -> PointConfiguration:
    """One point per line, whitespace-separated coordinates; ``#`` starts a comment."""
    points = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pt = tuple(parse_rational(tok) for tok in line.split())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = len(pt)
        elif len(pt) != dim:
            raise MalformedInputError(f"line {lineno}: expected {dim} coordinates, got {len(pt)}")
        points.append(pt)
    if not points:
        raise MalformedInputError("points file contains no points")
    return PointConfiguration(tuple(points))


def random_configuration(
    n: int, d: int, rng: random.Random, *, numerator: int = 10**4, denominator: int = 97
) -> PointConfiguration:
    """``n`` random rational points in ``[-numerator, numerator]^d`` scaled by random denominators."""
    return PointConfiguration(
        tuple(
            tuple(
                Fraction(rng.randint(-numerator, numerator), rng.randint(1, denominator))
                for _ in range(d)
            )
            for _ in range(n)
        )
    )


def random_integer_configuration(n: int, d: int, rng: random.Random, box: int = 10**6) -> PointConfiguration:
    return PointConfiguration(
        tuple(tuple(Fraction(rng.randint(-box, box)) for _ in range(d)) for _ in range(n))
    )


def orient(a: Sequence, b: Sequence, c: Sequence) -> Fraction:
    """Twice the signed area of the triangle ``abc`` (positive if counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def strictly_inside(triangle: Sequence[Sequence], y: Sequence) -> bool:
    a, b, c = triangle
    s = orient(a, b, c)
    if s == 0:
        return False
    signs = (orient(a, b, y), orient(b, c, y), orient(c, a, y))
    return all(v > 0 for v in signs) if s > 0 else all(v < 0 for v in signs)


def all_collinear(points: Sequence[Sequence]) -> bool:
    if len(points) < 3:
        return True
    a = points[0]
    b = next((p for p in points[1:] if tuple(p) != tuple(a)), None)
    if b is None:
        return True
    return all(orient(a, b, c) == 0 for c in points)


def bounding_box(points: Iterable[Sequence]) -> tuple[tuple, tuple]:
    pts = list(points)
    d = len(pts[0])
    lo = tuple(min(p[t] for p in pts) for t in range(d))
    hi = tuple(max(p[t] for p in pts) for t in range(d))
    return lo, hi


def boxes_meet(boxes: Sequence[tuple[tuple, tuple]]) -> bool:
    """Whether axis-parallel boxes share a point (necessary for hulls to meet)."""
    d = len(boxes[0][0])
    return all(max(b[0][t] for b in boxes) <= min(b[1][t] for b in boxes) for t in range(d))
