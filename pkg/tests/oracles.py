"""Brute-force reference implementations used only by the tests.

They avoid every shortcut taken by the library: stable sets come from a scan
over all subsets, homology ranks from sympy, primality from sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import sympy


def all_subsets(universe):
    u = list(universe)
    for k in range(len(u) + 1):
        yield from combinations(u, k)


def path_stable(face, q):
    return all(b - a >= q for a, b in zip(face, face[1:]))


def cycle_stable(face, q, p):
    return all(min(abs(a - b), p - abs(a - b)) >= q for a, b in combinations(face, 2))


def closure(maximal):
    out = set()
    for f in maximal:
        out.update(all_subsets(f))
    return out


def stable_faces(n, q, a, cyclic):
    """Faces of L^a_n or C^a_n from the definition: stable sets inside a stable set of size >= a."""
    ok = (lambda f: cycle_stable(f, q, n)) if cyclic else (lambda f: path_stable(f, q))
    big = [f for f in all_subsets(range(1, n + 1)) if ok(f) and len(f) >= a]
    return closure(big)


def face_set(K):
    return set(K.all_faces())


def boundary_matrix(faces_k, faces_km1):
    index = {f: i for i, f in enumerate(faces_km1)}
    M = sympy.zeros(len(faces_km1), len(faces_k))
    for j, f in enumerate(faces_k):
        for i in range(len(f)):
            M[index[f[:i] + f[i + 1:]], j] = (-1) ** i
    return M


def reduced_betti_q(faces):
    """Rational reduced Betti numbers from a set of faces (empty face included)."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    top = max(by_dim)
    ranks = {}
    for k in range(0, top + 1):
        if by_dim.get(k) and by_dim.get(k - 1):
            ranks[k] = boundary_matrix(by_dim[k], by_dim[k - 1]).rank()
        else:
            ranks[k] = 0
    return {k: len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(-1, top + 1)}


def smith_invariants(faces, k):
    """Nonzero invariant factors of the boundary map from dimension k to k-1 via sympy."""
    from sympy.matrices.normalforms import smith_normal_form

    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    if not by_dim.get(k) or not by_dim.get(k - 1):
        return []
    M = boundary_matrix(by_dim[k], by_dim[k - 1])
    S = smith_normal_form(M, domain=sympy.ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


def is_prime(n):
    return bool(sympy.isprime(n))


def is_prime_power(n):
    if n < 2:
        return False
    return len(sympy.factorint(n)) == 1


def interval_partition_exists(xs, parts):
    return max(min(xs[i] for i in p) for p in parts) <= min(max(xs[i] for i in p) for p in parts)


def separated_by_line(A, B):
    """Whether two finite planar sets have disjoint convex hulls.

    Checks every direction normal to a segment between two input points; two
    disjoint compact convex polygons are always strictly separated along one
    of their edge normals, and collinear or degenerate cases are covered by
    also trying the segment directions themselves.
    """
    pts = list(A) + list(B)
    dirs = set()
    for u, v in combinations(pts, 2):
        dx, dy = v[0] - u[0], v[1] - u[1]
        if dx or dy:
            dirs.add((-dy, dx))
            dirs.add((dx, dy))
    dirs.add((Fraction(1), Fraction(0)))
    for w in dirs:
        a = [w[0] * p[0] + w[1] * p[1] for p in A]
        b = [w[0] * p[0] + w[1] * p[1] for p in B]
        if max(a) < min(b) or max(b) < min(a):
            return True
    return False
