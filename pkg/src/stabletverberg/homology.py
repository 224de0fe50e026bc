"""Exact simplicial homology: boundary matrices, Betti numbers, torsion.

Everything here is exact. Boundary matrices are stored as sparse columns
and reduced by Gaussian elimination with a shortest-column / shortest-row
pivot rule. Over a field every nonzero entry is a pivot. Over the integers
only entries ``±1`` are used as pivots, which preserves the Smith normal
form; whatever is left when no unit entry remains is handed to a dense
Smith normal form routine.

Homology is *reduced*: the chain complex is augmented by the empty face in
degree -1, so a cone has all Betti numbers zero and the complex ``{∅}``
has a single class in degree -1.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complex import Face, SimplicialComplex, join
from .errors import DomainError

SparseColumn = dict  # row index -> nonzero entry


# -- chain complexes --------------------------------------------------------


@dataclass
class ChainComplex:
    """Augmented simplicial chain complex of a finite complex.

    ``bases[k]`` lists the ``k``-faces (``k = -1`` is the empty face) and
    ``boundaries[k]`` holds the columns of the map from degree ``k`` to
    degree ``k-1``, one sparse column per face of ``bases[k]``.
    """

    complex: SimplicialComplex
    bases: dict[int, list[Face]]
    boundaries: dict[int, list[SparseColumn]]

    @property
    def top(self) -> int:
        return self.complex.dim

    def size(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def dense(self, k: int) -> list[list[int]]:
        rows, cols = self.size(k - 1), self.size(k)
        out = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.boundaries.get(k, ())):
            for i, v in col.items():
                out[i][j] = v
        return out

    def check_square_zero(self) -> bool:
        """Verify that every composite of consecutive boundary maps vanishes."""
        for k in range(1, self.top + 1):
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc: dict[int, int] = {}
                for mid, v in col.items():
                    for i, w in lower[mid].items():
                        acc[i] = acc.get(i, 0) + v * w
                if any(acc.values()):
                    return False
        return True


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    if K.is_void:
        raise DomainError("the void complex has no chain complex")
    bases = {k: K.faces(k) for k in range(-1, K.dim + 1)}
    boundaries: dict[int, list[SparseColumn]] = {-1: [{} for _ in bases[-1]]}
    for k in range(0, K.dim + 1):
        index = {f: i for i, f in enumerate(bases[k - 1])}
        cols = []
        for f in bases[k]:
            col = {}
            for i in range(len(f)):
                col[index[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        boundaries[k] = cols
    return ChainComplex(K, bases, boundaries)


# -- sparse elimination -------------------------------------------------------


def _reduce(columns: Sequence[SparseColumn], mode: str, modulus: int = 0):
    """Eliminate pivots; return the pivot count and the unreduced leftover columns.

    ``mode`` is ``"int"`` (only ±1 pivots, exact over Z), ``"mod"`` (entries
    in GF(modulus)) or ``"frac"`` (rationals).
    """
    cols: dict[int, dict] = {}
    rows: dict[int, dict] = {}
    for j, col in enumerate(columns):
        if mode == "mod":
            col = {i: v % modulus for i, v in col.items() if v % modulus}
        elif mode == "frac":
            col = {i: Fraction(v) for i, v in col.items() if v}
        else:
            col = {i: v for i, v in col.items() if v}
        if not col:
            continue
        cols[j] = col
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v

    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    pivots = 0
    while heap:
        n, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or len(col) != n:
            continue
        best, best_len = None, 0
        for i, v in col.items():
            if mode == "int" and v != 1 and v != -1:
                continue
            length = len(rows[i])
            if best is None or length < best_len:
                best, best_len = i, length
        if best is None:
            continue
        pivots += 1
        u = col[best]
        if mode == "mod":
            inv = pow(u, -1, modulus)
        prow = rows.pop(best)
        del cols[j]
        touched = set()
        for jj in prow:
            if jj != j:
                del cols[jj][best]
                touched.add(jj)
        for i, a in col.items():
            if i == best:
                continue
            if mode == "int":
                f = a * u
            elif mode == "mod":
                f = a * inv % modulus
            else:
                f = a / u
            row = rows[i]
            del row[j]
            for jj, b in prow.items():
                if jj == j:
                    continue
                nv = row.get(jj, 0) - f * b
                if mode == "mod":
                    nv %= modulus
                target = cols[jj]
                if nv:
                    row[jj] = nv
                    target[i] = nv
                else:
                    row.pop(jj, None)
                    target.pop(i, None)
            if not row:
                del rows[i]
        for jj in touched:
            target = cols[jj]
            if target:
                heapq.heappush(heap, (len(target), jj))
            else:
                del cols[jj]
    return pivots, cols


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix, in divisibility order."""
    a = [list(r) for r in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    f = a[i][t] // piv
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    f = a[t][j] // piv
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t onto the diagonal
                cand = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, pi, pj = min(cand)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def invariant_factors(columns: Sequence[SparseColumn]) -> list[int]:
    """Nonzero Smith invariants of a sparse integer matrix."""
    units, rest = _reduce(columns, "int")
    if not rest:
        return [1] * units
    row_ids = sorted({i for col in rest.values() for i in col})
    col_ids = sorted(rest)
    where = {i: n for n, i in enumerate(row_ids)}
    dense = [[0] * len(col_ids) for _ in row_ids]
    for n, j in enumerate(col_ids):
        for i, v in rest[j].items():
            dense[where[i]][n] = v
    return [1] * units + smith_diagonal(dense)


def rank(columns: Sequence[SparseColumn], coefficients: str | int = "q") -> int:
    """Rank over the rationals (``"q"``) or over GF(p) for a prime ``p``."""
    if coefficients == "q":
        return _reduce(columns, "frac")[0]
    p = int(coefficients)
    return _reduce(columns, "mod", p)[0]


# -- Betti tables ------------------------------------------------------------------


def parse_coefficients(descriptor: str | int) -> str | int:
    """Normalize ``int`` / ``q`` / ``gf:P`` / prime integer descriptors."""
    if isinstance(descriptor, int):
        if descriptor < 2 or any(descriptor % d == 0 for d in range(2, int(descriptor**0.5) + 1)):
            raise DomainError(f"field characteristic {descriptor} is not prime")
        return descriptor
    s = str(descriptor).strip().lower()
    if s in ("int", "z"):
        return "int"
    if s in ("q", "rat", "rational"):
        return "q"
    if s.startswith("gf:"):
        try:
            return parse_coefficients(int(s[3:]))
        except ValueError:
            raise DomainError(f"bad field descriptor {descriptor!r}") from None
    raise DomainError(f"unknown coefficient domain {descriptor!r}")


@dataclass(frozen=True)
class BettiTable:
    """Reduced Betti numbers in degrees ``-1..dim`` plus integral torsion.

    ``betti[k]`` is the rank of reduced homology in degree ``k``; for integer
    coefficients it is the free rank and ``torsion[k]`` lists the orders of
    the finite cyclic summands (all > 1).
    """

    coefficients: str | int
    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __getitem__(self, k: int) -> int:
        return self.betti.get(k, 0)

    def vanishes(self, k: int) -> bool:
        return self[k] == 0 and not self.torsion.get(k)

    def nonzero_degrees(self) -> list[int]:
        return [k for k in sorted(self.betti) if not self.vanishes(k)]

    def profile(self) -> tuple[int, ...]:
        """Betti numbers in degrees 0..top (degree -1 omitted)."""
        top = max(self.betti) if self.betti else -1
        return tuple(self[k] for k in range(0, top + 1))

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "coefficients": str(self.coefficients) if self.coefficients in ("int", "q")
            else f"gf:{self.coefficients}",
            "betti": {str(k): v for k, v in sorted(self.betti.items())},
            "torsion": {str(k): list(v) for k, v in sorted(self.torsion.items()) if v},
        }

    @classmethod
    def from_dict(cls, data: dict) -> BettiTable:
        coeff = parse_coefficients(data["coefficients"])
        betti = {int(k): int(v) for k, v in data["betti"].items()}
        torsion = {int(k): tuple(int(x) for x in v) for k, v in data.get("torsion", {}).items()}
        return cls(coeff, betti, torsion)


def _as_chain(K) -> ChainComplex:
    return K if isinstance(K, ChainComplex) else chain_complex(K)


def betti_numbers(K: SimplicialComplex | ChainComplex, coefficients: str | int = "q") -> BettiTable:
    """Reduced Betti numbers over Q or GF(p) by rank-nullity."""
    coeff = parse_coefficients(coefficients)
    if coeff == "int":
        return integral_homology(K)
    cc = _as_chain(K)
    ranks = {k: rank(cc.boundaries[k], coeff) for k in range(0, cc.top + 1)}
    betti = {}
    for k in range(-1, cc.top + 1):
        betti[k] = cc.size(k) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return BettiTable(coeff, betti)


def integral_homology(K: SimplicialComplex | ChainComplex) -> BettiTable:
    """Reduced integral homology from Smith normal forms of the boundary maps."""
    cc = _as_chain(K)
    factors = {k: invariant_factors(cc.boundaries[k]) for k in range(0, cc.top + 1)}
    betti, torsion = {}, {}
    for k in range(-1, cc.top + 1):
        out_rank = len(factors.get(k, ()))
        incoming = factors.get(k + 1, [])
        betti[k] = cc.size(k) - out_rank - len(incoming)
        tors = tuple(d for d in incoming if d > 1)
        if tors:
            torsion[k] = tors
    return BettiTable("int", betti, torsion)


def euler_characteristic_check(K: SimplicialComplex, table: BettiTable) -> bool:
    """Alternating face count (empty face included) equals the alternating Betti sum."""
    faces = sum((-1) ** k * len(K.faces(k)) for k in range(-1, K.dim + 1))
    return faces == sum((-1) ** k * v for k, v in table.betti.items())


def universal_coefficient_check(integral: BettiTable, modular: BettiTable) -> bool:
    """``b_k(GF(p)) = b_k(Z) + t_k(p) + t_{k-1}(p)``, t counting p-divisible torsion."""
    p = modular.coefficients
    if not isinstance(p, int):
        raise DomainError("second table must use prime-field coefficients")

    def t(k: int) -> int:
        return sum(1 for d in integral.torsion.get(k, ()) if d % p == 0)

    degrees = set(integral.betti) | set(modular.betti)
    return all(modular[k] == integral[k] + t(k) + t(k - 1) for k in degrees)


def torsion_primes(table: BettiTable) -> set[int]:
    out = set()
    for orders in table.torsion.values():
        for d in orders:
            n, f = d, 2
            while n > 1:
                while n % f == 0:
                    out.add(f)
                    n //= f
                f += 1
    return out


# -- connectivity verdicts -----------------------------------------------------


@dataclass(frozen=True)
class ConnectivityVerdict:
    """Homological connectivity: the largest ``n`` with reduced H_j = 0 for ``j <= n``.

    ``acyclic`` marks complexes whose whole reduced homology vanishes; their
    ``connectivity`` is ``None``. These are homological statements: simple
    connectivity is not certified.
    """

    connectivity: int | None
    acyclic: bool
    table: BettiTable
    basis: str = "homological"

    def at_least(self, n: int) -> bool:
        return self.acyclic or (self.connectivity is not None and self.connectivity >= n)

    def to_dict(self) -> dict:
        return {
            "connectivity": self.connectivity,
            "acyclic": self.acyclic,
            "basis": self.basis,
            "homology": self.table.to_dict(),
        }


def verdict_from_table(table: BettiTable) -> ConnectivityVerdict:
    bad = table.nonzero_degrees()
    if not bad:
        return ConnectivityVerdict(None, True, table)
    return ConnectivityVerdict(bad[0] - 1, False, table)


def connectivity_verdict(K: SimplicialComplex) -> ConnectivityVerdict:
    return verdict_from_table(integral_homology(K))


def join_connectivity(conn_k: int | None, conn_l: int | None) -> int | None:
    """``conn K + conn L + 2`` with ``None`` standing for an acyclic factor."""
    if conn_k is None or conn_l is None:
        return None
    return conn_k + conn_l + 2


@dataclass(frozen=True)
class JoinCheck:
    ok: bool
    left: ConnectivityVerdict
    right: ConnectivityVerdict
    joined: ConnectivityVerdict
    predicted: int | None
    kunneth_ok: bool


def join_betti_prediction(left: BettiTable, right: BettiTable) -> dict[int, int]:
    """Rational Betti numbers of a join: degree ``i+j+1`` collects ``b_i * b_j``."""
    out: dict[int, int] = {}
    for i, x in left.betti.items():
        for j, y in right.betti.items():
            if x and y:
                out[i + j + 1] = out.get(i + j + 1, 0) + x * y
    return out


def verify_join_formula(K: SimplicialComplex, L: SimplicialComplex) -> JoinCheck:
    """Check the join connectivity formula on homology, plus the Betti product rule."""
    if K.is_void or L.is_void:
        raise DomainError("join formula needs non-void complexes")
    J = join(K, L)
    vk, vl, vj = connectivity_verdict(K), connectivity_verdict(L), connectivity_verdict(J)
    predicted = join_connectivity(vk.connectivity, vl.connectivity)
    ok = vj.acyclic if predicted is None else (not vj.acyclic and vj.connectivity == predicted)
    qk, ql, qj = (betti_numbers(X, "q") for X in (K, L, J))
    expected = join_betti_prediction(qk, ql)
    kunneth = all(qj[d] == expected.get(d, 0) for d in set(qj.betti) | set(expected))
    return JoinCheck(ok and kunneth, vk, vl, vj, predicted, kunneth)


__all__ = [
    "BettiTable",
    "ChainComplex",
    "ConnectivityVerdict",
    "JoinCheck",
    "betti_numbers",
    "chain_complex",
    "connectivity_verdict",
    "euler_characteristic_check",
    "integral_homology",
    "invariant_factors",
    "join_betti_prediction",
    "join_connectivity",
    "parse_coefficients",
    "rank",
    "smith_diagonal",
    "torsion_primes",
    "universal_coefficient_check",
    "verdict_from_table",
    "verify_join_formula",
]
