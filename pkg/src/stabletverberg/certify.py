"""Grids of connectivity and identity checks over the stable-set families.

Each check produces a :class:`Report`: one row per parameter tuple holding
the computed values, the expected outcome and a pass flag. Failing rows
carry a witness (the offending homology table or a face in the symmetric
difference of two complexes) both in full (JSON) and as a short
``witness_ref`` string (CSV).

Connectivity here is homological: reduced integral homology vanishing up to
the stated degree. Simple connectivity is never certified.

Available checks (``CHECKS``):

``path-connectivity``
    L^a_r is void or (a-2)-connected.
``truncated-connectivity``
    T^{a-1}_m is (a-3)-connected; whether its literal maximal-face reading
    agrees with the block form is reported alongside.
``union-step``
    L^a_{r-1} ∪ (L^{a-1}_{r+k-2q}+(q-1)) with r = aq+2 is (a-3)-connected; the
    two pieces meet in T^{a-1}_{r+k-2q}+(q-1), plus the apex simplex when
    k = q-1, and the apex meets the truncated part in a bipyramid.
``cyclic-decomposition``
    C^a_{r+q-1} is the union of the translates L^a_r + j, j < q.
``cyclic-induction``
    M_k = ∪_{j<=k} (L^a_r + j) is (a-2)-connected, M_{k-1} meets L^a_r + k in
    the expected two-piece union, and the reflection x -> r+k-x maps those
    pieces onto untranslated path complexes.
``cyclic-connectivity``
    C^a_p with p = (a+1)q+1 is (a-2)-connected.
``cycle-independence``
    reduced Betti numbers of the independence complex of the r-cycle against
    the single-sphere / two-sphere pattern in degree floor((r-1)/3).
``disk-bundle``
    C^{a+1}_p with p = (a+1)q+1 has first Betti number 1 (circle-like).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .complex import Face, SimplicialComplex, translate
from .families import (
    FamilyParams,
    apex_overlap,
    bipyramid,
    compare_faces,
    cyclic_stable,
    cyclic_stable_extendable,
    induction_step,
    linear_stable_extendable,
    prefix_union,
    reflect,
    truncated_complex,
    union_step_complex,
    verify_decomposition,
    verify_truncated_decomposition,
)
from .homology import BettiTable, integral_homology, verdict_from_table
from .planner import is_prime

REPORT_VERSION = 1
HomologyFn = Callable[[SimplicialComplex], BettiTable]


@dataclass
class ReportRow:
    params: dict
    values: dict
    expected: str
    passed: bool
    witness: dict | None = None
    witness_ref: str = ""


@dataclass
class Report:
    check: str
    param_names: tuple[str, ...]
    value_names: tuple[str, ...]
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[ReportRow]:
        return [r for r in self.rows if not r.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*self.param_names, *self.value_names, "expected", "pass", "witness_ref"])
        for r in self.rows:
            w.writerow(
                [r.params[k] for k in self.param_names]
                + [_cell(r.values.get(k)) for k in self.value_names]
                + [r.expected, "pass" if r.passed else "fail", r.witness_ref]
            )
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "check": self.check,
            "all_passed": self.all_passed,
            "rows": [
                {
                    "params": r.params,
                    "values": r.values,
                    "expected": r.expected,
                    "pass": r.passed,
                    "witness": r.witness,
                    "witness_ref": r.witness_ref,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def _face_ref(face: Face | None) -> str:
    return "face:" + "-".join(map(str, face)) if face is not None else ""


def _homology_ref(table: BettiTable) -> str:
    parts = []
    for k in table.nonzero_degrees():
        free = table[k]
        tors = table.torsion.get(k, ())
        summands = ([f"Z^{free}"] if free > 1 else ["Z"] if free else []) + [f"Z/{t}" for t in tors]
        parts.append(f"H{k}=" + "+".join(summands))
    return ";".join(parts) or "acyclic"


def _conn_values(K: SimplicialComplex, table: BettiTable) -> dict:
    v = verdict_from_table(table)
    return {
        "f_vector": list(K.f_vector()),
        "betti": list(table.profile()),
        "connectivity": "acyclic" if v.acyclic else v.connectivity,
    }


def _conn_row(params: dict, K: SimplicialComplex, need: int, homology: HomologyFn) -> ReportRow:
    """Row asserting reduced homology vanishes in degrees <= need."""
    table = homology(K)
    ok = verdict_from_table(table).at_least(need)
    row = ReportRow(params, {**_conn_values(K, table), "expected_conn": need}, f"conn>={need}", ok)
    if not ok:
        row.witness = {"homology": table.to_dict()}
        row.witness_ref = _homology_ref(table)
    return row


def _merge(row: ReportRow, label: str, result) -> ReportRow:
    """Fold a face-set identity result into ``row``."""
    ok, witness = result
    row.values[label] = ok
    row.expected += f"; {label}"
    if not ok:
        row.passed = False
        row.witness = {**(row.witness or {}), label: list(witness) if witness is not None else None}
        ref = f"{label}:{_face_ref(witness)}"
        row.witness_ref = f"{row.witness_ref};{ref}" if row.witness_ref else ref
    return row


# -- parameter grids -----------------------------------------------------------------


def cyclic_parameters(qs: Iterable[int], p_max: int, a_max: int | None = None, prime_only: bool = True):
    """``(q, a, p)`` with ``p = (a+1)q+1 <= p_max``, ``a >= 1`` and ``p`` prime when asked."""
    for q in qs:
        a = 1
        while (a + 1) * q + 1 <= p_max and (a_max is None or a <= a_max):
            p = (a + 1) * q + 1
            if not prime_only or is_prime(p):
                yield q, a, p
            a += 1


# -- checks ------------------------------------------------------------------------------


def path_connectivity(qs=(2, 3, 4), r_max: int = 18, homology: HomologyFn = integral_homology) -> Report:
    """Every L^a_r with a >= 1 up to the first void value of ``a``."""
    rep = Report("path-connectivity", ("q", "r", "a"), ("f_vector", "betti", "connectivity", "expected_conn", "void"))
    for q in qs:
        for r in range(1, r_max + 1):
            for a in range(1, (r - 1) // q + 3):
                K = linear_stable_extendable(r, q, a)
                params = {"q": q, "r": r, "a": a}
                if K.is_void:
                    rep.rows.append(ReportRow(params, {"void": True}, "void or conn>=a-2", True))
                    break
                row = _conn_row(params, K, a - 2, homology)
                row.values["void"] = False
                row.expected = "void or " + row.expected
                rep.rows.append(row)
    return rep


def _truncated_parameters(qs, r_max: int):
    for q in qs:
        for a in range(2, r_max + 1):
            for k in range(1, q):
                if FamilyParams(q, a, k).m <= r_max:
                    yield q, a, k


def truncated_connectivity(qs=(2, 3, 4), r_max: int = 18, homology: HomologyFn = integral_homology) -> Report:
    rep = Report(
        "truncated-connectivity",
        ("q", "a", "k", "m"),
        ("f_vector", "betti", "connectivity", "expected_conn", "literal_agrees"),
    )
    for q, a, k in _truncated_parameters(qs, r_max):
        m = FamilyParams(q, a, k).m
        row = _conn_row({"q": q, "a": a, "k": k, "m": m}, truncated_complex(q, a, k), a - 3, homology)
        # informational: the maximal-face reading differs from the block form when k = q-1
        row.values["literal_agrees"] = verify_truncated_decomposition(q, a, k).ok
        rep.rows.append(row)
    return rep


def union_step(qs=(2, 3, 4), r_max: int = 18, homology: HomologyFn = integral_homology) -> Report:
    rep = Report(
        "union-step",
        ("q", "a", "k", "r"),
        ("f_vector", "betti", "connectivity", "expected_conn", "intersection", "bipyramid"),
    )
    for q in qs:
        for a in range(2, r_max + 1):
            r = a * q + 2
            if r > r_max:
                break
            for k in range(1, q):
                pieces = union_step_complex(q, a, k)
                row = _conn_row({"q": q, "a": a, "k": k, "r": r}, pieces.union, a - 3, homology)
                _merge(row, "intersection", compare_faces(pieces.intersection, pieces.expected))
                if pieces.apex is not None:
                    _merge(row, "bipyramid", compare_faces(apex_overlap(pieces), bipyramid(pieces.apex)))
                rep.rows.append(row)
    return rep


def cyclic_decomposition(qs=(2, 3, 4, 5), p_max: int = 23, prime_only: bool = True) -> Report:
    rep = Report("cyclic-decomposition", ("q", "a", "p", "r"), ("decomposition",))
    for q, a, p in cyclic_parameters(qs, p_max, prime_only=prime_only):
        row = ReportRow({"q": q, "a": a, "p": p, "r": p - q + 1}, {}, "", True)
        rep.rows.append(_merge(row, "decomposition", verify_decomposition(p, q, a)))
        row.expected = row.expected.lstrip("; ")
    return rep


def cyclic_induction(
    qs=(2, 3, 4), p_max: int = 23, prime_only: bool = False, homology: HomologyFn = integral_homology
) -> Report:
    rep = Report(
        "cyclic-induction",
        ("q", "a", "k", "r"),
        ("f_vector", "betti", "connectivity", "expected_conn", "intersection", "reflection", "closes_cycle"),
    )
    for q, a, p in cyclic_parameters(qs, p_max, prime_only=prime_only):
        if a < 2:
            continue
        r = a * q + 2
        for k in range(1, q):
            M = prefix_union(q, a, k)
            row = _conn_row({"q": q, "a": a, "k": k, "r": r}, M, a - 2, homology)
            step = induction_step(q, a, k)
            _merge(row, "intersection", compare_faces(step.intersection, step.expected))
            s = r + k - 2 * q
            left = translate(linear_stable_extendable(r - 1, q, a), k)
            right = translate(linear_stable_extendable(s, q, a - 1), q)
            ok_left = compare_faces(reflect(left, r, k), linear_stable_extendable(r - 1, q, a))
            ok_right = compare_faces(reflect(right, r, k), translate(linear_stable_extendable(s, q, a - 1), q - 1))
            _merge(row, "reflection", ok_left if not ok_left.ok else ok_right)
            if k == q - 1:
                _merge(row, "closes_cycle", compare_faces(M, cyclic_stable_extendable(p, q, a)))
            rep.rows.append(row)
    return rep


def cyclic_connectivity(
    qs=(2, 3, 4, 5), p_max: int = 23, a_max: int | None = None, homology: HomologyFn = integral_homology
) -> Report:
    rep = Report("cyclic-connectivity", ("q", "a", "p"), ("f_vector", "betti", "connectivity", "expected_conn"))
    for q, a, p in cyclic_parameters(qs, p_max, a_max):
        rep.rows.append(_conn_row({"q": q, "a": a, "p": p}, cyclic_stable_extendable(p, q, a), a - 2, homology))
    return rep


def sphere_pattern(r: int) -> dict[int, int]:
    """The single-sphere / two-sphere pattern in degree floor((r-1)/3)."""
    return {(r - 1) // 3: 2 if r % 3 == 0 else 1}


def cycle_independence_pattern(r: int) -> dict[int, int]:
    """Reduced Betti numbers of the independence complex of the r-cycle (r >= 3).

    It is a wedge of two (k-1)-spheres for r = 3k, a (k-1)-sphere for r = 3k+1
    and a k-sphere for r = 3k+2.
    """
    k, rem = divmod(r, 3)
    if rem == 0:
        return {k - 1: 2}
    if rem == 1:
        return {k - 1: 1}
    return {k: 1}


def cycle_independence(
    r_values: Iterable[int] = range(4, 16),
    pattern: Callable[[int], dict[int, int]] = sphere_pattern,
    homology: HomologyFn = integral_homology,
) -> Report:
    rep = Report("cycle-independence", ("r",), ("betti", "predicted"))
    for r in r_values:
        K = cyclic_stable(r, 2)
        table = homology(K)
        want = pattern(r)
        observed = {k: table[k] for k in table.nonzero_degrees()}
        torsion_free = not any(table.torsion.values())
        ok = observed == want and torsion_free
        pred = ";".join(f"H{k}=Z^{v}" for k, v in sorted(want.items()))
        row = ReportRow({"r": r}, {"betti": list(table.profile()), "predicted": pred}, pred, ok)
        if not ok:
            row.witness = {"homology": table.to_dict()}
            row.witness_ref = _homology_ref(table)
        rep.rows.append(row)
    return rep


def disk_bundle(cases=((2, 2), (3, 3)), homology: HomologyFn = integral_homology) -> Report:
    rep = Report("disk-bundle", ("q", "a", "p"), ("f_vector", "betti", "connectivity", "b1"))
    for q, a in cases:
        p = (a + 1) * q + 1
        K = cyclic_stable_extendable(p, q, a + 1)
        table = homology(K)
        v = verdict_from_table(table)
        ok = table[1] == 1 and not v.at_least(a - 1)
        row = ReportRow({"q": q, "a": a, "p": p}, {**_conn_values(K, table), "b1": table[1]}, "b1=1 and conn<a-1", ok)
        if not ok:
            row.witness = {"homology": table.to_dict()}
            row.witness_ref = _homology_ref(table)
        rep.rows.append(row)
    return rep


CHECKS = {
    "path-connectivity": path_connectivity,
    "truncated-connectivity": truncated_connectivity,
    "union-step": union_step,
    "cyclic-decomposition": cyclic_decomposition,
    "cyclic-induction": cyclic_induction,
    "cyclic-connectivity": cyclic_connectivity,
    "cycle-independence": cycle_independence,
    "disk-bundle": disk_bundle,
}
