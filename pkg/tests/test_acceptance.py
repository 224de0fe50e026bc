"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Each test records its verdict via ``record`` before asserting, so the summary
lines appear even for failing criteria. Run directly with
``python3 tests/test_acceptance.py`` to get only the summary lines.
"""

import json
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from stabletverberg import certify  # noqa: E402
from stabletverberg.cli import main, run  # noqa: E402
from stabletverberg.complex import discrete, make_complex, simplex, simplex_boundary  # noqa: E402
from stabletverberg.families import cyclic_stable_extendable, linear_stable_extendable  # noqa: E402
from stabletverberg.homology import (  # noqa: E402
    betti_numbers,
    euler_characteristic_check,
    integral_homology,
    universal_coefficient_check,
    verify_join_formula,
)
from stabletverberg.planner import join_bound_check, plan, route  # noqa: E402
from stabletverberg.trials import (  # noqa: E402
    birch_trials,
    equal_trials,
    rainbow_trials,
    shift_sweep,
    tverberg_trials,
)
from stabletverberg.tverberg import no_tverberg_partition, optimality_witness  # noqa: E402

import oracles  # noqa: E402

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, elapsed: float, limit: float | None, detail: str) -> bool:
    """Store and print the verdict line; a time limit, when given, is part of the verdict."""
    in_time = limit is None or elapsed <= limit
    verdict = ok and in_time
    timing = f"{elapsed:.1f}s" + (f"/{limit:.0f}s" if limit else "")
    line = f"criterion {n:2d}: {'PASS' if verdict else 'FAIL'} [{timing}] {detail}"
    if not in_time:
        line += " (over time limit)"
    RESULTS[n] = line
    print(line)
    return verdict


def _failed_params(report, keys):
    return ", ".join("(" + ",".join(str(r.params[k]) for k in keys) + f") {r.witness_ref}" for r in report.failures)


def test_criterion_01_cyclic_connectivity():
    t = time.perf_counter()
    rep = certify.cyclic_connectivity(qs=(2, 3, 4, 5), p_max=23)
    ok = rep.all_passed
    detail = f"{len(rep.rows)} instances of C_p^a, p=(a+1)q+1 prime <= 23"
    if not ok:
        detail += f"; nonvanishing homology at (q,a,p) = {_failed_params(rep, ('q', 'a', 'p'))}"
    assert record(1, ok, time.perf_counter() - t, 120, detail), detail


def test_criterion_02_cyclic_decomposition():
    t = time.perf_counter()
    rep = certify.cyclic_decomposition(qs=(2, 3, 4, 5), p_max=23, prime_only=True)
    ok = rep.all_passed and len(rep.rows) > 0
    detail = f"{len(rep.rows)} face-set identities"
    if not ok:
        detail += f"; mismatches {_failed_params(rep, ('q', 'a', 'p'))}"
    assert record(2, ok, time.perf_counter() - t, 30, detail), detail


def test_criterion_03_path_truncated_union_grids():
    t = time.perf_counter()
    path = certify.path_connectivity(qs=(2, 3, 4), r_max=18)
    trunc = certify.truncated_connectivity(qs=(2, 3, 4), r_max=18)
    step = certify.union_step(qs=(2, 3, 4), r_max=18)
    identities_ok = all(
        r.values.get("intersection", True) is True and r.values.get("bipyramid", True) is True for r in step.rows
    )
    conn_step_ok = all(r.passed for r in step.rows)
    ok = path.all_passed and trunc.all_passed and conn_step_ok and identities_ok
    detail = (
        f"path {len(path.rows) - len(path.failures)}/{len(path.rows)}, "
        f"truncated {len(trunc.rows) - len(trunc.failures)}/{len(trunc.rows)}, "
        f"union-step connectivity {len(step.rows) - len(step.failures)}/{len(step.rows)}, "
        f"union-step identities {'all hold' if identities_ok else 'BROKEN'}"
    )
    if trunc.failures:
        detail += f"; truncated fails at (q,a,k) = {_failed_params(trunc, ('q', 'a', 'k'))}"
    if step.failures:
        detail += f"; union-step fails at (q,a,k) = {_failed_params(step, ('q', 'a', 'k'))}"
    assert record(3, ok, time.perf_counter() - t, 300, detail), detail


def test_criterion_04_cycle_independence_pattern():
    t = time.perf_counter()
    rep = certify.cycle_independence(range(4, 16), certify.sphere_pattern)
    # independent oracle: rational Betti numbers from sympy ranks must agree with the engine
    from stabletverberg.families import cyclic_stable

    engine_agrees = all(
        betti_numbers(cyclic_stable(r, 2), "q").betti == oracles.reduced_betti_q(oracles.face_set(cyclic_stable(r, 2)))
        for r in range(4, 12)
    )
    ok = rep.all_passed and engine_agrees
    detail = f"r=4..15 against one sphere (two when 3|r) in degree floor((r-1)/3); engine vs sympy {engine_agrees}"
    if rep.failures:
        detail += "; mismatches " + ", ".join(f"r={r.params['r']}: {r.witness_ref}" for r in rep.failures)
    assert record(4, ok, time.perf_counter() - t, None, detail), detail


def test_criterion_05_disk_bundle():
    t = time.perf_counter()
    rep = certify.disk_bundle(((2, 2), (3, 3)))
    ok = rep.all_passed
    detail = "; ".join(f"(q,a)=({r.params['q']},{r.params['a']}) b1={r.values['b1']}" for r in rep.rows)
    assert record(5, ok, time.perf_counter() - t, None, detail), detail


RP2 = make_complex(
    [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
     (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]
)


def test_criterion_06_homology_sanity():
    t = time.perf_counter()
    problems = []
    for n in range(1, 7):
        S = simplex_boundary(range(n + 1))
        Z = integral_homology(S)
        if {k: Z[k] for k in Z.nonzero_degrees()} != {n - 1: 1} or any(Z.torsion.values()):
            problems.append(f"sphere n={n}")
    Z = integral_homology(RP2)
    if Z.torsion != {1: (2,)} or Z.nonzero_degrees() != [1]:
        problems.append("RP2 torsion")
    instances = [RP2] + [simplex_boundary(range(n + 1)) for n in range(1, 7)]
    instances += [cyclic_stable_extendable(p, q, a) for q, a, p in certify.cyclic_parameters((2, 3, 4, 5), 19)]
    instances += [linear_stable_extendable(r, q, a) for q in (2, 3) for r in range(4, 13) for a in (1, 2, 3)
                  if not linear_stable_extendable(r, q, a).is_void]
    for K in instances:
        Z = integral_homology(K)
        if not euler_characteristic_check(K, Z):
            problems.append(f"euler {K.f_vector()}")
        for p in (2, 3):
            if not universal_coefficient_check(Z, betti_numbers(K, p)):
                problems.append(f"uct p={p} {K.f_vector()}")
    ok = not problems
    detail = f"spheres n<=6, RP2, {len(instances)} Euler/UCT instances" + (f"; {problems}" if problems else "")
    assert record(6, ok, time.perf_counter() - t, None, detail), detail


def test_criterion_07_join_formula():
    t = time.perf_counter()
    pieces = [
        discrete((1, 2)),
        discrete((1, 2, 3)),
        simplex_boundary((1, 2, 3)),
        simplex_boundary((1, 2, 3, 4)),
        simplex((1, 2)),
        linear_stable_extendable(7, 2, 2),
        linear_stable_extendable(9, 3, 2),
        linear_stable_extendable(8, 2, 3),
    ]
    pairs = [(A, B) for i, A in enumerate(pieces) for B in pieces[i:]]
    bad = [i for i, (A, B) in enumerate(pairs) if not verify_join_formula(A, B).ok]
    ok = len(pairs) >= 10 and not bad
    detail = f"{len(pairs) - len(bad)}/{len(pairs)} pairs"
    assert record(7, ok, time.perf_counter() - t, None, detail), detail


def test_criterion_08_tverberg_trials():
    t = time.perf_counter()
    outs = [tverberg_trials(q, d, 1000) for q, d in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)]]
    ok = all(o["ok"] and o["verified"] == 1000 for o in outs)
    detail = ", ".join(f"(q,d)=({o['params']['q']},{o['params']['d']}) {o['verified']}/1000" for o in outs)
    assert record(8, ok, time.perf_counter() - t, 600, detail), detail


def test_criterion_09_optimality_witness():
    t = time.perf_counter()
    found = []
    for q, d in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        w = optimality_witness(q, d)
        found.append(len(w) == (q - 1) * (d + 1) and no_tverberg_partition(w, q)[0])
    ok = all(found)
    detail = f"witnesses {sum(found)}/4 excluded exhaustively"
    assert record(9, ok, time.perf_counter() - t, 120, detail), detail


def test_criterion_10_shift_sweep():
    t = time.perf_counter()
    outs = []
    for p in (7, 11, 13):
        for q in range(2, p):
            if (p - 1) % q == 0 and (p - 1) // q - 1 >= 1:
                outs.append(shift_sweep(p, q, (p - 1) // q - 1))
    ok = all(o["ok"] for o in outs)
    detail = ", ".join(f"p={o['params']['p']} q={o['params']['q']} {o['verified']}/{o['faces']}" for o in outs)
    assert record(10, ok, time.perf_counter() - t, 60, detail), detail


def test_criterion_11_birch_trials():
    t = time.perf_counter()
    outs = [birch_trials(q, 1000) for q in (2, 3)]
    ok = all(o["ok"] and o["verified"] == 1000 - o["skipped"] for o in outs)
    detail = ", ".join(f"q={o['params']['q']} {o['verified']}/{1000 - o['skipped']} nondegenerate" for o in outs)
    assert record(11, ok, time.perf_counter() - t, 600, detail), detail


def test_criterion_12_colourful_variants():
    t = time.perf_counter()
    rainbow = rainbow_trials(2, 1, 1, 1000)
    equal = equal_trials(2, 1, 200)
    ok = rainbow["ok"] and rainbow["verified"] == 1000 and equal["ok"] and equal["verified"] == 200
    detail = f"rainbow {rainbow['verified']}/1000, equal mass {equal['verified']}/200"
    assert record(12, ok, time.perf_counter() - t, None, detail), detail


def test_criterion_13_planner():
    t = time.perf_counter()
    problems = []
    for q in range(2, 41):
        if oracles.is_prime_power(q):
            want = "prime_power_q"
        elif oracles.is_prime_power(q + 1):
            want = "prime_power_q_plus_1"
        elif oracles.is_prime(2 * q + 1):
            want = "prime_2q_plus_1"
        else:
            want = "general"
        if route(q) != want:
            problems.append(f"route({q})")
    plans = [plan(34, d) for d in (1, 2, 3)]
    for rep in plans:
        if not (oracles.is_prime(rep.p) and rep.p % 34 == 1):
            problems.append(f"p={rep.p}")
        if not join_bound_check(4, rep.d, 34, 34 * (rep.d + 1), rep.p).ok:
            problems.append(f"bound d={rep.d}")
        if not rep.margin_ok or not (rep.a - 2) * 34 >= rep.p - 4 * 34:
            problems.append(f"margin d={rep.d}")
    ok = not problems
    detail = "routes q<=40 match oracle; " + ", ".join(f"d={r.d}: p={r.p}, a={r.a}" for r in plans)
    if problems:
        detail += f"; {problems}"
    assert record(13, ok, time.perf_counter() - t, None, detail), detail


MANIFEST_RUNS = [
    ["certify", "disk-bundle"],
    ["certify", "cyclic-decomposition", "--format", "json"],
    ["certify", "cyclic-connectivity", "--q", "2", "--a-max", "5"],
    ["plan", "-q", "34", "-d", "1"],
    ["trials", "tverberg", "-q", "2", "-d", "2", "--count", "25", "--seed", "7"],
    ["witness", "-q", "3", "-d", "1"],
    ["shift", "--p", "13", "--q", "3", "--a", "3", "--sweep"],
]


def test_criterion_14_manifest_replay(tmp_path, capsys):
    t = time.perf_counter()
    mismatches = []
    count = 0
    for mode in ("uncached", "cached"):
        flags = ["--no-cache"] if mode == "uncached" else ["--cache-dir", str(tmp_path / "cache")]
        for n, argv in enumerate(MANIFEST_RUNS):
            extra = flags if argv[0] == "certify" else []
            out, man = tmp_path / f"{mode}{n}.out", tmp_path / f"{mode}{n}.json"
            code = main(argv + extra + ["--out", str(out), "--manifest", str(man)])
            manifest = json.loads(man.read_text())
            again = run(manifest["argv"])
            count += 1
            capsys.readouterr()
            replay_code = main(["replay", str(man)])
            matched = json.loads(capsys.readouterr().out)["match"]
            if again.text.encode() != out.read_bytes() or again.code != code or replay_code != 0 or not matched:
                mismatches.append(f"{mode}:{' '.join(argv)}")
    ok = not mismatches
    detail = f"{count - len(mismatches)}/{count} manifests replay byte-identically"
    if mismatches:
        detail += f"; {mismatches}"
    assert record(14, ok, time.perf_counter() - t, None, detail), detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
