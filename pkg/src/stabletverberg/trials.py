"""Seeded random experiments for the partition searches.

Every trial draws its configuration from ``random.Random(f"{seed}:{i}")``
so that any single trial can be replayed from the seed and its index.
Summaries are plain dicts ready for JSON output.
"""

from __future__ import annotations

import random
from typing import Callable

from .complex import simplex
from .errors import DegenerateInputError
from .families import cyclic_stable_extendable
from .geometry import PointConfiguration, random_configuration
from .tverberg import (
    ColorConstraint,
    birch_certificate,
    equal_coefficient_search,
    shift_to_avoid,
    tverberg_partition,
)

DEFAULT_SEED = 20240229


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _summary(kind: str, params: dict, seed: int, trials: int) -> dict:
    return {"version": 1, "kind": kind, "params": params, "seed": seed, "trials": trials,
            "found": 0, "verified": 0, "skipped": 0, "failures": []}


def _finish(out: dict) -> dict:
    out["ok"] = out["verified"] == out["trials"] - out["skipped"] and not out["failures"]
    return out


def tverberg_trials(q: int, d: int, trials: int, seed: int = DEFAULT_SEED) -> dict:
    """Unconstrained search on ``q(d+1)`` random points in R^d."""
    out = _summary("tverberg", {"q": q, "d": d}, seed, trials)
    for i in range(trials):
        config = random_configuration(q * (d + 1), d, trial_rng(seed, i))
        cert = tverberg_partition(config, q)
        if cert is None:
            out["failures"].append({"trial": i, "points": config.to_text()})
            continue
        out["found"] += 1
        out["verified"] += cert.verify(config)
    return _finish(out)


def birch_trials(q: int, trials: int, seed: int = DEFAULT_SEED) -> dict:
    """Disjoint triangles around a common point on ``3q`` random planar points."""
    out = _summary("birch", {"q": q}, seed, trials)
    for i in range(trials):
        config = random_configuration(3 * q, 2, trial_rng(seed, i))
        try:
            cert = birch_certificate(config, q)
        except DegenerateInputError:
            out["skipped"] += 1
            continue
        if cert is None:
            out["failures"].append({"trial": i, "points": config.to_text()})
            continue
        out["found"] += 1
        out["verified"] += cert.verify(config)
    return _finish(out)


def random_rainbow_classes(n: int, q: int, c: int, rng: random.Random) -> ColorConstraint:
    """``c`` disjoint classes of random sizes in ``1..2q-1`` among ``n`` points."""
    pool = list(range(n))
    rng.shuffle(pool)
    classes = []
    for _ in range(c):
        size = rng.randint(1, 2 * q - 1)
        classes.append(pool[:size])
        pool = pool[size:]
    return ColorConstraint.of(classes, "rainbow")


def rainbow_trials(q: int, d: int, c: int, trials: int, seed: int = DEFAULT_SEED) -> dict:
    """Rainbow search on ``q(d+c+1)`` points with ``c`` classes of size at most ``2q-1``."""
    n = q * (d + c + 1)
    out = _summary("rainbow", {"q": q, "d": d, "c": c}, seed, trials)
    for i in range(trials):
        rng = trial_rng(seed, i)
        config = random_configuration(n, d, rng)
        colors = random_rainbow_classes(n, q, c, rng)
        cert = tverberg_partition(config, q, colors)
        if cert is None:
            out["failures"].append({"trial": i, "points": config.to_text()})
            continue
        out["found"] += 1
        out["verified"] += cert.verify(config, colors=colors)
    return _finish(out)


def random_equal_classes(q: int, d: int, rng: random.Random) -> ColorConstraint:
    """Random partition of ``q(q+1)(d+1)`` points into classes of size ``q+1``."""
    n = q * (q + 1) * (d + 1)
    pool = list(range(n))
    rng.shuffle(pool)
    return ColorConstraint.of([pool[j:j + q + 1] for j in range(0, n, q + 1)], "equal")


def equal_trials(q: int, d: int, trials: int, seed: int = DEFAULT_SEED) -> dict:
    """Equal-coefficient search on ``q(q+1)(d+1)`` points."""
    n = q * (q + 1) * (d + 1)
    out = _summary("equal", {"q": q, "d": d}, seed, trials)
    for i in range(trials):
        rng = trial_rng(seed, i)
        config = random_configuration(n, d, rng)
        colors = random_equal_classes(q, d, rng)
        cert = equal_coefficient_search(config, q, colors)
        if cert is None:
            out["failures"].append({"trial": i, "points": config.to_text()})
            continue
        out["found"] += 1
        out["verified"] += cert.verify(config, colors=colors)
    return _finish(out)


def shift_sweep(p: int, q: int, a: int) -> dict:
    """Run the rotation search for ``I = {1..q}`` against every face of ``C_p^a``.

    Each returned shift is checked by direct set arithmetic, and a brute-force
    scan confirms it is the least valid one.
    """
    sigma = cyclic_stable_extendable(p, q, a)
    I = tuple(range(1, q + 1))
    out = {"version": 1, "kind": "shift", "params": {"p": p, "q": q, "a": a},
           "faces": 0, "verified": 0, "failures": []}
    for face in sigma.all_faces():
        m = shift_to_avoid(I, face, sigma, p)
        rotated = {(i - 1 + m) % p + 1 for i in I}
        least = next(s for s in range(p) if {(i - 1 + s) % p + 1 for i in I}.isdisjoint(face))
        out["faces"] += 1
        if rotated.isdisjoint(face) and m == least:
            out["verified"] += 1
        else:
            out["failures"].append({"face": list(face), "m": m})
    out["ok"] = out["verified"] == out["faces"] and not out["failures"]
    return out


TRIAL_KINDS: dict[str, Callable[..., dict]] = {
    "tverberg": tverberg_trials,
    "birch": birch_trials,
    "rainbow": rainbow_trials,
    "equal": equal_trials,
}
