"""Command-line front end.

File formats
------------
complex JSON
    ``{"version": 1, "universe": [..], "maximal_faces": [[..], ..]}``; an
    empty ``maximal_faces`` list is the void complex, ``[[]]`` the complex
    holding only the empty face.
points text
    one point per line, whitespace separated rational coordinates
    (``3``, ``-1/2``, ``0.25``); ``#`` starts a comment. Points are indexed
    from 0 in order of appearance.
report CSV
    columns ``params..., values..., expected, pass, witness_ref``; the
    parameter and value columns depend on the check and are named in the
    header row.

Every JSON artifact carries a ``version`` field. Exit status is 0 on success,
1 when a check fails or a search finds nothing, 2 on usage errors and
malformed or degenerate input.

``--manifest PATH`` records the invocation (arguments, input hashes, seed,
tool version, output hash); ``replay PATH`` reruns it and compares the output
byte for byte.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .cache import CACHE_ENV, BettiCache, homology_function
from .certify import CHECKS, cycle_independence_pattern, sphere_pattern
from .complex import SimplicialComplex, simplex_boundary, translate
from .errors import DegenerateInputError, DomainError, MalformedInputError
from .families import (
    cyclic_stable_extendable,
    linear_stable_extendable,
    prefix_union,
    truncated_complex,
    union_step_complex,
)
from .geometry import parse_points
from .homology import verdict_from_table
from .planner import plan
from .trials import DEFAULT_SEED, TRIAL_KINDS, shift_sweep
from .tverberg import (
    ColorConstraint,
    birch_certificate,
    no_tverberg_partition,
    optimality_witness,
    shift_to_avoid,
    sigma_constrained_cover,
    tverberg_partition,
)

MANIFEST_VERSION = 1


class Outcome:
    """Text produced by a subcommand plus its exit status and input files."""

    def __init__(self, text: str, code: int = 0, inputs=()):
        self.text = text if text.endswith("\n") else text + "\n"
        self.code = code
        self.inputs = list(inputs)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise MalformedInputError(f"expected comma-separated integers, got {text!r}") from None


def _classes(text: str) -> list[tuple[int, ...]]:
    return [_int_list(chunk) for chunk in text.split(";") if chunk.strip()]


def _cache(args) -> BettiCache | None:
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache_dir", None):
        return BettiCache(args.cache_dir)
    return BettiCache.from_env()


# -- subcommands -------------------------------------------------------------------


def cmd_build(args) -> Outcome:
    fam = args.family
    need = {
        "path": ("r",), "cycle": ("p",), "truncated": ("a", "k"),
        "union-step": ("a", "k"), "prefix-union": ("a", "k"), "sphere": ("n",),
    }[fam]
    missing = [f"--{n}" for n in need if getattr(args, n) is None]
    if missing:
        raise DomainError(f"{fam} needs {', '.join(missing)}")
    a = args.a if args.a is not None else 0
    if fam == "path":
        K = linear_stable_extendable(args.r, args.q, a)
    elif fam == "cycle":
        K = cyclic_stable_extendable(args.p, args.q, a)
    elif fam == "truncated":
        K = truncated_complex(args.q, args.a, args.k)
    elif fam == "union-step":
        K = union_step_complex(args.q, args.a, args.k).union
    elif fam == "prefix-union":
        K = prefix_union(args.q, args.a, args.k)
    else:
        K = simplex_boundary(range(1, args.n + 1))
    if args.shift:
        K = translate(K, args.shift)
    return Outcome(_dump(K.to_dict()))


def cmd_homology(args) -> Outcome:
    K = SimplicialComplex.from_json(_read(args.complex))
    if K.is_void:
        raise DomainError("the void complex has no chain complex")
    table = homology_function(_cache(args), args.coeff)(K)
    out = table.to_dict()
    v = verdict_from_table(table)
    out["connectivity"] = "acyclic" if v.acyclic else v.connectivity
    return Outcome(_dump(out), inputs=[args.complex])


def cmd_certify(args) -> Outcome:
    hom = homology_function(_cache(args), "int")
    name = args.check
    qs = tuple(args.q) if args.q else None
    kw: dict = {}
    if name in ("path-connectivity", "truncated-connectivity", "union-step"):
        kw = {"qs": qs or (2, 3, 4), "r_max": args.r_max or 18, "homology": hom}
    elif name == "cyclic-decomposition":
        kw = {"qs": qs or (2, 3, 4, 5), "p_max": args.p_max or 23, "prime_only": not args.all_p}
    elif name == "cyclic-induction":
        kw = {"qs": qs or (2, 3, 4), "p_max": args.p_max or 23, "prime_only": not args.all_p, "homology": hom}
    elif name == "cyclic-connectivity":
        kw = {"qs": qs or (2, 3, 4, 5), "p_max": args.p_max or 23, "a_max": args.a_max, "homology": hom}
    elif name == "cycle-independence":
        lo, hi = args.r_min or 4, args.r_max or 15
        pattern = cycle_independence_pattern if args.pattern == "exact" else sphere_pattern
        kw = {"r_values": range(lo, hi + 1), "pattern": pattern, "homology": hom}
    elif name == "disk-bundle":
        kw = {"homology": hom}
    report = CHECKS[name](**kw)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    return Outcome(text, 0 if report.all_passed else 1)


def _points(path: str):
    return parse_points(_read(path))


def cmd_tverberg(args) -> Outcome:
    config = _points(args.points)
    colors = None
    if args.rainbow is not None:
        colors = ColorConstraint.of(_classes(args.rainbow), "rainbow")
    elif args.equal is not None:
        colors = ColorConstraint.of(_classes(args.equal), "equal")
    cert = tverberg_partition(config, args.q, colors)
    ok = cert is not None and cert.verify(config, colors=colors)
    out = {"version": 1, "q": args.q, "found": cert is not None, "verified": ok,
           "certificate": cert.to_dict() if cert else None}
    return Outcome(_dump(out), 0 if ok else 1, [args.points])


def cmd_cover(args) -> Outcome:
    config = _points(args.points)
    sigma = cyclic_stable_extendable(args.p, args.q, args.a)
    cover = sigma_constrained_cover(config, sigma, args.p)
    ok = cover is not None and cover.verify(config, sigma)
    out = {"version": 1, "p": args.p, "q": args.q, "a": args.a, "found": cover is not None,
           "verified": ok}
    if cover:
        out["faces"] = [list(f) for f in cover.faces]
        out["labels"] = [list(lab) for lab in cover.labels]
        out["point"] = [str(c) for c in cover.certificate.point]
    return Outcome(_dump(out), 0 if ok else 1, [args.points])


def cmd_birch(args) -> Outcome:
    config = _points(args.points)
    cert = birch_certificate(config, args.q)
    ok = cert is not None and cert.verify(config)
    out = {"version": 1, "q": args.q, "found": cert is not None, "verified": ok,
           "certificate": cert.to_dict() if cert else None}
    return Outcome(_dump(out), 0 if ok else 1, [args.points])


def cmd_witness(args) -> Outcome:
    config = optimality_witness(args.q, args.d, seed=args.seed)
    ok, _ = no_tverberg_partition(config, args.q)
    out = {"version": 1, "q": args.q, "d": args.d, "seed": args.seed, "n": len(config),
           "points": [[str(c) for c in pt] for pt in config.points], "no_partition": ok}
    return Outcome(_dump(out), 0 if ok else 1)


def cmd_plan(args) -> Outcome:
    return Outcome(_dump(plan(args.q, args.d, args.c).to_dict()))


def cmd_shift(args) -> Outcome:
    if args.sweep:
        out = shift_sweep(args.p, args.q, args.a)
        return Outcome(_dump(out), 0 if out["ok"] else 1)
    sigma = cyclic_stable_extendable(args.p, args.q, args.a)
    I = _int_list(args.independent) if args.independent else tuple(range(1, args.q + 1))
    face = _int_list(args.face or "")
    m = shift_to_avoid(I, face, sigma, args.p)
    rotated = sorted((i - 1 + m) % args.p + 1 for i in I)
    out = {"version": 1, "p": args.p, "q": args.q, "a": args.a, "independent": list(I),
           "face": list(face), "m": m, "rotated": rotated}
    return Outcome(_dump(out))


def cmd_trials(args) -> Outcome:
    fn = TRIAL_KINDS[args.kind]
    if args.kind == "birch":
        out = fn(args.q, args.count, args.seed)
    elif args.kind == "rainbow":
        out = fn(args.q, args.d, args.c, args.count, args.seed)
    else:
        out = fn(args.q, args.d, args.count, args.seed)
    return Outcome(_dump(out), 0 if out["ok"] else 1)


def cmd_replay(args) -> Outcome:
    manifest = json.loads(_read(args.manifest))
    if manifest.get("version") != MANIFEST_VERSION:
        raise MalformedInputError("unsupported manifest version")
    changed = [p for p, h in manifest.get("inputs", {}).items() if _sha256_file(p) != h]
    outcome = run(manifest["argv"])
    digest = hashlib.sha256(outcome.text.encode()).hexdigest()
    same = digest == manifest["output_sha256"] and outcome.code == manifest["exit_code"]
    out = {"version": 1, "match": same and not changed, "output_sha256": digest,
           "expected_sha256": manifest["output_sha256"], "changed_inputs": changed}
    return Outcome(_dump(out), 0 if out["match"] else 1)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the primary output here instead of stdout")
    common.add_argument("--manifest", help="write a run manifest to this path")
    cached = argparse.ArgumentParser(add_help=False)
    cached.add_argument("--cache-dir", help=f"Betti table cache (default: ${CACHE_ENV})")
    cached.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="stabletverberg", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="write a complex as JSON")
    p.add_argument("family", choices=["path", "cycle", "truncated", "union-step", "prefix-union", "sphere"])
    p.add_argument("--q", type=int, default=2)
    for name in ("a", "r", "p", "k", "n"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--shift", type=int, default=0, help="translate all vertices")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", parents=[common, cached], help="reduced homology of a complex")
    p.add_argument("complex", help="complex JSON file or - for stdin")
    p.add_argument("--coeff", default="int", help="int, q or gf:P")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("certify", parents=[common, cached], help="run a check over a parameter grid")
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--q", type=int, action="append", help="gap parameter; repeatable")
    p.add_argument("--r-min", type=int)
    p.add_argument("--r-max", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--a-max", type=int)
    p.add_argument("--all-p", action="store_true", help="include composite cycle lengths")
    p.add_argument("--pattern", choices=["stated", "exact"], default="stated",
                   help="sphere pattern for cycle-independence")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("tverberg", parents=[common], help="search a Tverberg partition")
    p.add_argument("points")
    p.add_argument("-q", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--rainbow", help="colour classes, e.g. '0,1;2,3'")
    g.add_argument("--equal", help="classes for equal coefficient mass")
    p.set_defaults(func=cmd_tverberg)

    p = sub.add_parser("cover", parents=[common], help="faces labelled by a stable complex with a common point")
    p.add_argument("points")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("birch", parents=[common], help="disjoint triangles around a common point")
    p.add_argument("points")
    p.add_argument("-q", type=int, required=True)
    p.set_defaults(func=cmd_birch)

    p = sub.add_parser("witness", parents=[common], help="points without a q-part partition")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("plan", parents=[common], help="route q and choose the prime")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--c", type=int, default=4)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("shift", parents=[common], help="rotate an independent set off a face")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--independent", help="comma-separated vertices (default 1..q)")
    p.add_argument("--face", help="comma-separated vertices (default empty)")
    p.add_argument("--sweep", action="store_true", help="check every face of the complex")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("trials", parents=[common], help="seeded random trials")
    p.add_argument("kind", choices=sorted(TRIAL_KINDS))
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-d", type=int, default=1)
    p.add_argument("--c", type=int, default=1, help="number of colour classes (rainbow)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_trials)

    p = sub.add_parser("replay", parents=[common], help="rerun a manifest and compare outputs")
    p.add_argument("manifest_file")
    p.set_defaults(func=lambda a: cmd_replay(argparse.Namespace(manifest=a.manifest_file)))
    return parser


def _strip_output_flags(argv: list[str]) -> list[str]:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("--out", "--manifest"):
            skip = True
            continue
        if tok.startswith(("--out=", "--manifest=")):
            continue
        out.append(tok)
    return out


def _sha256_file(path: str) -> str | None:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return None


def run(argv: list[str]) -> Outcome:
    """Parse and execute without touching output files."""
    args = build_parser().parse_args(argv)
    return args.func(args)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outcome = args.func(args)
    except (MalformedInputError, DomainError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(outcome.text)
    else:
        sys.stdout.write(outcome.text)
    if args.manifest:
        core = _strip_output_flags(argv)
        manifest = {
            "version": MANIFEST_VERSION,
            "tool": "stabletverberg",
            "tool_version": __version__,
            "subcommand": args.command,
            "argv": core,
            "parameters": {k: v for k, v in sorted(vars(args).items())
                           if k not in ("func", "out", "manifest")},
            "seed": getattr(args, "seed", None),
            "inputs": {p: _sha256_file(p) for p in outcome.inputs if p != "-"},
            "output_sha256": hashlib.sha256(outcome.text.encode()).hexdigest(),
            "exit_code": outcome.code,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
        Path(args.manifest).write_text(_dump(manifest))
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
