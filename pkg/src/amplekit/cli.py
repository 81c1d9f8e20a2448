"""Command-line entry point.

Exit codes: 0 holds / success, 1 property fails or refuted, 2 budget
exhausted or undecided, 3 input error. Machine output goes to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as cons
from .checkers import CONE, conicity_number, is_r_ample, is_r_conic
from .errors import AmplekitError, TooLarge
from .homology import connectivity_certificate, homology
from .io import ComplexFile, format_json, format_text, read_complex, write_complex
from .medial import (MedialRegimeConfig, default_max_dim, parse_prob, parse_property,
                     rows_to_csv, run_experiment)
from .starring import MoveLog, check_move_log, replay_theorem3, replay_theorem4

HOLDS, FAILS, BUDGET, INPUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load(path: str):
    try:
        return read_complex(path).complex
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc


GENERATORS = {
    "simplex": (lambda a: cons.simplex_complex(a.k), "simplex({k})"),
    "cross-polytope": (lambda a: cons.cross_polytope_sphere(a.n), "cross-polytope({n})"),
    "csaszar": (lambda a: cons.csaszar(), "csaszar-torus"),
    "band-sphere": (lambda a: cons.band_sphere(a.n, a.m), "band-sphere({n},{m})"),
    "doubled-sphere": (lambda a: cons.doubled_sphere(a.n, a.k), "doubled-sphere({n},{k})"),
    "counterexample": (lambda a: cons.counterexample_stage(a.n, a.stages),
                       "counterexample({n},{stages})"),
}


def cmd_gen(a) -> int:
    build, label = GENERATORS[a.family]
    cf = ComplexFile(build(a), label.format(**vars(a)))
    fmt = a.format or ("json" if a.output and a.output.endswith(".json") else "text")
    if a.output:
        write_complex(cf, a.output, fmt)
    else:
        sys.stdout.write(format_json(cf) if fmt == "json" else format_text(cf))
    return HOLDS


def cmd_check(a) -> int:
    K = _load(a.file)
    if a.property == "conicity":
        r = conicity_number(K, a.budget)
        _emit({"property": "conicity", "conicity_number": "cone" if r == CONE else r})
        return HOLDS
    if a.r is None:
        raise InputError("-r is required")
    if a.property == "conic":
        report = is_r_conic(K, a.r, a.budget)
    else:
        if a.r < 1:
            raise InputError("ampleness needs r >= 1")
        report = is_r_ample(K, a.r, external_only=not a.internal,
                            include_empty=not a.no_empty, budget=a.budget)
    _emit(report.to_dict())
    return HOLDS if report.holds else FAILS


def cmd_homology(a) -> int:
    K = _load(a.file)
    H = homology(K, a.max_degree)
    R = homology(K, a.max_degree, reduced=True)
    _emit({"betti": list(H.betti), "torsion": [list(t) for t in H.torsion],
           "reduced_betti": list(R.betti), "reduced_torsion": [list(t) for t in R.torsion],
           "euler_characteristic": K.euler_characteristic, "f_vector": list(K.f_vector)})
    return HOLDS


def cmd_connectivity(a) -> int:
    cert = connectivity_certificate(_load(a.file), a.d, a.budget)
    _emit({"d": a.d} | cert.to_dict())
    return {"Certified": HOLDS, "Refuted": FAILS}.get(cert.status, BUDGET)


def cmd_star(a) -> int:
    if a.action == "verify":
        try:
            log = MoveLog.from_json(Path(a.log).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read {a.log}: {exc.strerror}") from exc
        except (ValueError, KeyError, TypeError) as exc:
            _emit({"verified": False, "reason": f"malformed log: {exc}"})
            return FAILS
        try:
            check_move_log(log)
        except AmplekitError as exc:
            _emit({"verified": False, "reason": str(exc)})
            return FAILS
        _emit({"verified": True, "moves": len(log.moves)})
        return HOLDS
    if a.reduction == "thm3":
        if a.m is None:
            raise InputError("thm3 needs -m")
        log = replay_theorem3(a.n, a.m)
    else:
        if a.k is None:
            raise InputError("thm4 needs -k")
        log = replay_theorem4(a.n, a.k)
    if a.log:
        Path(a.log).write_text(log.to_json(), encoding="utf-8")
    _emit({"kind": log.kind, "params": log.params, "moves": len(log.moves),
           "max_disk_vertices": max((len(m.disk.vertices) for m in log.moves), default=0),
           "final": log.final.get("target")})
    return HOLDS


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


def cmd_random(a) -> int:
    if a.seed is None:
        raise InputError("random experiment requires an explicit --seed")
    props = [parse_property(p) for p in a.property.split(",") if p.strip()]
    if not props:
        raise InputError("no properties given")
    max_dim = a.max_dim if a.max_dim is not None else default_max_dim(props)
    n_list = _int_list(a.n_list)
    config = MedialRegimeConfig(max(n_list, default=0), max_dim, parse_prob(a.prob), a.seed)
    rows = run_experiment(config, n_list, props, a.samples, a.jobs)
    text = rows_to_csv(rows)
    print(f"max_dim={max_dim}", file=sys.stderr)
    if a.output:
        Path(a.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return HOLDS


def cmd_convert(a) -> int:
    try:
        cf = read_complex(a.input)
    except OSError as exc:
        raise InputError(f"cannot read {a.input}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse {a.input}: {exc}") from exc
    write_complex(cf, a.output, a.to)
    return HOLDS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="amplekit", description="Ample and conic simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named complex")
    g.add_argument("family", choices=sorted(GENERATORS))
    g.add_argument("-n", type=int, default=1)
    g.add_argument("-m", type=int, default=0)
    g.add_argument("-k", type=int, default=0)
    g.add_argument("--stages", type=int, default=1)
    g.add_argument("-o", "--output")
    g.add_argument("--format", choices=["text", "json"])
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="decide r-conicity / r-ampleness")
    c.add_argument("property", choices=["conic", "ample", "conicity"])
    c.add_argument("file")
    c.add_argument("-r", type=int)
    c.add_argument("--internal", action="store_true",
                   help="ampleness: let vertices of U serve as witnesses")
    c.add_argument("--no-empty", action="store_true",
                   help="ampleness: skip the empty subcomplex")
    c.add_argument("--budget", type=int, help="maximum number of vertex subsets")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("homology", help="integral homology")
    h.add_argument("file")
    h.add_argument("--max-degree", type=int)
    h.set_defaults(func=cmd_homology)

    k = sub.add_parser("connectivity", help="d-connectivity certificate")
    k.add_argument("file")
    k.add_argument("-d", type=int, required=True)
    k.add_argument("--budget", type=int, default=10_000)
    k.set_defaults(func=cmd_connectivity)

    s = sub.add_parser("star", help="replay or verify starring reductions")
    ssub = s.add_subparsers(dest="action", required=True)
    r = ssub.add_parser("replay", help="replay a reduction and write its move log")
    r.add_argument("reduction", choices=["thm3", "thm4"])
    r.add_argument("-n", type=int, required=True)
    r.add_argument("-m", type=int)
    r.add_argument("-k", type=int)
    r.add_argument("--log")
    v = ssub.add_parser("verify", help="independently re-check a move log")
    v.add_argument("log")
    s.set_defaults(func=cmd_star)

    rnd = sub.add_parser("random", help="medial-regime Monte Carlo")
    rsub = rnd.add_subparsers(dest="action", required=True)
    e = rsub.add_parser("experiment", help="estimate property probabilities")
    e.add_argument("--n-list", required=True)
    e.add_argument("--prob", default="const:0.5")
    e.add_argument("--max-dim", type=int)
    e.add_argument("--samples", type=int, default=100)
    e.add_argument("--seed", type=int)
    e.add_argument("--property", required=True)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("-o", "--output")
    rnd.set_defaults(func=cmd_random)

    cv = sub.add_parser("convert", help="convert between text and JSON")
    cv.add_argument("input")
    cv.add_argument("output")
    cv.add_argument("--to", choices=["text", "json"])
    cv.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"amplekit: budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (InputError, AmplekitError, ValueError) as exc:
        print(f"amplekit: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
