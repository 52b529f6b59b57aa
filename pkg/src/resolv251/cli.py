"""Command-line front end.

    resolv251 build {Q|M|B|HB} [--ring zz|zz2|qq] [--out PATH]
    resolv251 verify SUITE [--complex X] [--seed N] [--trials N] [--format json|text]
    resolv251 report [--seed N] [--trials N] [--out PATH] [--timing]

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 I/O error.
JSON is the contract; ``--format text`` prints a short digest.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable, Dict, List

from . import certify, linkage, resolutions as res, specializations as smaps
from .complexes import SCHEMA, FreeComplex, Report, check_bigrading, check_complex
from .ring import QQ, ZZ, ZZ2, DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DOMAINS = {"zz": ZZ, "zz2": ZZ2, "qq": QQ}
COMPLEXES = ("Q", "M", "B", "HB")
SUITES = ("complex", "gradings", "mu", "phi", "psi", "linkage", "rigidity-identities", "exactness", "all")
DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def build_complex(name: str, domain: str = ZZ) -> FreeComplex:
    builders: Dict[str, Callable] = {
        "Q": lambda: res.build_Q_matrices(res.ring_Q(domain)),
        "M": lambda: res.build_M(res.ring_M(domain)),
        "B": lambda: res.build_B_matrices(res.ring_B(domain)),
        "HB": lambda: res.build_hyperplane_ACI_resolution(res.ring_HB(domain)),
    }
    if name not in builders:
        raise UsageError(f"unknown complex {name!r}; choose from {', '.join(COMPLEXES)}")
    return builders[name]()


def dumps(data) -> str:
    return json.dumps(data, indent=1, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# Suites


def _agreement(name: str, domain: str) -> Report:
    if name == "Q":
        a, b = res.build_Q_matrices(res.ring_Q(domain)), res.build_Q_coordinate_free(res.ring_Q(domain))
    else:
        a, b = res.build_B_matrices(res.ring_B(domain)), res.build_B_coordinate_free(res.ring_B(domain))
    for i in range(1, a.high + 1):
        for r, c, x in a.d(i).entries():
            if x != b.d(i)[r, c]:
                return Report("coordinate-free", False, {"complex": name},
                              {"matrix": f"d{i}", "row": r, "col": c, "matrices": str(x), "coordinate_free": str(b.d(i)[r, c])})
    n = sum(a.d(i).nrows * a.d(i).ncols for i in range(1, a.high + 1))
    return Report("coordinate-free", True, {"complex": name, "entries": n})


def suite_complex(cfg) -> List[Report]:
    out = []
    for name in cfg.selected:
        r = check_complex(build_complex(name, cfg.domain))
        r.details["complex"] = name
        out.append(r)
        if name in ("Q", "B"):
            out.append(_agreement(name, cfg.domain))
    if cfg.complex is None:
        for seq_len in (1, 2, 3, 4):
            R = res.ring_HB(cfg.domain)
            seq = list(R.gens())[:seq_len]
            r = check_complex(linkage.koszul_complex(seq))
            r.details["complex"] = f"Koszul({seq_len})"
            out.append(r)
    return out


def suite_gradings(cfg) -> List[Report]:
    out = []
    for name in cfg.selected:
        r = check_bigrading(build_complex(name, cfg.domain))
        r.details["complex"] = name
        out.append(r)
    return out


def suite_mu(cfg) -> List[Report]:
    domain = cfg.domain if cfg.ring_given else ZZ2
    return [smaps.verify_mu(domain)]


def suite_phi(cfg) -> List[Report]:
    return [smaps.verify_phi()]


def suite_psi(cfg) -> List[Report]:
    return [smaps.verify_psi(), linkage.verify_AltArg()]


def suite_linkage(cfg) -> List[Report]:
    return [linkage.verify_linkage()]


def suite_rigidity(cfg) -> List[Report]:
    return [linkage.verify_rigidity_identities()]


def suite_exactness(cfg) -> List[Report]:
    out = []
    names = cfg.selected if cfg.complex else ("Q", "M", "B")
    for name in names:
        C = build_complex(name, cfg.domain)
        er = certify.random_exactness_report(C, cfg.trials, cfg.seed)
        d = er.to_json()
        out.append(Report("exactness", er.passed, {"complex": name, **{k: v for k, v in d.items() if k not in ("check", "passed", "failure")}},
                          d.get("failure")))
        sr = certify.specialize_and_certify(C, 4, cfg.seed)
        sr.details["complex"] = name
        out.append(sr)
    return out


SUITE_FUNCS = {
    "complex": suite_complex,
    "gradings": suite_gradings,
    "mu": suite_mu,
    "phi": suite_phi,
    "psi": suite_psi,
    "linkage": suite_linkage,
    "rigidity-identities": suite_rigidity,
    "exactness": suite_exactness,
}


def run_suite(suite: str, cfg) -> Dict[str, List[Report]]:
    if suite == "all":
        return {s: f(cfg) for s, f in SUITE_FUNCS.items()}
    return {suite: SUITE_FUNCS[suite](cfg)}


def _results_json(results: Dict[str, List[Report]]) -> dict:
    return {
        s: {"passed": all(r.passed for r in reps), "checks": [r.to_json() for r in reps]}
        for s, reps in results.items()
    }


def _text_digest(results: Dict[str, List[Report]]) -> str:
    lines = []
    for s, reps in results.items():
        for r in reps:
            tag = r.details.get("complex", "")
            line = f"{'PASS' if r.passed else 'FAIL'}  {s:<20} {r.name}{' ' + tag if tag else ''}"
            if not r.passed and r.failure:
                line += f"  {json.dumps(r.failure)}"
            lines.append(line)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands


def _write(text: str, out: str = None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(str(exc)) from exc


def cmd_build(cfg) -> int:
    C = build_complex(cfg.name, cfg.domain)
    _write(dumps(C.to_json()), cfg.out)
    return EXIT_OK


def cmd_verify(cfg) -> int:
    if cfg.suite in ("mu", "all") and cfg.ring_given and cfg.domain == ZZ:
        raise UsageError("verify mu requires 2 to be a unit; use --ring zz2 or --ring qq")
    results = run_suite(cfg.suite, cfg)
    passed = all(r.passed for reps in results.values() for r in reps)
    if cfg.format == "text":
        text = _text_digest(results)
    else:
        text = dumps({
            "schema": SCHEMA, "command": "verify", "suite": cfg.suite,
            "seed": cfg.seed, "trials": cfg.trials, "passed": passed,
            "results": _results_json(results),
        })
    _write(text, cfg.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_report(cfg) -> int:
    complexes = {}
    for name in COMPLEXES:
        C = build_complex(name, cfg.domain)
        complexes[name] = {
            "ranks": list(C.betti()),
            "twists": [[list(t) for t in tw] for tw in reversed(C.twists)],
            "variables": C.ring.nvars,
            "domain": C.ring.domain,
        }
    verdicts, timing = {}, {}
    for s, f in SUITE_FUNCS.items():
        t0 = time.perf_counter()
        if s == "mu" and cfg.domain == ZZ:
            reps = f(_with(cfg, ring_given=False))
        else:
            reps = f(cfg)
        timing[s] = round(time.perf_counter() - t0, 3)
        verdicts[s] = all(r.passed for r in reps)
    data = {
        "schema": SCHEMA, "command": "report", "seed": cfg.seed, "trials": cfg.trials,
        "complexes": complexes, "verdicts": verdicts, "passed": all(verdicts.values()),
    }
    if cfg.timing:
        data["timing_seconds"] = timing
    if cfg.format == "text":
        lines = [f"{n}: ranks {v['ranks']}, {v['variables']} variables" for n, v in complexes.items()]
        lines += [f"{'PASS' if ok else 'FAIL'}  {s}" for s, ok in verdicts.items()]
        text = "\n".join(lines) + "\n"
    else:
        text = dumps(data)
    _write(text, cfg.out)
    return EXIT_OK if data["passed"] else EXIT_FAIL


def _with(cfg, **kw):
    ns = argparse.Namespace(**vars(cfg))
    for k, v in kw.items():
        setattr(ns, k, v)
    return ns


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=sorted(DOMAINS), default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", default=None)

    p = argparse.ArgumentParser(prog="resolv251", description="Build and verify (2,6,5,1) resolutions.")
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="write a complex as JSON")
    b.add_argument("name", metavar="{Q|M|B|HB}")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--complex", choices=COMPLEXES, default=None)
    r = sub.add_parser("report", parents=[common], help="consolidated JSON report")
    r.add_argument("--timing", action="store_true", help="include wall-clock timings (not deterministic)")
    return p


def _config(args) -> argparse.Namespace:
    cfg = args
    cfg.ring_given = args.ring is not None
    cfg.domain = DOMAINS[args.ring or "zz"]
    if args.seed is None:
        env = os.environ.get("RESOLV_SEED")
        try:
            cfg.seed = int(env) if env is not None else DEFAULT_SEED
        except ValueError:
            raise UsageError(f"RESOLV_SEED={env!r} is not an integer")
    if args.seed < 0:
        raise UsageError("seed must be non-negative")
    if args.trials < 1:
        raise UsageError("trials must be positive")
    cfg.complex = getattr(args, "complex", None)
    cfg.selected = (cfg.complex,) if cfg.complex else COMPLEXES
    return cfg


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        cmd = {"build": cmd_build, "verify": cmd_verify, "report": cmd_report}[cfg.command]
        return cmd(cfg)
    except UsageError as exc:
        print(f"resolv251: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"resolv251: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOError as exc:
        print(f"resolv251: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
