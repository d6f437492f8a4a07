"""Command line entry point.

Every command prints one JSON report.  The report's ``verdicts`` map holds
the exact checks the command ran; any false verdict exits with code 2.
Wall-clock timings sit under ``timings`` and are the only nondeterministic
part of a report.  Exit codes: 0 holds, 2 property violated, 3 input error
(including a coloring that is not Gallai), 4 scale cap, 5 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from math import comb

from . import coloring as col
from .asymptotics import check_facts_A, check_facts_C
from .coloring import Witness, check_witness, color_pairs, color_set, fmt_colors
from .constants import load_general, load_tight3
from .constructions import WeightGraph, coloring_from_weight_graph, optimal_weight_graph
from .discrepancy import PairWeights, find_heavy_set, heavy_set_from_deviation, variance_audit
from .errors import GallaiError, InputError, NotGallaiError, ScaleCapExceeded
from .exact import compare_log_squared
from .extraction import (extract_general, extract_tight3, extract_triple, extract_two_colored,
                         extract_weak_general, validate_certificate)
from .extraction.general import default_m
from .oracle import g_exact
from .products import flatten, parse_sexpr, random_gallai
from .ramsey import search_ramsey_coloring

SCALE_CAP = int(os.environ.get("GALLAI_SCALE_CAP", "20000"))


def _cap(n: int, what: str) -> None:
    if n > SCALE_CAP:
        raise ScaleCapExceeded(f"{what}: n={n} exceeds the scale cap {SCALE_CAP} (set GALLAI_SCALE_CAP)")


def _write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _big_int(text: str) -> int:
    """An integer written plainly or as 2^k."""
    text = text.strip()
    try:
        if text.startswith("2^"):
            return 2 ** int(text[2:])
        return int(text)
    except ValueError as exc:
        raise InputError(f"bad integer {text!r}") from exc


def _load(path: str):
    return col.load(path)


# commands -----------------------------------------------------------------------------------


def cmd_gen(a) -> tuple[dict, dict]:
    if a.tree:
        try:
            with open(a.tree) as fh:
                tree = parse_sexpr(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {a.tree!r}: {exc}") from exc
        _cap(tree.n, "gen")
        F = flatten(tree)
        source = {"tree": a.tree}
    else:
        if a.n is None or a.r is None:
            raise InputError("gen needs --tree or both --n and --r")
        if a.n < 1:
            raise InputError("--n must be positive")
        _cap(a.n, "gen")
        F = random_gallai(a.n, a.r, a.seed, max_parts=a.max_parts)
        source = {"n": a.n, "r": a.r, "seed": a.seed, "max_parts": a.max_parts, "generator": "PCG64"}
    tri = col.find_rainbow_triangle(F)
    text = col.encode(F)
    if a.out:
        _write_atomic(a.out, text)
    else:
        sys.stdout.write(text)
    report = {"source": source, "n": F.n, "r": F.r, "out": a.out,
              "rainbow_triangle": list(tri) if tri else None}
    return report, {"gallai": tri is None}


def cmd_check(a) -> tuple[dict, dict]:
    F = _load(a.file)
    tri = col.find_rainbow_triangle(F)
    report = {"n": F.n, "r": F.r, "verdict": "gallai" if tri is None else "not-gallai",
              "rainbow_triangle": list(tri) if tri else None}
    verdicts = {}
    if a.vertices is not None:
        if a.colors is None:
            raise InputError("--vertices needs --colors")
        W = Witness(tuple(_int_list(a.vertices)), color_set(_int_list(a.colors), F.r))
        ok = check_witness(F, W)
        report["witness"] = {**W.to_json(), "valid": ok}
        verdicts["witness"] = ok
    if tri is not None:
        _emit(a, "check", report, verdicts, {})
        raise NotGallaiError(triangle=tri)
    return report, verdicts


def cmd_oracle(a) -> tuple[dict, dict]:
    F = _load(a.file)
    S = color_set(_int_list(a.colors), F.r)
    res = g_exact(F, S, cap=a.cap)
    return res.to_json(), {"witness": check_witness(F, res.witness)}


def cmd_extract(a) -> tuple[dict, dict]:
    F = _load(a.file)
    n = F.n
    if a.alg == "cograph":
        trace: list = []
        W = extract_two_colored(F, trace=trace)
        return ({"witness": W.to_json(), "trace": trace},
                {"valid": check_witness(F, W), "size_cubed_at_least_n": W.size ** 3 >= n})
    if a.alg == "triple":
        fam = extract_triple(F)
        return ({"witnesses": fam.to_json(), "product": fam.product()},
                {"valid": fam.validate(F), "product_at_least_n": fam.product() >= n})
    if a.alg == "weak":
        s = _need_s(a, F.r)
        fam = extract_weak_general(F, s)
        verdicts = {"valid": fam.validate(F)}
        if 2 <= s < F.r:
            verdicts["product_bound"] = fam.product() >= n ** comb(F.r - 2, s - 2)
            verdicts["best_bound"] = fam.best().size ** comb(F.r, 2) >= n ** comb(s, 2)
        return {"witnesses": fam.to_json(), "product": fam.product(), "meta": fam.meta}, verdicts
    if a.alg == "tight3":
        k = load_tight3(a.constants)
        res = extract_tight3(F, k, _big_int(a.m) if a.m else None)
        out = res.to_json()
        out["constants"] = k.to_json()
        return out, {"valid": res.family.validate(F), "product_at_least_n": res.product >= n}
    # general
    s = _need_s(a, F.r)
    k = load_general(a.constants, F.r, s)
    m = _big_int(a.m) if a.m else default_m(n, k)
    res = extract_general(F, s, k, m)
    rep = validate_certificate(F, res.family, res.certificate, k, m)
    out = res.to_json()
    out["constants"] = k.to_json()
    out["validation"] = rep.to_json()
    verdicts = {f"property_{i}": i not in rep.violated for i in range(1, 6)}
    verdicts["well_formed"] = 0 not in rep.violated
    return out, verdicts


def _need_s(a, r: int) -> int:
    if a.s is None:
        raise InputError(f"--alg {a.alg} needs --s")
    return a.s


def cmd_construct(a) -> tuple[dict, dict]:
    ow = optimal_weight_graph(a.r, a.s, _big_int(a.m))
    n = int(ow.graph.m)
    if a.out:
        _cap(n, "construct")
    con = coloring_from_weight_graph(ow.graph, seed=a.seed, budget=a.budget)
    rows = con.audit(a.s)
    if a.out:
        _write_atomic(a.out, col.encode(con.coloring()))
    report = {"n": n, "weights": ow.to_json(), "factors": [f.to_json() for f in con.factors],
              "g": rows, "out": a.out}
    return report, {"g_within_bound": all(row["holds"] for row in rows.values())}


def cmd_facts(a) -> tuple[dict, dict]:
    if a.appendix == "A":
        k = load_tight3(a.constants)
        log_ms = [_big_int(x) for x in a.logm.split(",")] if a.logm else None
        reports = check_facts_A(k, log_ms, seed=a.seed)
        const = k.to_json()
    else:
        k = load_general(a.constants, a.r, a.s)
        logm = _big_int(a.logm or "2^35")
        if logm < 2 or logm & (logm - 1):
            raise InputError("--logm for appendix C must be a power of two 2^k")
        reports = check_facts_C(k, logm.bit_length() - 1, threshold=not a.no_threshold,
                                max_loglog=a.max_loglog)
        const = k.to_json()
    return ({"appendix": a.appendix, "constants": const, "facts": [r.to_json() for r in reports]},
            {r.fact: r.holds for r in reports})


def cmd_discrepancy(a) -> tuple[dict, dict]:
    pw = PairWeights.load(a.weights)
    report = {"weights": pw.to_json(), "total": str(pw.total)}
    verdicts = {}
    if a.s is not None:
        hs = find_heavy_set(pw, a.s)
        report["heavy_set"] = hs.to_json()
        verdicts["heavy_set"] = hs.kind == "count" or hs.margin >= 0
    try:
        dev = heavy_set_from_deviation(pw)
        report["deviation"] = dev.to_json()
        verdicts["deviation"] = dev.margin >= 0
    except InputError:
        report["deviation"] = None
    var = variance_audit(pw)
    report["second_moment"] = var.to_json()
    verdicts["second_moment"] = var.holds
    return report, verdicts


def cmd_bench(a) -> tuple[dict, dict]:
    if a.family != "triple-product":
        raise InputError(f"unknown bench family {a.family!r}")
    rows = []
    verdicts = {}
    for t in _int_list(a.t):
        if t < 2:
            raise InputError("t must be at least 2")
        t0 = time.perf_counter()
        con = coloring_from_weight_graph(WeightGraph(3, {P: t for P in color_pairs(3)}), seed=a.seed,
                                         budget=a.budget)
        g = {fmt_colors(P): con.g(P) for P in color_pairs(3)}
        W = extract_two_colored(con.tree)
        # g <= t (2 log2 t)^2  <=>  g / (4t) <= log2(t)^2
        upper = all(compare_log_squared(Fraction(v, 4 * t), t) <= 0 for v in g.values())
        rows.append({"t": t, "n": con.n, "g": g, "best_g": max(g.values()),
                     "bound": f"{t}*(2*log2({t}))^2", "extracted": W.size,
                     "factor_clique_bounds": [f.achieved_bound for f in con.factors],
                     "seconds": round(time.perf_counter() - t0, 4)})
        verdicts[f"t={t}:upper"] = upper
        verdicts[f"t={t}:lower"] = W.size >= t
    timings = {f"t={row['t']}": row.pop("seconds") for row in rows}
    return {"family": a.family, "rows": rows, "_timings": timings}, verdicts


def cmd_ramsey_search(a) -> tuple[dict, dict]:
    rc = search_ramsey_coloring(a.t, a.bound, a.seed, a.budget)
    if a.out:
        _write_atomic(a.out, col.encode(rc.coloring))
    report = {"t": a.t, "bound": a.bound, "seed": a.seed, "attempts": rc.attempts,
              "red_clique": rc.red_clique, "blue_clique": rc.blue_clique, "out": a.out}
    return report, {"within_bound": rc.clique_bound <= a.bound}


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "oracle": cmd_oracle,
    "extract": cmd_extract,
    "construct": cmd_construct,
    "facts": cmd_facts,
    "discrepancy": cmd_discrepancy,
    "bench": cmd_bench,
    "ramsey-search": cmd_ramsey_search,
}


# plumbing -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gallai", description="Gallai colorings: generate, check, extract, construct.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--no-timings", action="store_true", help="omit the timings section")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a Gallai coloring")
    g.add_argument("--n", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-parts", type=int, default=8)
    g.add_argument("--tree", help="product tree s-expression file")
    g.add_argument("--out", help=".gal output path (default: stdout, report on stderr)")

    c = sub.add_parser("check", help="rainbow triangle check, optionally a witness")
    c.add_argument("--file", required=True)
    c.add_argument("--vertices")
    c.add_argument("--colors")

    o = sub.add_parser("oracle", help="exact g(F, S)")
    o.add_argument("--file", required=True)
    o.add_argument("--colors", required=True)
    o.add_argument("--cap", type=int)

    e = sub.add_parser("extract", help="run an extraction algorithm")
    e.add_argument("--alg", choices=["cograph", "triple", "weak", "tight3", "general"], required=True)
    e.add_argument("--file", required=True)
    e.add_argument("--s", type=int)
    e.add_argument("--m", help="scale parameter m (integer or 2^k)")
    e.add_argument("--constants", default="desk", help="paper (full-size), desk, or a JSON file")

    k = sub.add_parser("construct", help="weight-graph product construction")
    k.add_argument("--r", type=int, required=True)
    k.add_argument("--s", type=int, required=True)
    k.add_argument("--m", required=True, help="integer or 2^k")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--budget", type=int, default=1000)
    k.add_argument("--out", help=".gal output path")

    f = sub.add_parser("facts", help="exact checks of the facts about f")
    f.add_argument("--appendix", choices=["A", "C"], required=True)
    f.add_argument("--constants", default="paper")
    f.add_argument("--logm", help="A: comma list of log m values; C: log m = 2^k")
    f.add_argument("--r", type=int, default=3)
    f.add_argument("--s", type=int, default=2)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-loglog", type=int, default=192)
    f.add_argument("--no-threshold", action="store_true")

    d = sub.add_parser("discrepancy", help="heavy sets and the second-moment audit")
    d.add_argument("--weights", required=True, help='JSON {"r": r, "weights": {"1,2": "3/2", ...}}')
    d.add_argument("--s", type=int)

    b = sub.add_parser("bench", help="scaling table on constructed instances")
    b.add_argument("--family", default="triple-product")
    b.add_argument("--t", default="8,16,32")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--budget", type=int, default=1000)

    rs = sub.add_parser("ramsey-search", help="random 2-coloring with small monochromatic cliques")
    rs.add_argument("t", type=int)
    rs.add_argument("bound", type=int)
    rs.add_argument("seed", type=int)
    rs.add_argument("--budget", type=int, default=1000)
    rs.add_argument("--out")
    return p


def _config(a) -> dict:
    return {k: v for k, v in sorted(vars(a).items()) if k not in ("format", "report", "no_timings")}


def _text(obj, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_text(v, f"{prefix}{k}."))
        return out or [f"{prefix[:-1]} = {{}}"]
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        out = []
        for i, v in enumerate(obj):
            out.extend(_text(v, f"{prefix}{i}."))
        return out
    return [f"{prefix[:-1]} = {json.dumps(obj)}"]


def _emit(a, command: str, result: dict, verdicts: dict, timings: dict) -> None:
    report = {"command": command, "config": _config(a), "result": result,
              "verdicts": verdicts, "holds": all(verdicts.values())}
    if not a.no_timings:
        report["timings"] = timings
    if a.format == "json":
        text = json.dumps(report, indent=2, default=str) + "\n"
    else:
        text = "\n".join(_text(report)) + "\n"
    if a.report:
        _write_atomic(a.report, text)
    elif command == "gen" and not a.out:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        result, verdicts = COMMANDS[a.command](a)
    except GallaiError as exc:
        if not isinstance(exc, NotGallaiError) or a.command != "check":
            err = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
            sys.stderr.write(json.dumps(err) + "\n")
        return exc.exit_code
    timings = result.pop("_timings", {})
    timings["wall_seconds"] = round(time.perf_counter() - t0, 4)
    _emit(a, a.command, result, verdicts, timings)
    return 0 if all(verdicts.values()) else 2


if __name__ == "__main__":
    sys.exit(main())
