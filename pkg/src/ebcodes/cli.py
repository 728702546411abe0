"""ebcodes command line: build, analyze and verify codes and point sets."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import codes as cd
from . import geometry as geo
from . import verify as vf
from .galois import FieldError, field_create, poly_str

SCHEMA_VERSION = vf.SCHEMA_VERSION


class UsageError(Exception):
    pass


def _q_arg(s: str) -> int:
    try:
        q = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--q must be an integer power of 2, got {s!r}")
    if q < 2 or q & (q - 1):
        raise argparse.ArgumentTypeError(f"--q must be a power of 2, got {q}")
    return q


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _check_q(q: int | None, lo: int, hi: int, what: str) -> int:
    if q is None:
        raise UsageError(f"{what} needs --q")
    m = q.bit_length() - 1
    if not lo <= m <= hi:
        raise UsageError(f"{what} supports q = 2^{lo} .. 2^{hi}, got q = {q}")
    return q


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_q_arg, help="field order 2^m")
    common.add_argument("--t", type=_q_arg, help="arc parameter t (a power of 2 dividing into q)")
    common.add_argument("--gamma-exp", type=int, dest="gamma_exp", help="exponent e selecting gamma = g^e")
    common.add_argument("--in", dest="input", help="input JSON file ('-' for stdin)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--budget", type=_positive, help="max codewords to enumerate (env EBCODES_BUDGET)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for sweeps")
    common.add_argument("--format", choices=["json", "table"], default="json")

    p = argparse.ArgumentParser(prog="ebcodes", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("field", parents=[common], help="describe GF(q)")
    b = sub.add_parser("build", parents=[common], help="construct a code and its point set")
    b.add_argument("object", choices=["hyperoval", "denniston", "ovoid"])
    sub.add_parser("analyze", parents=[common], help="weight profile of a code JSON")
    sub.add_parser("geometry-check", parents=[common], help="incidence checks on a code or point set")
    v = sub.add_parser("verify", parents=[common], help="run an exhaustive verification sweep")
    v.add_argument("claim", choices=sorted(vf.CLAIMS))
    return p


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("EBCODES_BUDGET")
    if env:
        try:
            b = int(env)
        except ValueError:
            raise UsageError(f"EBCODES_BUDGET must be an integer, got {env!r}")
        if b < 1:
            raise UsageError("EBCODES_BUDGET must be positive")
        return b
    return cd.DEFAULT_BUDGET


def _load(args) -> dict:
    if not args.input:
        raise UsageError(f"{args.command} needs --in FILE")
    try:
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.input} is not valid JSON: {e.msg} at line {e.lineno}")


def _code_from_doc(doc: dict) -> cd.LinearCode | None:
    if "code" in doc:
        doc = doc["code"]
    if "gen" not in doc:
        return None
    try:
        return cd.LinearCode.from_json(doc)
    except (KeyError, TypeError, ValueError, FieldError) as e:
        raise UsageError(f"malformed code JSON: {e}")


def _points_from_doc(doc: dict) -> geo.ProjPointSet:
    if "points" in doc and isinstance(doc["points"], dict):
        doc = doc["points"]
    try:
        return geo.ProjPointSet.from_json(doc)
    except (KeyError, TypeError, ValueError, FieldError) as e:
        raise UsageError(f"malformed point-set JSON: {e}")


# ----------------------------------------------------------------------
# Commands; each returns (document, exit code)
# ----------------------------------------------------------------------

def cmd_field(args):
    q = _check_q(args.q, 1, 8, "field")
    f = field_create(q.bit_length() - 1)
    g = f.primitive
    doc = {
        "schema_version": SCHEMA_VERSION,
        "field": f.to_json(),
        "order": f.order,
        "modulus_poly": poly_str(f.modulus),
        "primitive": g,
        "elements": [{"bits": x, "log": f.log(x) if x else None} for x in range(f.order)],
    }
    return doc, 0


def cmd_build(args):
    budget = _budget(args)
    e = 1 if args.gamma_exp is None else args.gamma_exp
    if args.object == "hyperoval":
        q = _check_q(args.q, 1, 4, "build hyperoval")
        code = vf.plane_code(q, 2, e)
    elif args.object == "denniston":
        q = _check_q(args.q, 2, 4, "build denniston")
        t = args.t if args.t is not None else 2
        if not 1 < t < q or (q.bit_length() - 1) % (t.bit_length() - 1):
            raise UsageError(f"need 1 < t < q with q a power of t, got q={q}, t={t}")
        code = vf.plane_code(q, t, e)
    else:
        q = _check_q(args.q, 1, 4, "build ovoid")
        code = vf.ovoid_code(q, e)
    prof = cd.weight_profile(code, budget)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "object": args.object,
        "field": code.field.to_json(),
        "parameters": {"n": prof.n, "k": prof.k, "d": prof.min_distance},
        "profile": prof.to_json(),
        "code": code.to_json(),
    }
    if not code.has_zero_column():
        doc["points"] = cd.columns_as_points(code).to_json()
    return doc, 0


def cmd_analyze(args):
    doc = _load(args)
    code = _code_from_doc(doc)
    if code is None:
        raise UsageError("analyze expects a code JSON (with a 'gen' matrix)")
    prof = cd.weight_profile(code, _budget(args))
    out = {
        "schema_version": SCHEMA_VERSION,
        "field": code.field.to_json(),
        "parameters": {"n": prof.n, "k": prof.k, "d": prof.min_distance},
        "profile": prof.to_json(),
    }
    return out, 0


def _geometry(ps: geo.ProjPointSet) -> dict:
    out = {
        "dim": ps.dim,
        "size": len(ps),
        "distinct": ps.support_size(),
        "is_set": ps.is_set(),
        "max_multiplicity": ps.max_multiplicity(),
    }
    if ps.dim not in (2, 3):
        return out
    ic = geo.line_counts(ps)
    out["hyperplane_histogram"] = {str(k): v for k, v in ic.histogram.items()}
    if not ps.is_set():
        return out
    out["is_arc"] = bool(geo.is_arc(ps))
    if ps.dim == 2:
        out["is_hyperoval"] = bool(geo.is_hyperoval(ps))
        t = ic.max()
        v = geo.is_maximal_arc(ps, t) if t > 1 else geo.Verdict(False, "no secant lines")
        out["maximal_arc"] = {"t": t, "ok": bool(v), "reason": v.reason}
    else:
        v = geo.is_ovoid(ps)
        out["is_ovoid"] = {"ok": bool(v), "reason": v.reason}
    return out


def cmd_geometry_check(args):
    doc = _load(args)
    code = _code_from_doc(doc)
    out = {"schema_version": SCHEMA_VERSION}
    if code is not None:
        if code.has_zero_column():
            raise UsageError("generator has a zero column; columns do not define points")
        ps = cd.columns_as_points(code)
        out["field"] = code.field.to_json()
        out["geometry"] = _geometry(ps)
        if code.k == 3:
            out["lemma1"] = cd.verify_lemma1(code, _budget(args))
        return out, 0
    ps = _points_from_doc(doc)
    out["field"] = ps.field.to_json()
    out["geometry"] = _geometry(ps)
    return out, 0


def cmd_verify(args):
    budget = _budget(args)
    claim = args.claim
    q = args.q
    lim = {"chain3": (2, 4), "t1": (2, 4), "t2": (1, 4), "t3": (2, 4), "t4": (1, 3), "t5": (1, 4)}[claim]
    _check_q(q, *lim, f"verify {claim}")
    t0 = time.perf_counter()
    if claim == "t3":
        t = args.t
        if t is None:
            raise UsageError("verify t3 needs --t")
        try:
            rep = vf.sweep_theorem3(q, t, budget, args.jobs)
        except ValueError as e:
            raise UsageError(str(e))
    elif claim == "t5":
        exps = [args.gamma_exp] if args.gamma_exp is not None else None
        if exps is None and q > 8:
            raise UsageError("verify t5 at q = 16 runs one candidate; pass --gamma-exp")
        rep = vf.sweep_theorem5(q, budget, args.jobs, exps)
    else:
        rep = vf.CLAIMS[claim](q, args.t, budget, args.jobs)
    print(f"{rep.claim_id}: {rep.verdict} in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return rep, 0 if rep.passed else 1


# ----------------------------------------------------------------------
# Table rendering
# ----------------------------------------------------------------------

def _table(headers: list[str], rows: list[list]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[("-" if c is None else str(c)) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    fmt = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


def _hist_rows(h: dict) -> list[list]:
    return [[w, c] for w, c in sorted(((int(w), c) for w, c in h.items()))]


def render_table(doc) -> str:
    lines: list[str] = []
    if isinstance(doc, vf.VerificationReport):
        r = doc
        lines.append(f"claim      {r.claim_id}")
        lines.append(f"parameters {', '.join(f'{k}={v}' for k, v in r.parameters.items())}")
        lines.append(f"candidates {r.candidates_examined}")
        lines.append(f"verdict    {r.verdict.upper()}")
        lines.append(f"elapsed    {r.elapsed:.2f}s")
        lines.append("")
        lines += [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in r.checks.items()]
        rows = []
        for w in sorted(r.witnesses, key=lambda w: w.get("gamma_exponent", 0)):
            if "gamma_exponent" not in w:
                continue
            geo_ok = w.get("points_match")
            rows.append([
                w["gamma_exponent"], w["order"], "[" + ",".join(map(str, w["params"])) + "]",
                w["d_dual"], "{" + ",".join(map(str, w["weights"])) + "}",
                "yes" if w["achieves"] else "no", None if geo_ok is None else ("match" if geo_ok else "differ"),
            ])
        if rows:
            lines.append("")
            lines += _table(["e", "order", "[n,k,d]", "d_dual", "weights", "achieves", "points"], rows)
        lam = [w for w in r.witnesses if "Lambda" in w]
        if lam:
            lines.append("")
            lines += _table(
                ["Lambda", "t", "size", "polar = classical", "maximal arc"],
                [["{" + ",".join(map(str, w["Lambda"])) + "}", w["t"], w["size"],
                  w["polar_equals_classical"], w["maximal_arc"]] for w in lam],
            )
        for w in r.witnesses:
            if "kind" in w:
                lines.append("")
                lines += [f"{k:<18}{w[k]}" for k in ("kind", "points", "plane_histogram", "split_form_points")]
        for note in r.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"
    if "elements" in doc:
        f = doc["field"]
        lines.append(f"GF(2^{f['m']})  modulus {doc['modulus_poly']} ({f['modulus']})  primitive {doc['primitive']}")
        lines += _table(["element", "log"], [[e["bits"], e["log"]] for e in doc["elements"]])
        return "\n".join(lines) + "\n"
    if "profile" in doc:
        p = doc["profile"]
        lines.append(f"[n, k, d] = [{p['n']}, {p['k']}, {p['d']}] over GF({p['q']})")
        lines.append(f"d_dual     {p['d_dual']} ({p['d_dual_method']}{'' if p['d_dual_exact'] else ', lower bound'})")
        lines.append("flags      " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in p["flags"].items()))
        lines.append("")
        lines += _table(["weight", "count"], _hist_rows(p["histogram"]))
        return "\n".join(lines) + "\n"
    if "geometry" in doc:
        g = doc["geometry"]
        for k, v in g.items():
            if k != "hyperplane_histogram":
                lines.append(f"{k:<17}{v}")
        if "lemma1" in doc:
            l1 = doc["lemma1"]
            lines.append(f"{'lemma1':<17}n - d = {l1['t']}, max line count = {l1['max_line_count']}, ok={l1['ok']}")
        if "hyperplane_histogram" in g:
            lines.append("")
            lines += _table(["section", "hyperplanes"], _hist_rows(g["hyperplane_histogram"]))
        return "\n".join(lines) + "\n"
    return json.dumps(doc, indent=2) + "\n"


def _emit(doc, args) -> None:
    if args.format == "table":
        text = render_table(doc)
    else:
        payload = doc.to_json() if isinstance(doc, vf.VerificationReport) else doc
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COMMANDS = {
    "field": cmd_field,
    "build": cmd_build,
    "analyze": cmd_analyze,
    "geometry-check": cmd_geometry_check,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        doc, code = COMMANDS[args.command](args)
        _emit(doc, args)
    except UsageError as e:
        print(f"ebcodes: error: {e}", file=sys.stderr)
        return 2
    except cd.BudgetExceeded as e:
        print(f"ebcodes: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, geo.GeometryError, FieldError) as e:
        print(f"ebcodes: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"ebcodes: error: cannot write {args.out}: {e.strerror}", file=sys.stderr)
        return 2
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
