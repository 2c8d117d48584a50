"""Command-line front end.

    extendlab set decompose --A "(0,1)" --n 4
    extendlab func norm --f "[0,2]: x^2 - x"
    extendlab retract approx --A "(0,1)" --n 4
    extendlab extend verify --A "[0,1]" --op phi-star --f "[0,1]: x"
    extendlab classify pc --f "(-inf,0): 0; [0,inf): 1"
    extendlab demo riemann --x 22/7
    extendlab sample --f "[0,1]: x^2" --count 11

Exit status: 0 on success, 1 when a verification fails (a witness is
printed), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext

from . import classify as cl
from . import extend as ex
from . import pwfunc as pw
from . import realset as rs
from .realset import Q
from .notation import ParseError, parse_number, parse_piecewise, parse_set
from .retraction import (
    AnchorPolicy,
    AnchorRule,
    RetractionError,
    build_retraction,
    check_retraction,
    default_g,
    flb_preimage,
    pc_decomposition,
    retraction_approx,
)

SCHEMA = "extendlab/1"
DEFAULT_SAMPLES = 1000


class VerificationFailure(Exception):
    def __init__(self, payload, witness: str):
        super().__init__(witness)
        self.payload = payload
        self.witness = witness


@dataclass
class CommandRequest:
    subcommand: str
    action: str | None = None
    options: dict = field(default_factory=dict)
    eps: Q = pw.DEFAULT_EPS
    samples: int = DEFAULT_SAMPLES
    fmt: str = "text"

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")


def decimal_str(x: Q) -> str:
    with localcontext() as ctx:
        ctx.prec = 17
        return format(Decimal(int(x.numerator)) / Decimal(int(x.denominator)), ".17g")


# --- helpers ----------------------------------------------------------------------------


def _opt(req: CommandRequest, name: str, required=True):
    v = req.options.get(name)
    if isinstance(v, list):
        v = v[-1] if v else None
    if v is None and required:
        raise ValueError(f"--{name.replace('_', '-')} is required for '{req.subcommand} {req.action or ''}'".strip())
    return v


def _set(req, name, required=True):
    v = _opt(req, name, required)
    return None if v is None else parse_set(v)


def _func(req, name="f", domain=None, required=True):
    v = _opt(req, name, required)
    return None if v is None else parse_piecewise(v, domain)


def _num(req, name, required=True):
    v = _opt(req, name, required)
    return None if v is None else parse_number(v)


def _retraction(req):
    a = _set(req, "A")
    g_text = req.options.get("g")
    if g_text:
        g = parse_piecewise(g_text, rs.complement(a))
    else:
        anchors = req.options.get("anchors")
        if anchors:
            policy = AnchorPolicy(AnchorRule.EXPLICIT, tuple(parse_number(t) for t in anchors.split(",")))
        else:
            policy = AnchorPolicy(AnchorRule(req.options.get("anchor_rule") or "nearest-endpoint"))
        g = default_g(a, policy)
    return build_retraction(a, g, req.eps)


def _operator(req, a):
    op = req.options.get("op") or "phi-star"
    if op == "phi-star":
        return ex.OperatorKind.phi_star(_retraction(req))
    if op == "constant":
        x0 = _num(req, "x0", required=False)
        if x0 is None:
            x0 = a.pieces[0].interior_point() if a else None
        return ex.OperatorKind.constant_anchor(a, x0)
    raise ValueError(f"unknown operator {op!r}; use phi-star or constant")


def _coeffs(req):
    text = req.options.get("coeffs")
    if not text:
        return [(1, 1), (2, -3), (Q(1, 2), Q(5, 7))]
    out = []
    for pair in text.split(";"):
        a, b = pair.split(",")
        out.append((parse_number(a), parse_number(b)))
    return out


def _grid(lo: Q, hi: Q, count: int) -> list[Q]:
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + step * i for i in range(count)]


# --- subcommands ------------------------------------------------------------------------


def cmd_set(req):
    act = req.action
    a = _set(req, "A")
    if act == "canon":
        return {"set": str(a)}, str(a)
    if act in ("union", "intersect", "difference"):
        b = _set(req, "B")
        fn = {"union": rs.union, "intersect": rs.intersect, "difference": rs.difference}[act]
        out = fn(a, b)
        return {"set": str(out)}, str(out)
    if act in ("complement", "closure", "interior"):
        out = getattr(rs, act)(a)
        return {"set": str(out)}, str(out)
    if act == "contains":
        x = _num(req, "x")
        v = a.contains(x)
        return {"contains": v}, str(v).lower()
    if act == "properties":
        d = {"closed": rs.is_closed(a), "open": rs.is_open(a), "pieces": len(a)}
        return d, f"closed={d['closed']} open={d['open']} pieces={d['pieces']}"
    if act in ("decompose", "codecompose"):
        n = int(_opt(req, "n"))
        fn = rs.fsigma_decomposition if act == "decompose" else rs.gdelta_codecomposition
        out = fn(a, n)
        return {"n": n, "set": str(out)}, str(out)
    raise ValueError(f"unknown set action {act!r}")


def cmd_func(req):
    act = req.action
    f = _func(req)
    if act == "eval":
        x = _num(req, "x")
        v = f(x)
        return {"x": rs.fmt_number(x), "value": rs.fmt_number(v)}, rs.fmt_number(v)
    if act == "norm":
        over = _set(req, "over", required=False)
        n = pw.sup_norm(f, over, req.eps)
        text = rs.fmt_number(n.exact) if n.exact is not None else f"[{rs.fmt_number(n.lo)}, {rs.fmt_number(n.hi)}]"
        return n.to_dict(), text + ("" if n.attained else " (not attained)")
    if act == "preimage":
        t = _set(req, "T")
        p = pw.preimage(f, t, req.eps)
        d = {"set": str(p.set), "mode": p.mode.value, "slack": None if p.slack is None else rs.fmt_number(p.slack)}
        return d, f"{p.set}  [{p.mode.value}]"
    if act == "approx":
        n = int(_opt(req, "n"))
        out = pw.continuous_approximation(f, n)
        return {"n": n, "f": str(out)}, str(out)
    if act in ("abs", "max", "min", "compose"):
        if act == "abs":
            out = pw.absolute(f, req.eps)
        else:
            g = _func(req, "g")
            out = {"max": pw.lattice_max, "min": pw.lattice_min, "compose": pw.compose}[act](f, g, req.eps)
        d = {"f": str(out), "mode": out.mode.value}
        return d, str(out) + ("" if out.exact else f"  [APPROX slack {rs.fmt_number(out.slack)}]")
    raise ValueError(f"unknown func action {act!r}")


def cmd_retract(req):
    act = req.action
    r = _retraction(req)
    base = {"A": str(r.A), "g": str(r.g), "phi": str(r.phi)}
    if act == "build":
        return base, f"phi = {r.phi}"
    if act == "check":
        closed_sets = [parse_set(t) for t in req.options.get("F") or []]
        pts = r.A.endpoints() or [Q(0)]
        samples = _grid(min(pts) - 2, max(pts) + 2, req.samples)
        res = check_retraction(r, samples, closed_sets, int(req.options.get("n") or 10), req.eps)
        payload = dict(base, check=res.to_dict())
        if not res.ok:
            raise VerificationFailure(payload, "; ".join(res.failures))
        return payload, "retraction checks passed"
    if act == "decompose":
        n = int(_opt(req, "n"))
        h = pc_decomposition(r, n)
        return dict(base, n=n, H=str(h)), str(h)
    if act == "approx":
        n = int(_opt(req, "n"))
        out = retraction_approx(r, n)
        return dict(base, n=n, phi_n=str(out)), str(out)
    if act == "preimage":
        f_set = _set(req, "F")
        out = flb_preimage(r, f_set, req.eps)
        return dict(base, F=str(f_set), preimage=str(out)), str(out)
    raise ValueError(f"unknown retract action {act!r}")


def cmd_extend(req):
    act = req.action
    if act == "phi-star":
        r = _retraction(req)
        f = _func(req, domain=r.A)
        out = ex.phi_star(f, r, req.eps)
        return {"A": str(r.A), "phi": str(r.phi), "extension": str(out)}, str(out)
    if act == "constant":
        f = _func(req)
        x0 = _num(req, "x0")
        out = ex.constant_extend(f, x0)
        return {"x0": rs.fmt_number(x0), "extension": str(out)}, str(out)
    if act == "constant-preimage":
        f = _func(req)
        res = ex.constant_extend_preimage(f, _num(req, "x0"), _set(req, "U"), req.eps)
        return res.to_dict(), f"{res.result.set}  ({res.case})"
    if act == "verify":
        a = _set(req, "A")
        kind = _operator(req, a)
        texts = req.options.get("f") or []
        if not texts:
            raise ValueError("--f is required for 'extend verify'")
        fs = [parse_piecewise(t, a) for t in texts]
        report = ex.verify_operator(kind, fs, _coeffs(req), req.eps)
        payload = report.to_dict()
        if not report.ok:
            bad = [k for k in ("extension", "linear", "positive", "unity", "isometry") if not getattr(report, k).ok]
            raise VerificationFailure(payload, "; ".join(f"{k}: {getattr(report, k).witness}" for k in bad))
        lines = [f"{k}: {getattr(report, k).status}" for k in ("extension", "linear", "positive", "unity", "isometry")]
        return payload, "\n".join(lines)
    if act == "chain":
        r = _retraction(req)
        f = _func(req, domain=r.A)
        trace = ex.phi_star_preimage_chain(f, r, _set(req, "U"), eps=req.eps)
        payload = trace.to_dict()
        if not trace.ok:
            raise VerificationFailure(payload, f"chain final {trace.final} vs direct {trace.direct}")
        return payload, f"stabilized at N={trace.stabilization_index}: {trace.final}"
    if act == "baire":
        r = _retraction(req)
        f = _func(req, domain=r.A)
        n_max = int(req.options["n_max"]) if req.options.get("n_max") else None
        rep = ex.baire_witness(f, r, n_max, eps=req.eps)
        payload = rep.to_dict()
        if not rep.ok:
            raise VerificationFailure(payload, "some samples did not stabilize within their bound")
        worst = max((s.index for s in rep.samples), default=0)
        return payload, f"route={rep.route}: {len(rep.samples)} samples stabilized (largest index {worst})"
    raise ValueError(f"unknown extend action {act!r}")


def cmd_classify(req):
    act = req.action
    if act == "gallery":
        name = req.options.get("name")
        if not name:
            entries = [e.to_dict() for e in cl.GALLERY.values()]
            return {"gallery": entries}, "\n".join(e["name"] for e in entries)
        e = cl.gallery(name)
        return e.to_dict(), f"{e.name}: {e.classification}  \"{e.citation}\""
    f = _func(req)
    if act == "continuity":
        rep = cl.is_continuous(f)
        return rep.to_dict(), "continuous" if rep.continuous else f"jumps at {', '.join(rep.to_dict()['jumps'])}"
    if act == "pc":
        rep = cl.is_piecewise_continuous(f)
        d = rep.to_dict()
        return d, "\n".join(f"X_{i + 1} = {x}" for i, x in enumerate(d["cover"]))
    if act in ("fcb", "flb"):
        key = "U" if act == "fcb" else "F"
        targets = [parse_set(t) for t in req.options.get(key) or []]
        fn = cl.fcb_witness if act == "fcb" else cl.flb_witness
        rep = fn(f, targets, eps=req.eps)
        d = rep.to_dict()
        return d, "\n".join(f"{e['target']} <- {e['preimage']}" for e in d["preimages"])
    raise ValueError(f"unknown classify action {act!r}")


def cmd_demo(req):
    e = cl.gallery(req.action or "riemann")
    xs = req.options.get("x") or []
    d = e.to_dict()
    if xs and e.evaluator is not None:
        vals = [(parse_number(t), e.evaluator(parse_number(t))) for t in xs]
        d["values"] = {rs.fmt_number(x): rs.fmt_number(v) for x, v in vals}
    text = f"{e.name}: {e.note}\n  \"{e.citation}\""
    for x, v in d.get("values", {}).items():
        text += f"\n  f({x}) = {v}"
    return d, text


def sample_rows(f: pw.PiecewiseFunc, lo: Q, hi: Q, count: int):
    for x in _grid(lo, hi, count):
        if f.domain.contains(x):
            yield x, f(x)


def cmd_sample(req):
    f = _func(req)
    lo = _num(req, "lo", required=False)
    hi = _num(req, "hi", required=False)
    pts = f.domain.endpoints() or [Q(0)]
    lo = min(pts) if lo is None else lo
    hi = max(pts) if hi is None else hi
    if lo == hi and len(pts) > 1:
        hi = lo + 1
    rows = [
        {
            "x_rational": rs.fmt_number(x),
            "x_decimal": decimal_str(x),
            "value_rational": rs.fmt_number(v),
            "value_decimal": decimal_str(v),
        }
        for x, v in sample_rows(f, lo, hi, int(req.options.get("count") or req.samples))
    ]
    return {"rows": rows}, None


COMMANDS = {
    "set": cmd_set,
    "func": cmd_func,
    "retract": cmd_retract,
    "extend": cmd_extend,
    "classify": cmd_classify,
    "demo": cmd_demo,
    "sample": cmd_sample,
}


def _render(req: CommandRequest, payload, text) -> str:
    if req.fmt == "json" or (text is None and req.fmt == "text" and "rows" not in payload):
        doc = {"schema": SCHEMA, "command": " ".join(filter(None, [req.subcommand, req.action])), "result": payload}
        return json.dumps(doc, indent=2)
    if req.fmt == "csv" or "rows" in payload:
        rows = payload.get("rows")
        if rows is None:
            rows = [{"key": k, "value": json.dumps(v) if not isinstance(v, str) else v} for k, v in payload.items()]
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            buf.write("x_rational,x_decimal,value_rational,value_decimal\n")
        return buf.getvalue().rstrip("\n")
    return text


def run(req: CommandRequest) -> tuple[int, str]:
    """Execute a request; returns (exit status, rendered output)."""
    handler = COMMANDS.get(req.subcommand)
    if handler is None:
        return 2, f"error: unknown command {req.subcommand!r}"
    try:
        payload, text = handler(req)
    except ParseError as e:
        return 2, f"error: {e.diagnostic()}"
    except VerificationFailure as e:
        if req.fmt == "json":
            doc = {"schema": SCHEMA, "command": f"{req.subcommand} {req.action}", "result": e.payload}
            return 1, json.dumps(doc, indent=2)
        return 1, f"verification failed: {e.witness}"
    except (RetractionError, pw.RangeError) as e:
        witness = getattr(e, "witness", None)
        w = "" if witness is None else f" (witness {rs.fmt_number(witness) if isinstance(witness, Q) else witness})"
        return 1, f"verification failed: {e}{w}"
    except ValueError as e:
        return 2, f"error: {e}"
    return 0, _render(req, payload, text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default=None)
    common.add_argument("--eps", default=None, help="tolerance for irrational breakpoints (default 1e-9)")
    common.add_argument("--samples", type=int, default=None, help="sample count (default 1000)")
    for name in ("A", "B", "f", "g", "x", "T", "U", "F", "over", "n", "x0", "op", "coeffs", "lo", "hi",
                 "count", "anchors", "anchor-rule", "n-max", "name"):
        multi = name in ("f", "U", "F", "x")
        common.add_argument(f"--{name}", action="append" if multi else "store", default=None)

    parser = argparse.ArgumentParser(prog="extendlab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    actions = {
        "set": ["canon", "union", "intersect", "difference", "complement", "closure", "interior", "contains",
                "properties", "decompose", "codecompose"],
        "func": ["eval", "norm", "preimage", "approx", "abs", "max", "min", "compose"],
        "retract": ["build", "check", "decompose", "approx", "preimage"],
        "extend": ["phi-star", "constant", "constant-preimage", "verify", "chain", "baire"],
        "classify": ["continuity", "pc", "fcb", "flb", "gallery"],
        "demo": ["riemann", "kalenda-spurny"],
    }
    for name, acts in actions.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("action", choices=acts, nargs="?" if name in ("demo",) else None)
        if name == "classify":
            p.add_argument("gallery_name", nargs="?", default=None)
    sub.add_parser("sample", parents=[common])
    return parser


def request_from_args(argv=None) -> CommandRequest:
    parser = build_parser()
    ns = parser.parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "action", "fmt", "eps", "samples")}
    if opts.get("gallery_name") and not opts.get("name"):
        opts["name"] = opts["gallery_name"]
    eps_text = ns.eps or os.environ.get("EXTENDLAB_EPS")
    eps = parse_number(eps_text) if eps_text else pw.DEFAULT_EPS
    fmt = ns.fmt or ("csv" if ns.subcommand == "sample" else "json" if ns.action == "verify" else "text")
    return CommandRequest(
        subcommand=ns.subcommand,
        action=getattr(ns, "action", None),
        options=opts,
        eps=eps,
        samples=ns.samples or DEFAULT_SAMPLES,
        fmt=fmt,
    )


def main(argv=None) -> int:
    try:
        req = request_from_args(argv)
    except ParseError as e:
        print(f"error: {e.diagnostic()}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    status, out = run(req)
    stream = sys.stdout if status != 2 else sys.stderr
    if out:
        print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
