"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage error,
3 undecided or uncertified outcome present.
"""

from __future__ import annotations

import argparse
import re
import sys
from importlib import resources

from . import __version__
from .bounds import (
    SCALAR_BOUNDS,
    ATable,
    BEta,
    BudgetExceeded,
    ConstantBound,
    eval_C,
    eval_epsilon_k,
    eval_h,
    eval_lambda,
    scalar_bounds,
    toy_a_table,
)
from .catalog import ExampleRangeError, builtin_example, example_names
from .configio import (
    ConfigError,
    QueryFile,
    config_from_dict,
    config_to_dict,
    content_hash,
    dump_json,
    load_json,
)
from .ideal import (
    PreconditionError,
    discriminant_radicality,
    eliminate,
    ideal_member,
    is_radical_pair,
    krull_dimension,
    radical_member,
)
from .poly import (
    GradedVectorSpace,
    ParseError,
    Ring,
    discriminant,
    poly_gcd,
    resultant,
    squarefree_part,
)
from .quotient import (
    PipelineError,
    append_trace,
    compose_bound,
    degree_reduce_pipeline,
    lifting_bound,
    suggest_covering_space,
)
from .scalar import Field
from .sg import config_span, embed_basic, potential, sg_sets, verify_sg
from .strength import collapse_search, quadric_strength, strengthen

OK, FAILED, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


class _Ctx:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.inputs = {}

    def meta(self):
        return {
            "version": __version__,
            "seed": getattr(self.args, "seed", 42),
            "inputs": dict(self.inputs),
        }

    def emit(self, payload: dict, text_lines):
        if self.args.format == "structured":
            body = {"command": self.args.command_path}
            body.update(self.meta())
            body["result"] = payload
            self.out.write(dump_json(body))
        else:
            for line in text_lines:
                self.out.write(f"{line}\n")


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _ring_for(args, texts):
    field = Field.from_text(args.field)
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
    else:
        names = []
        for t in texts:
            for m in _IDENT.findall(t):
                if m != "zeta" and m not in names:
                    names.append(m)
        if not names:
            names = ["x"]
    return Ring(names, field=field)


def _resolve(path):
    if path == "-":
        return path
    if path.startswith("fixtures/") or "/" not in path:
        name = path.split("/", 1)[-1]
        base = resources.files("radsg") / "fixtures"
        for cand in (name, name + ".json"):
            p = base / cand
            if p.is_file():
                import os

                if not os.path.exists(path):
                    return str(p)
    return path


def _load(ctx, path):
    path = _resolve(path)
    try:
        data, text = load_json(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    ctx.inputs[path if path != "-" else "<stdin>"] = content_hash(text)
    return data


def _load_config(ctx, path):
    return config_from_dict(_load(ctx, path))


def _load_query(ctx, path):
    return QueryFile(_load(ctx, path))


def _parse_B(text, e_default=2):
    """const:2,2 | const:2 (with --e) | beta:eta (toy A table)."""
    kind, _, rest = text.partition(":")
    if kind == "const":
        vals = [int(v) for v in rest.split(",") if v.strip()]
        if len(vals) == 1:
            vals = vals * e_default
        return ConstantBound(vals)
    if kind == "beta":
        return BEta(toy_a_table(), int(rest or 3), e_default)
    raise UsageError(f"unknown bound function {text!r}; use const:v1,...,ve or beta:eta")


def _parse_vec(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"bad vector {text!r}") from None


# ---------------------------------------------------------------------------
# poly


def cmd_poly(ctx):
    a = ctx.args
    ring = _ring_for(a, a.polys)
    ps = [ring.parse(t) for t in a.polys]
    for k, t in enumerate(a.polys):
        ctx.inputs[f"poly{k + 1}"] = content_hash(t)
    op = a.op
    if op == "gcd":
        if len(ps) < 2:
            raise UsageError("gcd needs two polynomials")
        r = poly_gcd(ps[0], ps[1])
    elif op == "squarefree":
        r = squarefree_part(ps[0])
    elif op in ("resultant", "discriminant"):
        if not a.var:
            raise UsageError(f"{op} needs --var")
        r = resultant(ps[0], ps[1], a.var) if op == "resultant" else discriminant(ps[0], a.var)
    ctx.emit({"op": op, "value": str(r)}, [str(r)])
    return OK


# ---------------------------------------------------------------------------
# ideal


def cmd_ideal(ctx):
    a = ctx.args
    q = _load_query(ctx, a.file)
    amb = q.ambient
    op = a.op
    if op == "groebner":
        gb = amb.ideal(q.generators)
        basis = [str(b) for b in gb.basis]
        ctx.emit({"order": gb.order.describe(), "unit": gb.is_unit, "basis": basis},
                 basis or ["0"])
        return OK
    if op == "dim":
        gb = amb.ideal(q.generators)
        if gb.is_unit:
            raise UsageError("dimension of the unit ideal is undefined")
        d = krull_dimension(gb)
        ctx.emit({"dimension": d}, [str(d)])
        return OK
    if op == "eliminate":
        names = a.vars.split(",") if a.vars else q.eliminate
        gb = eliminate(amb.ideal(q.generators), names)
        basis = [str(b) for b in gb.basis]
        ctx.emit({"eliminated": names, "basis": basis}, basis or ["0"])
        return OK
    if not q.targets:
        raise UsageError("query file has no targets")
    rows, lines = [], []
    for t in q.targets:
        if op == "member":
            res = ideal_member(t, q.generators, amb, certificate=True)
            row = {"target": str(t), "member": res.member}
            if res.member and res.cofactors is not None:
                row["cofactors"] = [str(c) for c in res.cofactors]
            else:
                row["normal_form"] = str(res.normal_form)
            val = res.member
        elif op == "radical-member":
            val = radical_member(t, q.generators, amb)
            row = {"target": str(t), "radical_member": val,
                   "ideal_member": ideal_member(t, q.generators, amb).member}
        else:
            raise UsageError(f"unknown ideal operation {op}")
        rows.append(row)
        lines.append(f"{t}: {'true' if val else 'false'}")
    ctx.emit({"results": rows}, lines)
    return OK


def cmd_ideal_radicality(ctx):
    a = ctx.args
    q = _load_query(ctx, a.file)
    if q.P is None or q.Q is None:
        if len(q.generators) != 2:
            raise UsageError("radicality needs P and Q (or exactly two generators)")
        P, Q = q.generators
    else:
        P, Q = q.P, q.Q
    payload = {}
    lines = []
    code = OK
    if q.z_part:
        try:
            disc = discriminant_radicality(P, Q, q.z_part)
            payload["discriminant_criterion"] = disc.to_dict()
            lines.append(f"discriminant criterion: {disc.status}")
            if disc.failing_variable:
                lines.append(f"  failing gcd on Disc_{disc.failing_variable}: {disc.failing_gcd}")
        except PreconditionError as exc:
            payload["discriminant_criterion"] = {"status": "PRECONDITION", "violations": exc.violations}
            lines.append(f"discriminant criterion: preconditions fail ({'; '.join(exc.violations)})")
    amb = q.ambient if q.ambient.relations else None
    res = is_radical_pair(P, Q, amb, a.search_degree or q.search_degree)
    payload["pair"] = res.to_dict()
    lines.append(f"pair: {res}")
    if res.status == "UNKNOWN":
        code = UNDECIDED
    ctx.emit(payload, lines)
    return code


# ---------------------------------------------------------------------------
# sg


def _report_lines(rep):
    lines = [
        f"configuration: {rep.name or '(unnamed)'} ({rep.kind})",
        f"result: {'PASS' if rep.passed else 'FAIL'}",
        f"pairs: {len(rep.pairs)}, failed: {len(rep.failures())}",
        f"span dimension: {rep.span_dimension}",
        f"potential: {rep.potential}",
    ]
    for p in rep.pairs:
        if p.ok:
            extra = f" (power {p.power})" if p.power else ""
            lines.append(f"  ({p.i},{p.j}) -> {p.witness} [{p.method}{extra}]")
        else:
            lines.append(f"  ({p.i},{p.j}) -> no witness")
    for v in rep.violations:
        lines.append(f"violation: {v}")
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    for u in rep.uncertified:
        lines.append(f"uncertified: {u}")
    return lines


def cmd_sg(ctx):
    a = ctx.args
    op = a.op
    if op == "example":
        try:
            cfg = builtin_example(a.name, n=a.n, m=a.m, r=a.r)
        except (ExampleRangeError, KeyError) as exc:
            raise UsageError(str(exc)) from None
        ctx.out.write(dump_json(config_to_dict(cfg)))
        return OK
    cfg = _load_config(ctx, a.file)
    if op == "verify":
        rep = verify_sg(cfg, jobs=a.jobs, seed=a.seed)
        ctx.emit(rep.to_dict(), _report_lines(rep))
        if not rep.passed:
            return FAILED
        return UNDECIDED if rep.uncertified else OK
    if op == "span":
        s = config_span(cfg)
        payload = {"span_dimension": s}
        lines = [str(s)]
        stated = cfg.annotations.get("stated_span")
        if stated is not None and stated != s:
            payload["warning"] = f"computed span {s} differs from the stated value {stated}"
            lines.append(f"warning: {payload['warning']}")
        ctx.emit(payload, lines)
        return OK
    if op == "potential":
        p = potential(cfg)
        ctx.emit({"potential": p}, [str(p)])
        return OK
    if op == "sets":
        if cfg.kind != "general":
            raise UsageError("sets needs a general configuration")
        top = max(f.degree() for f in cfg.forms)
        tops = [f for f in cfg.forms if f.degree() == top]
        F = cfg.ring.parse(a.form) if a.form else tops[0]
        res = sg_sets(cfg, F, a.search_degree)
        d = res.to_dict()
        lines = [f"F = {d['F']}", f"Fspan: {d['Fspan']}", f"Grad: {d['Grad']}",
                 f"Frad: {d['Frad']}", f"unknown radicality: {d['unknown_radicality']}"]
        ctx.emit(d, lines)
        return UNDECIDED if res.unknown else OK
    if op == "reduce":
        if cfg.kind == "basic":
            cfg = embed_basic(cfg)
        if a.cover:
            sep = ";" if ";" in a.cover else ","
            cover = GradedVectorSpace(cfg.ring, [cfg.ring.parse(t) for t in a.cover.split(sep)])
        else:
            cover = suggest_covering_space(cfg)
        try:
            out, trace = degree_reduce_pipeline(cfg, cover, seed=a.seed)
        except PipelineError as exc:
            ctx.emit({"error": str(exc)}, [f"error: {exc}"])
            return FAILED
        if a.trace:
            append_trace(a.trace, trace)
        payload = {"config": config_to_dict(out), "trace": trace}
        lines = [f"potential: {trace['potential_before']} -> {trace['potential_after']}",
                 f"degrees: {trace['degrees_before']} -> {trace['degrees_after']}",
                 f"alpha: {trace['alpha']} (seed {trace['seed']}, retries {trace['retries']})",
                 f"output verified: {trace.get('output_verified')}"]
        lines += [f"  {f}" for f in payload["config"]["forms"]]
        ctx.emit(payload, lines)
        if trace["uncertified_squarefree"]:
            return UNDECIDED
        return OK if trace.get("output_verified", True) else FAILED
    raise UsageError(f"unknown sg operation {op}")


# ---------------------------------------------------------------------------
# strength


def cmd_strength(ctx):
    a = ctx.args
    ring = _ring_for(a, a.polys)
    ps = [ring.parse(t) for t in a.polys]
    for k, t in enumerate(a.polys):
        ctx.inputs[f"poly{k + 1}"] = content_hash(t)
    if a.op == "quadric":
        est = quadric_strength(ps[0])
        ctx.emit(est.to_dict(), [str(int(est.upper))])
        return OK
    if a.op == "search":
        est = collapse_search(ps[0], a.radius)
        d = est.to_dict()
        ctx.emit(d, [f"strength in [{d['lower']}, {d['upper']}]"])
        return OK
    if a.op == "strengthen":
        B = _parse_B(a.B or "const:1", max(p.degree() for p in ps))
        res = strengthen(GradedVectorSpace(ring, ps), B, a.radius, a.policy, seed=a.seed,
                         budget=a.budget)
        d = res.to_dict()
        lines = [f"status: {d['status']}", f"basis: {d['basis']}",
                 f"dimension sequence: {d['dimension_sequence']}",
                 f"iterations: {d['iterations']}",
                 f"input algebra contained: {d['contains_input_algebra']}",
                 f"C bound: {d['C_bound']}"]
        ctx.emit(d, lines)
        if res.status == "UNDECIDED":
            return UNDECIDED
        return OK if res.contained else FAILED
    raise UsageError(f"unknown strength operation {a.op}")


# ---------------------------------------------------------------------------
# bounds


def cmd_bounds(ctx):
    a = ctx.args
    op = a.op
    try:
        if op == "lambda":
            A = toy_a_table()
            if a.a_table:
                with open(a.a_table, encoding="utf-8") as fh:
                    text = fh.read()
                ctx.inputs[a.a_table] = content_hash(text)
                A = ATable.from_text(text)
            v = eval_lambda(a.d, a.n, A, eta=a.eta, e=a.e, budget=a.budget)
            ctx.emit({"d": a.d, "n": a.n, "value": str(v)}, [str(v)])
            return OK
        if op in ("c", "h"):
            delta = _parse_vec(a.delta)
            B = _parse_B(a.B, len(delta))
            if B.e != len(delta):
                raise UsageError("B and delta have different lengths")
            v = (eval_C if op == "c" else eval_h)(B, delta, a.budget)
            ctx.emit({"B": B.name, "delta": list(delta), "value": list(v)},
                     [",".join(str(x) for x in v)])
            return OK
        if op == "epsilon":
            eps, k = eval_epsilon_k(a.d)
            ctx.emit({"d": a.d, "epsilon": str(eps), "k": str(k)}, [f"epsilon = {eps}", f"k = {k}"])
            return OK
        if op == "scalar":
            args = [_num(x) for x in a.args]
            v = scalar_bounds(a.name, *args)
            ctx.emit({"name": a.name, "args": a.args, "value": str(v)}, [str(v)])
            return OK
        if op == "lifting":
            extra = _parse_vec(a.extra) if a.extra else ()
            v = lifting_bound(a.variant, a.d, a.n, a.D, extra, a.e, a.u_dim)
            ctx.emit({"variant": a.variant, "value": str(v)}, [str(v)])
            return OK
        if op == "compose":
            ns = _parse_vec(a.n_list) if a.n_list else ()
            v = compose_bound(a.d, a.e, a.ell, ns, a.u_dim, a.D)
            ctx.emit({"value": str(v)}, [str(v)])
            return OK
    except BudgetExceeded as exc:
        ctx.emit({"status": "BUDGET_EXCEEDED", "level": exc.level, "used": exc.used},
                 [f"BUDGET_EXCEEDED at {exc.level} ({exc.used} units)"])
        return UNDECIDED
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    raise UsageError(f"unknown bounds operation {op}")


def _num(text):
    from fractions import Fraction

    try:
        return int(text)
    except ValueError:
        try:
            return Fraction(text)
        except ValueError:
            raise UsageError(f"bad number {text!r}") from None


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--budget", type=int, default=10 ** 7, help="recursion work budget")
    p.add_argument("--radius", type=int, default=1, help="collapse search radius")
    p.add_argument("--format", choices=("text", "structured"), default="text")


def _ring_args(p):
    p.add_argument("--vars", help="comma separated variable names (default: inferred)")
    p.add_argument("--field", default="QQ", help="QQ or cyclotomic(n)")


def build_parser():
    parser = argparse.ArgumentParser(prog="radsg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"radsg {__version__}")
    top = parser.add_subparsers(dest="group", required=True)

    g = top.add_parser("poly", help="polynomial operations")
    s = g.add_subparsers(dest="op", required=True)
    for name in ("gcd", "squarefree", "resultant", "discriminant"):
        p = s.add_parser(name)
        p.add_argument("polys", nargs="+")
        p.add_argument("--var")
        _ring_args(p)
        _common(p)

    g = top.add_parser("ideal", help="ideal queries on a query file")
    s = g.add_subparsers(dest="op", required=True)
    for name in ("groebner", "member", "radical-member", "eliminate", "dim", "radicality"):
        p = s.add_parser(name)
        p.add_argument("--file", required=True, help="query file, fixture name, or '-'")
        if name == "eliminate":
            p.add_argument("--vars", help="variables to eliminate")
        if name == "radicality":
            p.add_argument("--search-degree", type=int, default=None)
        _common(p)

    g = top.add_parser("sg", help="Sylvester-Gallai configurations")
    s = g.add_subparsers(dest="op", required=True)
    for name in ("verify", "span", "sets", "potential", "reduce"):
        p = s.add_parser(name)
        p.add_argument("file", help="configuration file, fixture name, or '-'")
        if name == "sets":
            p.add_argument("--form", help="top-degree residual form (default: the first)")
            p.add_argument("--search-degree", type=int, default=2)
        if name == "reduce":
            p.add_argument("--cover", help="covering space basis, comma separated (default: suggested)")
            p.add_argument("--trace", help="append the step record to this file")
        _common(p)
    p = s.add_parser("example")
    p.add_argument("name", choices=example_names())
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    _common(p)

    g = top.add_parser("strength", help="strength and collapse")
    s = g.add_subparsers(dest="op", required=True)
    for name in ("quadric", "search", "strengthen"):
        p = s.add_parser(name)
        p.add_argument("polys", nargs="+")
        _ring_args(p)
        if name == "strengthen":
            p.add_argument("--B", help="const:v1,...,ve or beta:eta")
            p.add_argument("--policy", choices=("abort", "assume-strong"), default="abort")
        _common(p)

    g = top.add_parser("bounds", help="bound formulas and recursions")
    s = g.add_subparsers(dest="op", required=True)
    p = s.add_parser("lambda")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--eta", type=int, default=3)
    p.add_argument("--a-table", help="file of rows 'eta d value' (default: toy eta+d)")
    _common(p)
    for name in ("c", "h"):
        p = s.add_parser(name)
        p.add_argument("--B", required=True, help="const:v1,...,ve or beta:eta")
        p.add_argument("--delta", required=True, help="comma separated dimension sequence")
        _common(p)
    p = s.add_parser("epsilon")
    p.add_argument("--d", type=int, required=True)
    _common(p)
    p = s.add_parser("scalar")
    p.add_argument("name", choices=sorted(SCALAR_BOUNDS))
    p.add_argument("args", nargs="*")
    _common(p)
    p = s.add_parser("lifting")
    p.add_argument("--variant", choices=("basic", "general", "preserve"), default="basic")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--extra", help="extra degrees, comma separated")
    p.add_argument("--e", type=int)
    p.add_argument("--u-dim", type=int, default=0)
    _common(p)
    p = s.add_parser("compose")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n-list", default="")
    p.add_argument("--u-dim", type=int, default=0)
    p.add_argument("--D", type=int, required=True)
    _common(p)
    return parser


HANDLERS = {
    "poly": cmd_poly,
    "ideal": cmd_ideal,
    "sg": cmd_sg,
    "strength": cmd_strength,
    "bounds": cmd_bounds,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else USAGE
    args.command_path = f"{args.group} {args.op}"
    ctx = _Ctx(args, out)
    try:
        if args.group == "ideal" and args.op == "radicality":
            return cmd_ideal_radicality(ctx)
        return HANDLERS[args.group](ctx)
    except (UsageError, ConfigError, ParseError, ValueError, OSError) as exc:
        sys.stderr.write(f"radsg: error: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
