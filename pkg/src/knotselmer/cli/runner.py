"""Execute the tasks of a parsed job and collect a report document."""

import time

from ..errors import KnotSelmerError, ParseError
from ..rings import PAdicIntegers, PowerSeriesRing, PrimeField, QuadraticIntegers, associates, ring_tower
from ..representation import absolutely_irreducible, rep_from_assignment, residual_rep
from ..selmer import GammaSpec, selmer
from ..twovar import sample_table, two_var_selmer
from ..words import format_word
from .expr import Evaluator
from .jobfile import build_context, parse_degrees, parse_images

SCHEMA = "knotselmer.report"
VERSION = 1


class Report:
    """A structured report document plus wall-clock timings (kept outside the document)."""

    def __init__(self, doc, timings=None):
        self.doc = doc
        self.timings = timings or {}

    @property
    def ok(self):
        return self.doc.get("status") == "ok"

    def exit_code(self):
        return 0 if self.ok else 1


def elem_doc(x):
    return {"text": x.ring.format_bare(x.raw), "data": x.to_data()}


def _ring_doc(job, ctx_ring):
    layers = ring_tower(ctx_ring)
    symbol = "𝒪" if isinstance(layers[0], QuadraticIntegers) else "A"
    doc = {"tower": [r.name() for r in layers], "descriptor": str(ctx_ring.descriptor), "symbol": symbol}
    if isinstance(layers[0], QuadraticIntegers):
        doc["quadratic"] = {"d": layers[0].d, "name": layers[0].var}
    return doc


def _precision(ring):
    out = {"s": None, "p": None}
    for r in ring_tower(ring):
        if isinstance(r, PowerSeriesRing):
            out["s"] = r.precision
        if isinstance(r, PAdicIntegers):
            out["p"] = r.precision
    return out


def _echo(job):
    P = job.presentation
    return {
        "generators": list(job.generators),
        "relators": [format_word(r, job.generators) for r in P.relators],
        "meridian": format_word(P.meridian, job.generators),
        "longitude": format_word(P.longitude, job.generators) if P.longitude else None,
        "rings": [_ring_line_text(r) for r in job.rings],
        "constants": {let.name: let.text for let in job.lets},
        "images": {im.generator: im.texts for im in job.images},
        "tasks": [{"kind": t.kind, "options": dict(sorted(t.options.items()))} for t in job.tasks],
    }


def _ring_line_text(r):
    a = r.args
    if r.kind == "extension":
        return f"extension {a['name']} : {a['text']}"
    return " ".join([r.kind] + [str(a[k]) for k in ("p", "d", "name", "N") if k in a])


def run(job, precision_s=None, precision_p=None, task_filter=None):
    """Run every task of `job` (optionally only those of kind `task_filter`)."""
    doc = {"schema": SCHEMA, "version": VERSION, "job": {"name": job.name, "title": job.title},
           "input": _echo(job), "tasks": [], "warnings": []}
    timings = {}
    t0 = time.perf_counter()
    try:
        ctx = build_context(job, precision_s, precision_p)
    except ParseError:
        raise
    except (KnotSelmerError, ArithmeticError, ValueError) as exc:
        doc["setup"] = {"status": "failed", "error": f"{type(exc).__name__}: {exc}"}
        doc["status"] = "failed"
        timings["setup"] = time.perf_counter() - t0
        return Report(doc, timings)
    timings["setup"] = time.perf_counter() - t0
    doc["ring"] = _ring_doc(job, ctx.ring)
    doc["precision"] = _precision(ctx.ring)
    doc["setup"] = {"status": "ok", "representation": "verified: det = 1 and all relators map to 1"}
    state = {"selmer": [], "labels": {}}
    ok = True
    for i, t in enumerate(job.tasks):
        if task_filter and t.kind != task_filter:
            continue
        entry = {"index": i, "kind": t.kind, "line": t.line}
        if t.label:
            entry["label"] = t.label
        start = time.perf_counter()
        try:
            result, warnings, passed = TASKS[t.kind](ctx, t, state)
            entry["status"] = "ok" if passed else "failed"
            entry["result"] = result
            entry["warnings"] = warnings
        except ParseError:
            raise
        except (KnotSelmerError, ArithmeticError, ValueError) as exc:
            entry["status"] = "failed"
            entry["error"] = f"{type(exc).__name__}: {exc}"
        timings[i] = time.perf_counter() - start
        ok = ok and entry["status"] == "ok"
        doc["tasks"].append(entry)
    doc["status"] = "ok" if ok else "failed"
    return Report(doc, timings)


def _expr(ctx, t, key):
    return Evaluator(ctx.ring, ctx.env, t.line).scalar(t.asts[key])


def task_selmer(ctx, t, state):
    o = t.options
    mode = o.get("gamma", "meridian")
    P = ctx.rep.presentation
    word = P.parse_word(o["word"]) if "word" in o else None
    spec = GammaSpec(mode, word=word,
                     T_mu=_expr(ctx, t, "T_mu") if "T_mu" in o else None,
                     T_lambda=_expr(ctx, t, "T_lambda") if "T_lambda" in o else None)
    degrees = parse_degrees(o.get("degrees", "0..1"), t.line)
    res = selmer(ctx.rep, spec, degrees)
    symbol = "𝒪" if isinstance(ring_tower(ctx.ring)[0], QuadraticIntegers) else "A"
    out = {
        "gamma": {"mode": mode, "word": format_word(res.gamma, P.generators)},
        "v0": [elem_doc(x) for x in res.v0],
        "assumptions": {"A1": bool(res.a1), "A2": res.a2},
        "fitting": {str(d): (elem_doc(v) if v is not None else None) for d, v in sorted(res.fitting.items())},
        "L": elem_doc(res.L) if res.L is not None else None,
        "torsion": res.is_torsion,
        "module": res.module(symbol),
    }
    if res.minor_lists:
        out["minors"] = {str(d): [elem_doc(x) for x in v] for d, v in sorted(res.minor_lists.items())}
    if res.divisors is not None:
        out["elementary_divisors"] = [elem_doc(x) for x in res.divisors]
        out["free_rank"] = res.free_rank
    if res.L is not None:
        out["regular"] = res.L.is_unit()
    passed = True
    if "expect_L" in o:
        want = _expr(ctx, t, "expect_L")
        match = res.L is not None and associates(res.L, want)
        out["expectation"] = {"L": o["expect_L"], "matches": match}
        passed = match
    state["selmer"].append((mode, res))
    if t.label:
        state["labels"][t.label] = res.L
    return out, list(res.warnings), passed


def _L_lambda(ctx, t, state):
    ref = t.options.get("L_lambda")
    if ref is None:
        return None, None
    if ref == "@longitude":
        for mode, res in reversed(state["selmer"]):
            if mode in ("longitude", "longitude_porti") and res.L is not None:
                return res.L, ref
        raise KnotSelmerError("L_lambda=@longitude: no earlier longitude Selmer result")
    if ref.startswith("@"):
        val = state["labels"].get(ref[1:])
        if val is None:
            raise KnotSelmerError(f"L_lambda={ref}: the referenced task produced no L")
        return val, ref
    return _expr(ctx, t, "L_lambda"), ref


def task_two_variable(ctx, t, state):
    L_lam, ref = _L_lambda(ctx, t, state)
    var = t.options.get("var", "t")
    res = two_var_selmer(ctx.rep, L_lam, var=var)
    out = {
        "variable": var,
        "phi": elem_doc(res.phi),
        "phi_normalized": elem_doc(res.phi.normal()) if not res.phi.is_zero() else None,
        "quotient": elem_doc(res.quotient) if res.quotient is not None else None,
        "quotient_at_1": elem_doc(res.at_one) if res.at_one is not None else None,
        "vanishing_check": {"ok": res.vanishing_ok, "det": elem_doc(res.vanishing_det)},
        "samples": [_sample_doc(row) for row in sample_table(res.phi)] if not res.phi.is_zero() else [],
    }
    if L_lam is not None:
        out["conjecture"] = {"L_lambda": elem_doc(ctx.ring(L_lam)), "source": ref,
                             "verdict": res.conjecture, "detail": res.conjecture_detail}
    passed = True
    if "expect_phi" in t.options:
        Lring = res.phi.ring
        env = {k: Lring(v) for k, v in ctx.env.items()}
        env[var] = Lring.gen
        want = Evaluator(Lring, env, t.line).scalar(t.asts["expect_phi"])
        match = associates(res.phi, want)
        out["expectation"] = {"phi": t.options["expect_phi"], "matches": match}
        passed = match
    if t.label and res.at_one is not None:
        state["labels"][t.label] = res.at_one
    return out, list(res.warnings), passed


def _sample_doc(row):
    out = dict(row)
    v = row["value"]
    out["value"] = elem_doc(v) if not isinstance(v, int) else {"text": str(v), "data": v}
    return out


def _residual(ctx, t):
    R = ctx.ring
    if "p" in t.options:
        F = PrimeField(int(t.options["p"]))
    else:
        try:
            F = R.residue_field()
        except KnotSelmerError:
            raise KnotSelmerError("residual: give p=... for a ring that is not local") from None
        if not isinstance(F, PrimeField):
            raise KnotSelmerError("residual: give p=... and images=... for this tower")
    ev = Evaluator(F, {}, t.line)
    images = {k: ev.scalar(v) for k, v in parse_images(t.options.get("images", ""), t.line).items()}
    red = residual_rep(ctx.rep, F, images)
    verified = rep_from_assignment(red.presentation, [M.rows() for M in red.images], ring=F)
    return F, verified


def _matrices_doc(rep):
    return {g: [[elem_doc(x) for x in row] for row in M.rows()]
            for g, M in zip(rep.presentation.generators, rep.images)}


def task_residual(ctx, t, state):
    F, red = _residual(ctx, t)
    return {"field": F.name(), "matrices": _matrices_doc(red)}, [], True


def task_irreducibility(ctx, t, state):
    F, red = _residual(ctx, t)
    irr = absolutely_irreducible(red)
    return {"field": F.name(), "matrices": _matrices_doc(red), "absolutely_irreducible": irr}, [], True


TASKS = {
    "selmer": task_selmer,
    "two_variable": task_two_variable,
    "conjecture_check": task_two_variable,
    "residual": task_residual,
    "irreducibility": task_irreducibility,
}
