"""Rendering of report documents: human-readable text and versioned JSON."""

import json
import re

from .runner import SCHEMA, VERSION, Report


def emit(report, fmt="text"):
    if fmt == "structured":
        return emit_structured(report)
    if fmt == "text":
        return emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def emit_structured(report):
    return json.dumps(report.doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_structured(text):
    """Inverse of emit_structured (timings are not part of the document)."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError("not a knotselmer report")
    if doc.get("version") != VERSION:
        raise ValueError(f"unsupported report version {doc.get('version')}")
    return Report(doc)


def _prettifier(doc):
    q = doc.get("ring", {}).get("quadratic")
    if not q:
        return lambda s: s
    pat = re.compile(r"\b" + re.escape(q["name"]) + r"\b")
    root = "√" + str(q["d"]).replace("-", "−")
    return lambda s: pat.sub(root, s)


def _t(x, pretty):
    return "n/a" if x is None else pretty(x["text"])


def emit_text(report):
    doc = report.doc
    pretty = _prettifier(doc)
    inp = doc["input"]
    out = []
    head = f"job: {doc['job']['name']}"
    if doc["job"].get("title"):
        head += f"  ({doc['job']['title']})"
    out.append(head)
    rels = ", ".join(inp["relators"])
    out.append(f"presentation: < {' '.join(inp['generators'])} | {rels} >")
    out.append(f"meridian: {inp['meridian']}")
    if inp.get("longitude"):
        out.append(f"longitude: {inp['longitude']}")
    if "ring" in doc:
        out.append("ring: " + " ⊂ ".join(doc["ring"]["tower"]))
        prec = doc["precision"]
        bits = [f"s^{prec['s']}" if prec["s"] else None, f"p^{prec['p']}" if prec["p"] else None]
        bits = [b for b in bits if b]
        if bits:
            out.append("precision: " + ", ".join(bits))
    for name, text in inp["constants"].items():
        out.append(f"  {name} = {text}")
    for g, texts in inp["images"].items():
        out.append(f"  {g} -> [{texts[0]}, {texts[1]}; {texts[2]}, {texts[3]}]")
    setup = doc.get("setup", {})
    if setup.get("status") == "failed":
        out.append(f"setup FAILED: {setup['error']}")
    elif setup:
        out.append(f"representation {setup['representation']}")
        if "setup" in report.timings:
            out.append(f"  time: {report.timings['setup']:.2f} s")
    symbol = doc.get("ring", {}).get("symbol", "A")
    for e in doc["tasks"]:
        out.append("")
        title = f"[{e['kind']}]" + (f" {e['label']}" if e.get("label") else "")
        out.append(f"{title}  (line {e['line']})")
        if "error" in e:
            out.append(f"  FAILED: {e['error']}")
        else:
            out.extend("  " + line for line in _RENDER[e["kind"]](e["result"], pretty, symbol))
            for w in e.get("warnings", []):
                out.append(f"  warning: {w}")
            if e["status"] != "ok":
                out.append("  FAILED: expectation not met")
        if e["index"] in report.timings:
            out.append(f"  time: {report.timings[e['index']]:.2f} s")
    out.append("")
    out.append(f"status: {doc['status']}")
    return "\n".join(out) + "\n"


def _render_selmer(r, pretty, symbol):
    g = r["gamma"]
    if g["mode"] == "longitude_porti":
        out = [f"gamma: longitude_porti (cycle {g['word']} rescaled by T_lambda/T_mu)"]
    else:
        out = [f"gamma: {g['mode']} ({g['word']})"]
    out.append("v0 = (" + ", ".join(_t(x, pretty) for x in r["v0"]) + ")")
    a2 = {True: "ok", False: "fails (image of partial1 is free of rank 3)", None: "undecided"}[r["assumptions"]["A2"]]
    out.append(f"(A1) ok, (A2) {a2}")
    for d, v in r["fitting"].items():
        out.append(f"Fitt_{d} = ({_t(v, pretty)})" if v is not None else f"Fitt_{d}: unavailable")
    out.append(f"L_gamma = {_t(r['L'], pretty)}")
    for d, vals in r.get("minors", {}).items():
        out.append(f"Fitt_{d} minors (no gcd available): " + ", ".join(_t(x, pretty) for x in vals))
    if "elementary_divisors" in r:
        out.append("elementary divisors: " + ", ".join(_t(x, pretty) for x in r["elementary_divisors"]))
    if r["module"] is not None:
        out.append(f"Sel ≅ {pretty(r['module'])}")
    if r.get("regular") is not None:
        out.append("gamma-regular (Sel = 0): " + ("yes" if r["regular"] else "no"))
    out.append("torsion: " + ("yes" if r["torsion"] else "no"))
    if "expectation" in r:
        out.append(f"expected L ≐ {r['expectation']['L']}: {'match' if r['expectation']['matches'] else 'MISMATCH'}")
    return out


def _render_twovar(r, pretty, symbol):
    out = [f"Phi({r['variable']}) = {_t(r['phi'], pretty)}"]
    if r["phi_normalized"] is not None and r["phi_normalized"]["text"] != r["phi"]["text"]:
        out.append(f"Phi normalized = {_t(r['phi_normalized'], pretty)}")
    out.append(f"Phi/({r['variable']} - 1) at {r['variable']} = 1: {_t(r['quotient_at_1'], pretty)}")
    out.append("vanishing check det(t R(g1) - 1) != 0: " + ("ok" if r["vanishing_check"]["ok"] else "fails"))
    for row in r.get("samples", []):
        at = ", ".join(f"{k} = {row[k]}" for k in ("s", "t") if k in row)
        mod = f" (mod {row['modulus']})" if "modulus" in row else ""
        out.append(f"Phi({at}) = {_t(row['value'], pretty)}{mod}")
    if "conjecture" in r:
        c = r["conjecture"]
        out.append(f"L_lambda = {_t(c['L_lambda'], pretty)}  (from {c['source']})")
        out.append(f"Conjecture: {c['verdict']}")
        out.append(f"  {pretty(c['detail'])}")
    if "expectation" in r:
        out.append(f"expected Phi ≐ {r['expectation']['phi']}: {'match' if r['expectation']['matches'] else 'MISMATCH'}")
    return out


def _render_matrices(r, pretty):
    out = [f"residual field: {r['field']}"]
    for g, rows in r["matrices"].items():
        cells = "; ".join(", ".join(x["text"] for x in row) for row in rows)
        out.append(f"  {g} -> [{cells}]")
    return out


def _render_residual(r, pretty, symbol):
    return _render_matrices(r, pretty)


def _render_irreducibility(r, pretty, symbol):
    return _render_matrices(r, pretty) + [
        "absolutely irreducible: " + ("yes" if r["absolutely_irreducible"] else "no")]


_RENDER = {
    "selmer": _render_selmer,
    "two_variable": _render_twovar,
    "conjecture_check": _render_twovar,
    "residual": _render_residual,
    "irreducibility": _render_irreducibility,
}
