"""Line-oriented job files: parsing, validation and construction of the input data.

A job file is a sequence of directives, one per line; '#' starts a comment.
See docs/jobfile.md for the grammar.
"""

import shlex
from dataclasses import dataclass, field

from ..errors import KnotSelmerError, ParseError
from ..rings import (QQ, PAdicIntegers, PowerSeriesRing, PrimeField, QuadraticIntegers,
                     SimpleExtension)
from ..representation import rep_from_assignment
from ..words import Presentation, parse_word, relator_from_relation
from .expr import Evaluator, Parser, Poly, free_names, parse_expr

BASE_KINDS = ("rationals", "prime_field", "padic", "quadratic_integers")
TASK_OPTIONS = {
    "selmer": {"gamma", "word", "degrees", "T_mu", "T_lambda", "expect_L", "label"},
    "two_variable": {"L_lambda", "expect_phi", "var", "label"},
    "conjecture_check": {"L_lambda", "expect_phi", "var", "label"},
    "residual": {"p", "images", "label"},
    "irreducibility": {"p", "images", "label"},
}
EXPR_OPTIONS = {"T_mu", "T_lambda", "expect_L", "L_lambda"}
RESERVED = {"sqrt", "root"}


@dataclass
class RingLine:
    kind: str
    args: dict
    line: int


@dataclass
class Let:
    name: str
    text: str
    ast: tuple
    line: int


@dataclass
class Image:
    generator: str
    texts: list
    asts: list
    line: int


@dataclass
class TaskSpec:
    kind: str
    options: dict
    line: int
    asts: dict = field(default_factory=dict)

    @property
    def label(self):
        return self.options.get("label")


@dataclass
class JobFile:
    name: str = "job"
    title: str = ""
    generators: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    meridian: str = None
    longitude: str = None
    rings: list = field(default_factory=list)
    lets: list = field(default_factory=list)
    images: list = field(default_factory=list)
    tasks: list = field(default_factory=list)
    presentation: Presentation = None

    def ring_names(self):
        """Names introduced by the ring tower, in order."""
        out = []
        for r in self.rings:
            if "name" in r.args:
                out.append(r.args["name"])
        return out

    @property
    def series_var(self):
        for r in self.rings:
            if r.kind == "series":
                return r.args["name"]
        return None


def _split_directive(raw):
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None, None
    parts = text.split(None, 1)
    return parts[0], (parts[1].strip() if len(parts) > 1 else "")


def _int(text, what, lineno):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be an integer, got {text!r}", lineno) from None


def _ident(text, what, lineno):
    if not text.isidentifier():
        raise ParseError(f"{what} must be an identifier, got {text!r}", lineno)
    if text in RESERVED:
        raise ParseError(f"{text!r} is reserved", lineno)
    return text


def _parse_ring(rest, lineno):
    words = rest.split()
    if not words:
        raise ParseError("ring: missing kind", lineno)
    kind = words[0]
    if kind == "rationals":
        if len(words) != 1:
            raise ParseError("usage: ring rationals", lineno)
        return RingLine(kind, {}, lineno)
    if kind == "prime_field":
        if len(words) != 2:
            raise ParseError("usage: ring prime_field P", lineno)
        return RingLine(kind, {"p": _int(words[1], "p", lineno)}, lineno)
    if kind == "padic":
        if len(words) != 3:
            raise ParseError("usage: ring padic P N", lineno)
        return RingLine(kind, {"p": _int(words[1], "p", lineno), "N": _int(words[2], "N", lineno)}, lineno)
    if kind == "quadratic_integers":
        if len(words) != 3:
            raise ParseError("usage: ring quadratic_integers D NAME", lineno)
        return RingLine(kind, {"d": _int(words[1], "D", lineno),
                               "name": _ident(words[2], "generator name", lineno)}, lineno)
    if kind == "series":
        if len(words) != 3:
            raise ParseError("usage: ring series NAME N", lineno)
        return RingLine(kind, {"name": _ident(words[1], "series variable", lineno),
                               "N": _int(words[2], "N", lineno)}, lineno)
    if kind == "extension":
        head, sep, poly = rest[len("extension"):].partition(":")
        if not sep:
            raise ParseError("usage: ring extension NAME : MINPOLY", lineno)
        name = _ident(head.strip(), "generator name", lineno)
        col0 = rest.index(":") + len("ring ") + 1
        return RingLine(kind, {"name": name, "text": poly.strip(),
                               "ast": parse_expr(poly, lineno, col0)}, lineno)
    raise ParseError(f"unknown ring kind {kind!r}", lineno)


def _parse_matrix(text, lineno, col0):
    p = Parser(text, lineno, col0)
    p.take("[")
    asts = []
    for sep in (",", ";", ",", "]"):
        asts.append(p.expr())
        p.take(sep)
    p.take("end")
    return asts


def _matrix_texts(text):
    # split on top-level ',' and ';' inside the outer brackets
    body = text.strip()[1:-1]
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in ",;":
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return out


def _parse_task(rest, lineno):
    try:
        words = shlex.split(rest)
    except ValueError as exc:
        raise ParseError(f"task: {exc}", lineno) from None
    if not words:
        raise ParseError("task: missing kind", lineno)
    kind = words[0]
    if kind not in TASK_OPTIONS:
        raise ParseError(f"unknown task {kind!r} (known: {', '.join(TASK_OPTIONS)})", lineno)
    opts = {}
    for w in words[1:]:
        key, sep, val = w.partition("=")
        if not sep:
            raise ParseError(f"task option {w!r} is not of the form key=value", lineno)
        if key not in TASK_OPTIONS[kind]:
            raise ParseError(f"task {kind} has no option {key!r}", lineno)
        opts[key] = val
    spec = TaskSpec(kind, opts, lineno)
    for key in EXPR_OPTIONS & opts.keys():
        if not opts[key].startswith("@"):
            spec.asts[key] = parse_expr(opts[key], lineno)
    if "expect_phi" in opts:
        spec.asts["expect_phi"] = parse_expr(opts["expect_phi"], lineno)
    return spec


def parse_job(text, defines=None):
    """Parse and validate a job file. `defines` overrides let-bound constants."""
    job = JobFile()
    for lineno, raw in enumerate(text.splitlines(), 1):
        key, rest = _split_directive(raw)
        if key is None:
            continue
        if key in ("name", "title"):
            if key == "name" and (not rest or " " in rest):
                raise ParseError("name must be a single token", lineno)
            setattr(job, key, rest)
        elif key == "generators":
            if job.generators:
                raise ParseError("generators declared twice", lineno)
            job.generators = [_ident(g, "generator", lineno) for g in rest.split()]
        elif key in ("relation", "relator"):
            job.relations.append((rest, lineno))
        elif key in ("meridian", "longitude"):
            setattr(job, key, (rest, lineno))
        elif key == "ring":
            job.rings.append(_parse_ring(rest, lineno))
        elif key == "let":
            name, sep, expr = rest.partition("=")
            if not sep:
                raise ParseError("usage: let NAME = EXPR", lineno)
            name = _ident(name.strip(), "constant name", lineno)
            col0 = len("let ") + rest.index("=") + 1
            job.lets.append(Let(name, expr.strip(), parse_expr(expr, lineno, col0), lineno))
        elif key == "image":
            gen, sep, mat = rest.partition("=")
            if not sep:
                raise ParseError("usage: image GEN = [a, b; c, d]", lineno)
            col0 = len("image ") + rest.index("=") + 1
            job.images.append(Image(gen.strip(), _matrix_texts(mat), _parse_matrix(mat, lineno, col0), lineno))
        elif key == "task":
            job.tasks.append(_parse_task(rest, lineno))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    for name, expr in (defines or {}).items():
        for i, let in enumerate(job.lets):
            if let.name == name:
                job.lets[i] = Let(name, expr, parse_expr(expr, let.line), let.line)
                break
        else:
            raise ParseError(f"--define {name}: no constant named {name!r}")
    _validate(job)
    return job


def _validate(job):
    if not job.generators:
        raise ParseError("no generators declared")
    gens = job.generators

    def word(text, lineno):
        try:
            return parse_word(text, gens)
        except KnotSelmerError as exc:
            raise ParseError(str(exc), lineno) from None
        except (ValueError, KeyError) as exc:
            raise ParseError(f"bad word {text!r}: {exc}", lineno) from None

    rels = []
    for text, lineno in job.relations:
        if "=" in text:
            a, b = text.split("=", 1)
            rels.append(relator_from_relation(word(a, lineno), word(b, lineno)))
        else:
            rels.append(word(text, lineno))
    mer = word(job.meridian[0], job.meridian[1]) if job.meridian else (1,)
    lon = word(job.longitude[0], job.longitude[1]) if job.longitude else None
    P = Presentation(list(gens), rels, mer, lon)
    problems = P.validate()
    if problems:
        raise ParseError("presentation: " + "; ".join(problems))
    job.presentation = P

    if not job.rings:
        raise ParseError("no ring declared")
    first = job.rings[0]
    if first.kind not in BASE_KINDS:
        raise ParseError(f"the first ring line must be one of {', '.join(BASE_KINDS)}", first.line)
    declared = set()
    for i, r in enumerate(job.rings):
        if i > 0 and r.kind in BASE_KINDS:
            raise ParseError(f"{r.kind} can only be the bottom of the tower", r.line)
        if r.kind == "series" and i != len(job.rings) - 1:
            raise ParseError("the series layer must be the last ring line", r.line)
        if r.kind == "extension":
            _check_names(r.args["ast"], declared | {r.args["name"]}, r.line)
        if "name" in r.args:
            if r.args["name"] in declared:
                raise ParseError(f"name {r.args['name']!r} declared twice", r.line)
            declared.add(r.args["name"])
    for let in job.lets:
        _check_names(let.ast, declared, let.line)
        if let.name in declared:
            raise ParseError(f"name {let.name!r} declared twice", let.line)
        declared.add(let.name)
    images = {}
    for im in job.images:
        if im.generator not in gens:
            raise ParseError(f"image for unknown generator {im.generator!r}", im.line)
        if im.generator in images:
            raise ParseError(f"image for {im.generator} given twice", im.line)
        for a in im.asts:
            _check_names(a, declared, im.line)
        images[im.generator] = im
    missing = [g for g in gens if g not in images]
    if missing:
        raise ParseError(f"no image for generator(s) {', '.join(missing)}")
    labels = set()
    for t in job.tasks:
        var = t.options.get("var", "t")
        for key, a in t.asts.items():
            allowed = declared | ({var} if key == "expect_phi" else set())
            _check_names(a, allowed, t.line, var if key != "expect_phi" else None)
        if "word" in t.options:
            word(t.options["word"], t.line)
        if t.kind == "selmer":
            gamma = t.options.get("gamma", "meridian")
            if gamma not in ("meridian", "longitude", "longitude_porti", "word"):
                raise ParseError(f"unknown gamma {gamma!r}", t.line)
            if gamma == "word" and "word" not in t.options:
                raise ParseError("gamma=word needs word=...", t.line)
            if gamma == "longitude_porti" and not {"T_mu", "T_lambda"} <= t.options.keys():
                raise ParseError("gamma=longitude_porti needs T_mu and T_lambda", t.line)
            if gamma in ("longitude", "longitude_porti") and lon is None:
                raise ParseError("this task needs a longitude declaration", t.line)
            parse_degrees(t.options.get("degrees", "0..1"), t.line)
        if t.kind in ("residual", "irreducibility"):
            if "p" in t.options:
                _int(t.options["p"], "p", t.line)
            for k, v in parse_images(t.options.get("images", ""), t.line).items():
                if k not in declared:
                    raise ParseError(f"images: {k!r} is not a ring generator", t.line)
                _check_names(v, set(), t.line)
        ref = t.options.get("L_lambda", "")
        if ref.startswith("@") and ref != "@longitude" and ref[1:] not in labels:
            raise ParseError(f"L_lambda={ref}: no earlier task labelled {ref[1:]!r}", t.line)
        if t.kind == "conjecture_check" and "L_lambda" not in t.options:
            t.options["L_lambda"] = "@longitude"
        if t.label:
            labels.add(t.label)


def _check_names(ast, allowed, lineno, twovar=None):
    for name in sorted(free_names(ast)):
        if name not in allowed:
            if name == (twovar or "t"):
                raise ParseError(f"type mismatch: {name!r} is the two-variable indeterminate "
                                 "and may only appear in expect_phi", lineno)
            raise ParseError(f"undeclared name {name!r}", lineno)


def parse_degrees(text, lineno=None):
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            out = tuple(range(int(a), int(b) + 1))
        else:
            out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"degrees must look like 0..1 or 0,1, got {text!r}", lineno) from None
    if not out or min(out) < 0:
        raise ParseError("degrees must be non-negative", lineno)
    return out


def parse_images(text, lineno=None):
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        k, sep, v = part.partition("=")
        if not sep:
            raise ParseError(f"images: {part!r} is not of the form name=value", lineno)
        out[k.strip()] = parse_expr(v, lineno)
    return out


@dataclass
class Context:
    """The evaluated input: ring tower, constants and the representation."""

    job: JobFile
    ring: object
    env: dict
    rep: object
    layers: list


def build_ring(job, precision_s=None, precision_p=None):
    """Construct the tower; returns (ring, env of generator names, layers)."""
    env = {}
    layers = []
    R = None
    for r in job.rings:
        a = r.args
        if r.kind == "rationals":
            R = QQ
        elif r.kind == "prime_field":
            R = PrimeField(a["p"])
        elif r.kind == "padic":
            R = PAdicIntegers(a["p"], precision_p or a["N"])
        elif r.kind == "quadratic_integers":
            R = QuadraticIntegers(a["d"], a["name"])
            env[a["name"]] = R.gen
        elif r.kind == "extension":
            ev = Evaluator(R, env, r.line)
            gen = Poly(R, [0, 1])
            p = ev(a["ast"], {a["name"]: gen})
            if not isinstance(p, Poly) or len(p.coeffs) < 2:
                raise ParseError(f"minimal polynomial of {a['name']} must have positive degree", r.line)
            if not p.coeffs[-1] == R.one_elem:
                raise ParseError(f"minimal polynomial of {a['name']} must be monic", r.line)
            R = SimpleExtension(R, p.coeffs, a["name"])
            env[a["name"]] = R.gen
        elif r.kind == "series":
            R = PowerSeriesRing(R, a["name"], precision_s or a["N"])
            env[a["name"]] = R.gen
        layers.append(R)
    return R, env, layers


def build_context(job, precision_s=None, precision_p=None):
    R, env, layers = build_ring(job, precision_s, precision_p)
    for let in job.lets:
        env[let.name] = Evaluator(R, env, let.line).scalar(let.ast)
    mats = []
    by_gen = {im.generator: im for im in job.images}
    for g in job.generators:
        im = by_gen[g]
        ev = Evaluator(R, env, im.line)
        e = [ev.scalar(a) for a in im.asts]
        mats.append([[e[0], e[1]], [e[2], e[3]]])
    rep = rep_from_assignment(job.presentation, mats, ring=R)
    return Context(job, R, env, rep, layers)
