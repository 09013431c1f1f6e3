"""Command-line interface: a line-oriented model format and commands over it.

Grammar (one declaration per line, `#` comments):

    kind cdga|dgc|ainf|linf|dgl|mc
    gen <name> : <integer degree>     cohomological for cdga, else homological
    counit <name>                     dgc only: marks a counital coalgebra
    truncate <N>                      cdga only: dualization degree cutoff
    d <gen> = <sum of product words>        (cdga)       e.g. d c = a^b
    diff <gen> = <sum>                      (dgc, dgl)   e.g. diff s = r
    cop <gen> = <sum of tensor words>       (dgc)        e.g. cop s = g|h - h|g
    D<k> <gen> = <sum of tensor words>      (ainf)       e.g. D3 u = g|g|h
    l<k> ( g1 ^ ... ^ gk ) = <sum>          (linf)       e.g. l2 ( x ^ y ) = z
    mc = <sum>                              (mc)

Scalars are integers or p/q; dgl differentials use bracket words [a,[a,b]].
Identifiers may contain letters, digits, _, ' and . (dotted names appear in
Hom and reduced-model bases).  Serialization uses the same grammar, so
parse(serialize(S)) round-trips; ordering is canonical and output is
byte-stable.

Exit codes: 0 ok, 1 usage, 2 parse/validation, 3 axiom failure, 4 bound
exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .core import Element, GradedMap, GradedSpace, Word, canonical_word
from .functors import (
    CDGA,
    FiniteCDGA,
    FreeLieDGL,
    FreeLieElement,
    cochain,
    dual_coalgebra,
    lie_bracket,
    linf_from_cdga,
    quillen,
    quillen_differential_direct,
)
from .invariants import (
    bracket_length,
    conilpotence,
    differential_length,
    hspace_certificate,
    whitehead_length,
)
from .mapping import component_model, mapping_space_model, reduced_bs_cochain
from .structures import AInfCoalgebra, LInfAlgebra, mc_check
from .transfer import ChainComplex, homology_decomposition, retract_from_decomposition, transfer_ainf


class ParseError(Exception):
    def __init__(self, path, line, col, msg):
        super().__init__(f"{path}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


class ValidationError(Exception):
    pass


class AxiomError(Exception):
    pass


class BoundError(Exception):
    pass


IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'.]*")
NUMBER = re.compile(r"\d+(/\d+)?")


@dataclass
class ModelFile:
    kind: str
    space: GradedSpace
    payload: object
    options: dict


# ---------------------------------------------------------------------------
# tokenizing and term parsing


def _tokens(path, lineno, text):
    """Yield (token, col) pairs; symbols are single characters."""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            return
        m = IDENT.match(text, i)
        if m:
            yield m.group(0), i
            i = m.end()
            continue
        m = NUMBER.match(text, i)
        if m:
            yield m.group(0), i
            i = m.end()
            continue
        if ch in "^|+-=:()[]/,*":
            yield ch, i
            i += 1
            continue
        raise ParseError(path, lineno, i, f"unexpected character {ch!r}")


class _TermParser:
    """Sums of scalar-weighted words over a known generator set."""

    def __init__(self, path, lineno, toks, space: GradedSpace, kind: str):
        self.path = path
        self.lineno = lineno
        self.toks = list(toks)
        self.pos = 0
        self.space = space
        self.kind = kind  # "m" product words, "t" tensor words, "lie" brackets

    def error(self, msg):
        col = self.toks[self.pos][1] if self.pos < len(self.toks) else 0
        raise ParseError(self.path, self.lineno, col, msg)

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def next(self):
        if self.pos >= len(self.toks):
            self.error("unexpected end of line")
        tok = self.toks[self.pos][0]
        self.pos += 1
        return tok

    def parse_sum(self):
        """Returns a list of (Fraction, word-factors | bracket-tree | None)."""
        out = []
        sign = 1
        tok = self.peek()
        if tok == "-":
            self.next()
            sign = -1
        elif tok == "+":
            self.next()
        while True:
            out.append(self.parse_term(sign))
            tok = self.peek()
            if tok is None:
                return out
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            else:
                self.error(f"expected + or -, got {tok!r}")
            self.next()

    def parse_term(self, sign):
        coeff = Fraction(sign)
        tok = self.peek()
        if tok is not None and NUMBER.fullmatch(tok):
            coeff *= Fraction(self.next())
            if self.peek() == "*":
                self.next()
            if self.peek() is None or self.peek() in "+-":
                if coeff == 0:
                    return coeff, None
                self.error("scalar term without a word (only 0 is allowed)")
        if self.kind == "lie":
            return coeff, self.parse_bracket()
        factors = [self.parse_name()]
        sep = "^" if self.kind == "m" else "|"
        while self.peek() == sep:
            self.next()
            factors.append(self.parse_name())
        return coeff, tuple(factors)

    def parse_name(self):
        tok = self.next()
        if not IDENT.fullmatch(tok):
            self.error(f"expected a generator name, got {tok!r}")
        if tok not in self.space:
            self.error(f"unknown generator {tok!r}")
        return tok

    def parse_bracket(self):
        if self.peek() == "[":
            self.next()
            left = self.parse_bracket()
            if self.next() != ",":
                self.error("expected , in bracket")
            right = self.parse_bracket()
            if self.next() != "]":
                self.error("expected closing ]")
            return (left, right)
        return self.parse_name()


def _element(space, items, kind):
    return Element.make(space, [(c, kind, fs) for c, fs in items if fs is not None])


def _lie_element(space, items):
    total = Element.zero(space)
    pres = []
    for c, tree in items:
        if tree is None:
            continue
        el = _tree_to_element(space, tree)
        total = total + c * el
        pres.append((c, tree))
    return FreeLieElement(total), pres


def _tree_to_element(space, tree):
    if isinstance(tree, str):
        return Element.gen(space, tree)
    return lie_bracket(_tree_to_element(space, tree[0]),
                       _tree_to_element(space, tree[1]))


# ---------------------------------------------------------------------------
# file parsing


def parse(path: str) -> ModelFile:
    with open(path) as fh:
        lines = fh.read().splitlines()
    kind = None
    gens: list[tuple[str, int]] = []
    body: list[tuple[int, list]] = []
    options: dict = {}
    space = None
    for lineno, raw in enumerate(lines, start=1):
        toks = list(_tokens(path, lineno, raw))
        if not toks:
            continue
        head = toks[0][0]
        if kind is None:
            if head != "kind" or len(toks) != 2:
                raise ParseError(path, lineno, toks[0][1],
                                 "file must start with: kind <cdga|dgc|ainf|linf|dgl|mc>")
            kind = toks[1][0]
            if kind not in ("cdga", "dgc", "ainf", "linf", "dgl", "mc"):
                raise ParseError(path, lineno, toks[1][1], f"unknown kind {kind!r}")
            continue
        if head == "gen":
            if len(toks) < 4 or toks[2][0] != ":":
                raise ParseError(path, lineno, toks[0][1], "expected: gen <name> : <degree>")
            name = toks[1][0]
            sign = 1
            di = 3
            if toks[3][0] == "-":
                sign = -1
                di = 4
            if di >= len(toks) or not toks[di][0].isdigit():
                raise ParseError(path, lineno, toks[-1][1], "expected an integer degree")
            gens.append((name, sign * int(toks[di][0])))
            continue
        if head == "counit":
            options["counit"] = toks[1][0]
            continue
        if head == "truncate":
            options["truncate"] = int(toks[1][0])
            continue
        body.append((lineno, toks))

    if kind is None:
        raise ParseError(path, 1, 0, "empty file")
    if kind == "cdga":
        space = GradedSpace.of(gens)
    else:
        space = GradedSpace.of(gens)

    def term_parser(lineno, toks, word_kind):
        return _TermParser(path, lineno, toks, space, word_kind)

    try:
        if kind == "cdga":
            diff = {}
            for lineno, toks in body:
                if toks[0][0] != "d" or len(toks) < 3 or toks[2][0] != "=":
                    raise ParseError(path, lineno, toks[0][1], "expected: d <gen> = <sum>")
                g = toks[1][0]
                if g not in space:
                    raise ParseError(path, lineno, toks[1][1], f"unknown generator {g!r}")
                items = term_parser(lineno, toks[3:], "m").parse_sum()
                el = _element(space, items, "m")
                if el and el.degree != space.degree(g) + 1:
                    raise ParseError(path, lineno, toks[0][1],
                                     f"d({g}) must have degree {space.degree(g) + 1}, "
                                     f"got {el.degree}")
                if el:
                    diff[g] = el
            payload = CDGA(space, diff)
        elif kind == "dgc":
            dtab, ctab = {}, {}
            for lineno, toks in body:
                head = toks[0][0]
                if head not in ("diff", "cop") or len(toks) < 3 or toks[2][0] != "=":
                    raise ParseError(path, lineno, toks[0][1],
                                     "expected: diff|cop <gen> = <sum>")
                g = toks[1][0]
                if g not in space:
                    raise ParseError(path, lineno, toks[1][1], f"unknown generator {g!r}")
                items = term_parser(lineno, toks[3:], "t").parse_sum()
                el = _element(space, items, "t")
                want = space.degree(g) + (-1 if head == "diff" else 0)
                if el and el.degree != want:
                    raise ParseError(path, lineno, toks[0][1],
                                     f"{head} {g} must have degree {want}, "
                                     f"got {el.degree}")
                if el:
                    (dtab if head == "diff" else ctab)[g] = el
            ops = {}
            if dtab:
                ops[1] = GradedMap(space, space, -1,
                                   {Word.tensor(g): el for g, el in dtab.items()})
            if ctab:
                ops[2] = GradedMap(space, space, 0,
                                   {Word.tensor(g): el for g, el in ctab.items()})
            payload = AInfCoalgebra(space, ops, counit=options.get("counit"))
        elif kind == "ainf":
            tabs: dict[int, dict] = {}
            for lineno, toks in body:
                m = re.fullmatch(r"D(\d+)", toks[0][0])
                if not m or len(toks) < 3 or toks[2][0] != "=":
                    raise ParseError(path, lineno, toks[0][1], "expected: D<k> <gen> = <sum>")
                k = int(m.group(1))
                g = toks[1][0]
                if g not in space:
                    raise ParseError(path, lineno, toks[1][1], f"unknown generator {g!r}")
                items = term_parser(lineno, toks[3:], "t").parse_sum()
                el = _element(space, items, "t")
                if el and el.degree != space.degree(g) + k - 2:
                    raise ParseError(path, lineno, toks[0][1],
                                     f"D{k} {g} must have degree "
                                     f"{space.degree(g) + k - 2}, got {el.degree}")
                if el:
                    tabs.setdefault(k, {})[Word.tensor(g)] = el
            ops = {k: GradedMap(space, space, k - 2, tab) for k, tab in tabs.items()}
            payload = AInfCoalgebra(space, ops, counit=options.get("counit"))
        elif kind == "linf":
            tabs = {}
            for lineno, toks in body:
                m = re.fullmatch(r"l(\d+)", toks[0][0])
                if not m or toks[1][0] != "(":
                    raise ParseError(path, lineno, toks[0][1],
                                     "expected: l<k> ( g1 ^ ... ^ gk ) = <sum>")
                k = int(m.group(1))
                close = next((i for i, t in enumerate(toks) if t[0] == ")"), None)
                if close is None or close + 1 >= len(toks) or toks[close + 1][0] != "=":
                    raise ParseError(path, lineno, toks[0][1], "expected ( ... ) = <sum>")
                names = [t[0] for t in toks[2:close] if t[0] != "^"]
                for nm in names:
                    if nm not in space:
                        raise ParseError(path, lineno, toks[0][1], f"unknown generator {nm!r}")
                if len(names) != k:
                    raise ParseError(path, lineno, toks[0][1],
                                     f"l{k} takes {k} inputs, got {len(names)}")
                w, s = canonical_word(space, "w", tuple(names))
                if w is None:
                    raise ParseError(path, lineno, toks[0][1], "degenerate wedge word")
                items = term_parser(lineno, toks[close + 2:], "t").parse_sum()
                el = _element(space, items, "t")
                want = space.word_degree(w) + k - 2
                if el and el.degree != want:
                    raise ParseError(path, lineno, toks[0][1],
                                     f"l{k} image must have degree {want}, "
                                     f"got {el.degree}")
                if el:
                    tab = tabs.setdefault(k, {})
                    tab[w] = tab.get(w, Element.zero(space)) + Fraction(s) * el
            ops = {
                k: GradedMap(space, space, k - 2, tab, arity=k, in_kind="w")
                for k, tab in tabs.items()
            }
            payload = LInfAlgebra(space, ops)
        elif kind == "dgl":
            diff = {}
            pres = {}
            for lineno, toks in body:
                if toks[0][0] != "diff" or len(toks) < 3 or toks[2][0] != "=":
                    raise ParseError(path, lineno, toks[0][1], "expected: diff <gen> = <sum>")
                g = toks[1][0]
                if g not in space:
                    raise ParseError(path, lineno, toks[1][1], f"unknown generator {g!r}")
                items = term_parser(lineno, toks[3:], "lie").parse_sum()
                el, p = _lie_element(space, items)
                if el:
                    diff[g] = el
                    pres[g] = p
            payload = FreeLieDGL(space, diff, presentation=pres)
            payload.validate()
        elif kind == "mc":
            el = Element.zero(space)
            for lineno, toks in body:
                if toks[0][0] != "mc" or len(toks) < 2 or toks[1][0] != "=":
                    raise ParseError(path, lineno, toks[0][1], "expected: mc = <sum>")
                items = term_parser(lineno, toks[2:], "t").parse_sum()
                el = el + _element(space, items, "t")
            payload = el
        else:  # pragma: no cover
            raise AssertionError(kind)
    except ParseError:
        raise
    except ValueError as exc:
        if "degree" in str(exc):
            raise ValidationError(str(exc)) from exc
        raise AxiomError(str(exc)) from exc
    return ModelFile(kind, space, payload, options)


# ---------------------------------------------------------------------------
# serialization


def fmt_scalar(c: Fraction) -> str:
    return str(c)


def _fmt_terms(el: Element, sep: str) -> str:
    bits = []
    for w, c in el.sorted_items():
        word = sep.join(w.factors)
        if c == 1:
            term = word
        elif c == -1:
            term = f"- {word}"
        elif c < 0:
            term = f"- {fmt_scalar(-c)} {word}"
        else:
            term = f"{fmt_scalar(c)} {word}"
        if bits and not term.startswith("- "):
            term = "+ " + term
        bits.append(term)
    return " ".join(bits) if bits else "0"


def serialize(obj, kind: str | None = None) -> str:
    """Canonical machine-format text for any engine structure."""
    lines = []
    if isinstance(obj, CDGA):
        lines.append("kind cdga")
        for n, d in obj.gens.basis:
            lines.append(f"gen {n} : {d}")
        for g in obj.gens.names:
            el = obj.diff.get(g)
            if el:
                lines.append(f"d {g} = {_fmt_terms(el, '^')}")
    elif isinstance(obj, AInfCoalgebra):
        if obj.is_dgc and kind != "ainf":
            lines.append("kind dgc")
            if obj.counit:
                lines.append(f"counit {obj.counit}")
            for n, d in obj.space.basis:
                lines.append(f"gen {n} : {d}")
            for g in obj.space.names:
                el = obj.delta(1).apply_word(Word.tensor(g))
                if el:
                    lines.append(f"diff {g} = {_fmt_terms(el, '|')}")
            for g in obj.space.names:
                el = obj.delta(2).apply_word(Word.tensor(g))
                if el:
                    lines.append(f"cop {g} = {_fmt_terms(el, '|')}")
        else:
            lines.append("kind ainf")
            if obj.counit:
                lines.append(f"counit {obj.counit}")
            for n, d in obj.space.basis:
                lines.append(f"gen {n} : {d}")
            for k in sorted(obj.ops):
                for g in obj.space.names:
                    el = obj.ops[k].apply_word(Word.tensor(g))
                    if el:
                        lines.append(f"D{k} {g} = {_fmt_terms(el, '|')}")
    elif isinstance(obj, LInfAlgebra):
        lines.append("kind linf")
        for n, d in obj.space.basis:
            lines.append(f"gen {n} : {d}")
        for k in sorted(obj.ops):
            m = obj.ops[k]
            for w in sorted(m.images, key=lambda w: [obj.space.sortkey(f) for f in w.factors]):
                head = " ^ ".join(w.factors)
                lines.append(f"l{k} ( {head} ) = {_fmt_terms(m.images[w], '|')}")
    elif isinstance(obj, FreeLieDGL):
        lines.append("kind dgl")
        for n, d in obj.gens.basis:
            lines.append(f"gen {n} : {d}")
        for g in obj.gens.names:
            img = obj.diff.get(g)
            if img:
                lines.append(f"diff {g} = {_fmt_lie(obj, g)}")
    elif isinstance(obj, Element):
        lines.append("kind mc")
        for n, d in obj.space.basis:
            lines.append(f"gen {n} : {d}")
        lines.append(f"mc = {_fmt_terms(obj, '|')}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def _fmt_lie(M: FreeLieDGL, g: str) -> str:
    pres = M.presentation.get(g)
    if pres:
        bits = []
        for c, tree in pres:
            word = _fmt_bracket(tree)
            if c == 1:
                term = word
            elif c == -1:
                term = f"- {word}"
            elif c < 0:
                term = f"- {fmt_scalar(-c)} {word}"
            else:
                term = f"{fmt_scalar(c)} {word}"
            if bits and not term.startswith("- "):
                term = "+ " + term
            bits.append(term)
        return " ".join(bits)
    # fall back to the Dynkin expansion: t = (1/k) rho(t) weightwise
    img = M.diff[g]
    bits = []
    for k in img.weights():
        comp = img.weight_component(k)
        for w, c in comp.sorted_items():
            # right-normed bracketing: t = (1/k) rho(t) on Lie elements
            fs = w.factors
            tree = fs[-1]
            for f in reversed(fs[:-1]):
                tree = (f, tree)
            word = _fmt_bracket(tree) if len(fs) > 1 else fs[0]
            coeff = c / k
            if coeff == 1:
                term = word
            elif coeff == -1:
                term = f"- {word}"
            elif coeff < 0:
                term = f"- {fmt_scalar(-coeff)} {word}"
            else:
                term = f"{fmt_scalar(coeff)} {word}"
            if bits and not term.startswith("- "):
                term = "+ " + term
            bits.append(term)
    return " ".join(bits) if bits else "0"


def _fmt_bracket(tree) -> str:
    if isinstance(tree, str):
        return tree
    return f"[{_fmt_bracket(tree[0])},{_fmt_bracket(tree[1])}]"


# ---------------------------------------------------------------------------
# commands


def _finite_model(mf: ModelFile) -> FiniteCDGA:
    A = mf.payload
    cutoff = mf.options.get("truncate")
    if cutoff is None:
        if any(d % 2 == 0 for _, d in A.gens.basis):
            raise BoundError(
                "dualizing a CDGA with even generators needs `truncate <N>`"
            )
        cutoff = sum(d for _, d in A.gens.basis)
    return FiniteCDGA(A, max_cohom=cutoff)


def _as_linf(mf: ModelFile) -> LInfAlgebra:
    if mf.kind == "linf":
        return mf.payload
    if mf.kind == "cdga":
        return linf_from_cdga(mf.payload)
    raise BoundError(f"expected a linf or cdga model, got {mf.kind}")


def cmd_check(args) -> int:
    mf = parse(args.file)
    print(f"{args.file}: {mf.kind} ok "
          f"({mf.space.dim} generators)")
    return 0


def cmd_transfer_ainf(args) -> int:
    mf = parse(args.file)
    if mf.kind != "dgc":
        raise BoundError("transfer-ainf expects a dgc model")
    C = mf.payload
    dec = homology_decomposition(ChainComplex(C.space, C.delta(1)))
    r = retract_from_decomposition(dec)
    H = transfer_ainf(C, r, max_k=args.max_arity)
    sys.stdout.write(serialize(H, kind="ainf"))
    return 0


def cmd_quillen(args) -> int:
    mf = parse(args.file)
    if mf.kind != "dgc":
        raise BoundError("quillen expects a dgc model")
    C = mf.payload
    if args.direct:
        dec = homology_decomposition(ChainComplex(C.space, C.delta(1)))
        M = quillen_differential_direct(C, dec)
    else:
        M = quillen(C)
    sys.stdout.write(serialize(M))
    return 0


def cmd_cochain(args) -> int:
    mf = parse(args.file)
    if mf.kind != "linf":
        raise BoundError("cochain expects a linf model")
    sys.stdout.write(serialize(cochain(mf.payload)))
    return 0


def cmd_dualize(args) -> int:
    mf = parse(args.file)
    if mf.kind != "cdga":
        raise BoundError("dualize expects a cdga model")
    full, red = dual_coalgebra(_finite_model(mf))
    sys.stdout.write(serialize(full if args.full else red))
    return 0


def cmd_mapmodel(args) -> int:
    xf = parse(args.xfile)
    yf = parse(args.yfile)
    if xf.kind != "cdga":
        raise BoundError("the source side of mapmodel must be a cdga model")
    L = _as_linf(yf)
    full, red = dual_coalgebra(_finite_model(xf))
    C = red if args.pointed else full
    mm = mapping_space_model(C, L, max_k=args.max_arity,
                             only_binary=args.trees_only == "binary")
    model = mm.model
    if args.pointed:
        phi = Element.zero(model.space)
        if args.mc:
            mcf = parse(args.mc)
            if mcf.kind != "mc":
                raise BoundError("--mc expects a mc model file")
            phi = Element(model.space, dict(mcf.payload.terms))
        model = component_model(model, mc_check(model, phi))
    if args.emit in ("linf", "both"):
        sys.stdout.write(serialize(model))
    if args.emit in ("bs", "both"):
        bs = reduced_bs_cochain(model, source=mm.homology,
                                target=mm.target.space)
        sys.stdout.write(serialize(bs))
    return 0


def cmd_invariants(args) -> int:
    mf = parse(args.file)
    reports = []
    if mf.kind == "cdga":
        reports.append(differential_length(mf.payload))
        try:
            reports.append(whitehead_length(linf_from_cdga(mf.payload)))
        except ValueError:
            pass
    elif mf.kind == "dgl":
        reports.append(bracket_length(mf.payload))
    elif mf.kind == "linf":
        reports.append(whitehead_length(mf.payload))
    elif mf.kind == "dgc":
        if mf.payload.counit is None:
            reports.append(conilpotence(mf.payload))
    else:
        raise BoundError(f"no invariants for kind {mf.kind}")
    for r in reports:
        print(repr(r))
    return 0


def cmd_hspace(args) -> int:
    xf = parse(args.xfile)
    yf = parse(args.yfile)
    if xf.kind == "dgc":
        x_side = xf.payload
    elif xf.kind == "dgl":
        x_side = xf.payload
    else:
        raise BoundError("the source side of hspace must be a dgc or dgl model")
    verdict = hspace_certificate(x_side, _as_linf(yf))
    print(repr(verdict))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="htcas",
        description="exact homotopy-transfer computer algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and run the axiom checkers")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("transfer-ainf", help="higher Massey coproducts on homology")
    p.add_argument("file")
    p.add_argument("--max-arity", type=int, default=None)
    p.set_defaults(fn=cmd_transfer_ainf)

    p = sub.add_parser("quillen", help="free Lie model of a coalgebra")
    p.add_argument("file")
    p.add_argument("--direct", action="store_true",
                   help="minimal differential through the homology decomposition")
    p.set_defaults(fn=cmd_quillen)

    p = sub.add_parser("cochain", help="Sullivan algebra of a linf model")
    p.add_argument("file")
    p.set_defaults(fn=cmd_cochain)

    p = sub.add_parser("dualize", help="dual coalgebra of a finite cdga")
    p.add_argument("file")
    p.add_argument("--full", action="store_true", help="keep the counit")
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("mapmodel", help="mapping-space model")
    p.add_argument("xfile")
    p.add_argument("yfile")
    p.add_argument("--pointed", action="store_true")
    p.add_argument("--mc", default=None)
    p.add_argument("--emit", choices=("linf", "bs", "both"), default="linf")
    p.add_argument("--max-arity", type=int, default=None)
    p.add_argument("--trees-only", choices=("binary", "all"), default="all")
    p.set_defaults(fn=cmd_mapmodel)

    p = sub.add_parser("invariants", help="dl / bl / Wl / conilpotence")
    p.add_argument("file")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("hspace", help="H-space criterion for mapping components")
    p.add_argument("xfile")
    p.add_argument("yfile")
    p.set_defaults(fn=cmd_hspace)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.fn(args)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 2
    except AxiomError as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        return 3
    except BoundError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 4
    except KeyError as exc:
        print(f"validation failure: unknown name {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        msg = str(exc)
        if "cap" in msg or "bound" in msg:
            print(f"bound exceeded: {msg}", file=sys.stderr)
            return 4
        print(f"validation failure: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
