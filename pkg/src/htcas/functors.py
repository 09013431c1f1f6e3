"""Dictionaries between presentations: Sullivan algebras, dual coalgebras,
Quillen models on free graded Lie algebras, and the cochain functor.

Cohomological data (Sullivan generators, monomials) is stored with its
cohomological degree as the integer grade, so canonical monomial order is by
ascending cohomological degree; the Koszul rules only consult parities, and
the homological coalgebra/Lie side is unaffected.  Dualizing
a finite-dimensional graded-commutative algebra uses the plain transpose
pairing (no extra signs): <Delta phi, x (x) y> = <phi, x y> and
<delta phi, x> = <phi, d x>; the resulting coalgebras pass the executable
axioms and this convention is pinned by the dual-coalgebra tests.

Free graded Lie elements are stored through their expansion in the tensor
algebra (faithful in characteristic zero); zero tests are exact and
primitivity is decided by the bracketing operator, which acts as k times
the identity on Lie elements of weight k.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Element,
    GradedMap,
    GradedSpace,
    Word,
    canonical_word,
    frac,
    word_basis,
)
from .structures import (
    AInfCoalgebra,
    LInfAlgebra,
    ShiftedCoops,
    check_cocommutative,
)


# ---------------------------------------------------------------------------
# free graded-commutative algebras


class CDGA:
    """Free graded-commutative algebra Lambda(V) with a differential.

    Generators carry cohomological degrees (stored negated); monomials are
    monomial-kind words, so odd generators square to zero.  The differential
    is given on generators and extended as a derivation.
    """

    def __init__(self, gens, diff: dict[str, Element] | None = None,
                 validate: bool = True):
        if isinstance(gens, GradedSpace):
            self.gens = gens
        else:
            self.gens = GradedSpace.of([(n, int(d)) for n, d in gens])
        self.diff = {g: el for g, el in (diff or {}).items() if el}
        for g, el in self.diff.items():
            if el.degree is not None and el.degree != self.gens.degree(g) + 1:
                raise ValueError(f"d({g}) has the wrong degree")
        if validate:
            for g in self.diff:
                if self.d(self.diff[g]):
                    raise ValueError(f"d^2 != 0 on generator {g}")

    @staticmethod
    def of(gens, d: dict | None = None, validate: bool = True) -> "CDGA":
        """Build from [(name, cohomological degree)] and
        {gen: [(coeff, (factors...))]}."""
        space = GradedSpace.of([(n, int(deg)) for n, deg in gens])
        diff = {}
        for g, items in (d or {}).items():
            diff[g] = Element.make(space, [(c, "m", fs) for c, fs in items])
        return CDGA(space, diff, validate=validate)

    def cohom_degree(self, name: str) -> int:
        return self.gens.degree(name)

    def cohom_degree_of(self, factors) -> int:
        return sum(self.gens.degree(f) for f in factors)

    def multiply(self, a: Element, b: Element) -> Element:
        terms = []
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                terms.append((ca * cb, "m", wa.factors + wb.factors))
        return Element.make(self.gens, terms)

    def monomial(self, factors, coeff=1) -> Element:
        return Element.make(self.gens, [(coeff, "m", tuple(factors))])

    def d(self, el: Element) -> Element:
        """Derivation extension of the generator differential."""
        out = Element.zero(self.gens)
        for w, c in el.terms.items():
            fs = w.factors
            sign = 1
            for i, f in enumerate(fs):
                img = self.diff.get(f)
                if img:
                    pre = self.monomial(fs[:i], c * sign)
                    post = self.monomial(fs[i + 1:])
                    out = out + self.multiply(self.multiply(pre, img), post)
                if self.gens.degree(f) % 2:
                    sign = -sign
        return out

    def d_parts(self, g: str) -> dict[int, Element]:
        """Word-length components d_j(g)."""
        out: dict[int, Element] = {}
        img = self.diff.get(g)
        if not img:
            return out
        for w, c in img.terms.items():
            out.setdefault(len(w), Element.zero(self.gens))
            out[len(w)] = out[len(w)] + Element(self.gens, {w: c})
        return out

    @property
    def is_sullivan(self) -> bool:
        return all(min(len(w) for w in el.terms) >= 1 for el in self.diff.values())

    @property
    def is_minimal(self) -> bool:
        return all(min(len(w) for w in el.terms) >= 2 for el in self.diff.values())

    def monomial_basis(self, max_cohom: int, max_length: int | None = None):
        """Canonical monomials of cohomological degree <= max_cohom."""
        names = sorted(self.gens.names, key=self.gens.sortkey)
        out: list[tuple[str, ...]] = [()]
        frontier: list[tuple[str, ...]] = [()]
        while frontier:
            nxt = []
            for fs in frontier:
                for n in names:
                    if fs and self.gens.sortkey(n) < self.gens.sortkey(fs[-1]):
                        continue
                    cand = fs + (n,)
                    w, s = canonical_word(self.gens, "m", cand)
                    if w is None or s != 1 or w.factors != cand:
                        continue
                    if sum(self.gens.degree(f) for f in cand) > max_cohom:
                        continue
                    if max_length is not None and len(cand) > max_length:
                        continue
                    nxt.append(cand)
            out.extend(nxt)
            frontier = nxt
        return out


class FiniteCDGA:
    """Degree- (and optionally word-length-) truncated quotient of a CDGA,
    with a chosen monomial basis; the input to dualization."""

    def __init__(self, parent: CDGA, max_cohom: int, max_length: int | None = None):
        self.parent = parent
        self.max_cohom = max_cohom
        self.max_length = max_length
        self.monomials = parent.monomial_basis(max_cohom, max_length)
        self.names = {fs: ".".join(fs) if fs else "one" for fs in self.monomials}

    def truncate(self, el: Element) -> Element:
        keep = {}
        for w, c in el.terms.items():
            if w.factors in self.names:
                keep[w] = c
        return Element(self.parent.gens, keep)

    def multiply(self, fa, fb) -> Element:
        return self.truncate(
            self.parent.multiply(self.parent.monomial(fa), self.parent.monomial(fb))
        )

    def d(self, fs) -> Element:
        return self.truncate(self.parent.d(self.parent.monomial(fs)))

    def cohom_degree(self, fs) -> int:
        return sum(self.parent.gens.degree(f) for f in fs)


def dual_coalgebra(B: FiniteCDGA, rename: dict[str, str] | None = None
                   ) -> tuple[AInfCoalgebra, AInfCoalgebra]:
    """Dual DGC of a finite-dimensional CDGA: returns (C, reduced C).

    The dual basis element of a monomial m sits in homological degree
    |m|; <Delta m*, x (x) y> = <m*, xy> and <delta m*, x> = <m*, dx>.
    """
    rename = rename or {}

    def name_of(fs) -> str:
        return rename.get(B.names[fs], B.names[fs])

    pairs = [(name_of(fs), B.cohom_degree(fs)) for fs in B.monomials]
    space = GradedSpace.of(pairs)
    unit = name_of(())

    diff_imgs: dict[Word, Element] = {}
    cop_imgs: dict[Word, Element] = {}
    for fs in B.monomials:
        phi = name_of(fs)
        dd = []
        for xs in B.monomials:
            dx = B.d(xs)
            co = dx.coeff(Word.mono(*fs))
            if co:
                dd.append((co, (name_of(xs),)))
        if dd:
            diff_imgs[Word.tensor(phi)] = Element.make(
                space, [(c, "t", t) for c, t in dd]
            )
        cc = []
        for xs in B.monomials:
            for ys in B.monomials:
                if B.cohom_degree(xs) + B.cohom_degree(ys) != B.cohom_degree(fs):
                    continue
                prod = B.multiply(xs, ys)
                co = prod.coeff(Word.mono(*fs))
                if co:
                    cc.append((co, (name_of(xs), name_of(ys))))
        if cc:
            cop_imgs[Word.tensor(phi)] = Element.make(
                space, [(c, "t", t) for c, t in cc]
            )
    ops: dict[int, GradedMap] = {}
    if diff_imgs:
        ops[1] = GradedMap(space, space, -1, diff_imgs)
    ops[2] = GradedMap(space, space, 0, cop_imgs)
    full = AInfCoalgebra(space, ops, counit=unit)

    red_pairs = [(n, d) for n, d in pairs if n != unit]
    red_space = GradedSpace.of(red_pairs)

    def reduce_el(el: Element) -> Element:
        keep = {
            w: c for w, c in el.terms.items() if unit not in w.factors
        }
        return Element(red_space, keep)

    red_ops: dict[int, GradedMap] = {}
    if diff_imgs:
        red_ops[1] = GradedMap(red_space, red_space, -1, {
            w: reduce_el(el) for w, el in diff_imgs.items()
            if unit not in w.factors
        })
    red_cop = {}
    for w, el in cop_imgs.items():
        if unit in w.factors:
            continue
        kept = reduce_el(el)
        if kept:
            red_cop[w] = kept
    if red_cop:
        red_ops[2] = GradedMap(red_space, red_space, 0, red_cop)
    reduced = AInfCoalgebra(red_space, red_ops)
    return full, reduced


# ---------------------------------------------------------------------------
# free graded Lie algebras inside the tensor algebra


def lie_bracket(a: Element, b: Element) -> Element:
    """[a, b] = a (x) b - (-1)^{|a||b|} b (x) a in the tensor algebra."""
    da, db = a.degree, b.degree
    if da is None or db is None:
        return Element.zero(a.space)
    sign = -1 if (da % 2 and db % 2) else 1
    return a.tensor(b) - sign * b.tensor(a)


def bracketing(el: Element) -> Element:
    """Right-normed bracketing word by word:
    rho(x1 (x) ... (x) xk) = [x1, [x2, [..., xk]]]."""
    space = el.space
    out = Element.zero(space)
    for w, c in el.terms.items():
        fs = w.factors
        acc = Element.gen(space, fs[-1])
        for f in reversed(fs[:-1]):
            acc = lie_bracket(Element.gen(space, f), acc)
        out = out + c * acc
    return out


@dataclass
class FreeLieElement:
    """Element of the free graded Lie algebra, stored as its tensor expansion."""

    element: Element

    def weight_component(self, k: int) -> Element:
        keep = {w: c for w, c in self.element.terms.items() if len(w) == k}
        return Element(self.element.space, keep)

    def weights(self):
        return sorted({len(w) for w in self.element.terms})

    def is_primitive(self) -> bool:
        """Dynkin criterion on every weight component."""
        for k in self.weights():
            comp = self.weight_component(k)
            if bracketing(comp) != k * comp:
                return False
        return True

    def __bool__(self) -> bool:
        return bool(self.element)


@dataclass
class FreeLieDGL:
    """Free graded Lie algebra on named generators with a differential
    given on generators by tensor-expanded Lie elements."""

    gens: GradedSpace
    diff: dict[str, FreeLieElement]
    presentation: dict[str, list] = field(default_factory=dict)

    def d_tensor(self, el: Element) -> Element:
        """Derivation extension to tensor words."""
        space = self.gens
        out = Element.zero(space)
        for w, c in el.terms.items():
            fs = w.factors
            sign = 1
            for i, f in enumerate(fs):
                img = self.diff.get(f)
                if img and img.element:
                    pre = Element(space, {Word.tensor(*fs[:i]): frac(c) * sign})
                    post = Element(space, {Word.tensor(*fs[i + 1:]): Fraction(1)})
                    out = out + pre.tensor(img.element).tensor(post)
                if space.degree(f) % 2:
                    sign = -sign
        return out

    def validate(self) -> None:
        for g, img in self.diff.items():
            if not img.is_primitive():
                raise ValueError(f"differential of {g} is not a Lie element")
            if self.d_tensor(img.element):
                raise ValueError(f"d^2 != 0 on generator {g}")

    @property
    def is_minimal(self) -> bool:
        return all(not img.weight_component(1) for img in self.diff.values())


def quillen(C: AInfCoalgebra, check: bool = True) -> FreeLieDGL:
    """Generalized Quillen model: free Lie algebra on the desuspension with
    the differential read off the co-operations (cobar orientation on the
    linear part)."""
    if C.counit is not None:
        raise ValueError("quillen expects a reduced coalgebra")
    if check:
        rep = check_cocommutative(C)
        if not rep:
            raise ValueError(f"quillen needs a cocommutative input: {rep}")
    sh = ShiftedCoops(C)
    gens = sh.space
    diff: dict[str, FreeLieElement] = {}
    for name in C.space.names:
        total = Element.zero(gens)
        for k in C.ops:
            # the cobar sign (-1)^k; pinned by agreement with the direct
            # homology-decomposition recursion in every arity
            piece = sh.op(k).apply_word(Word.tensor(name))
            if k % 2:
                piece = (-1) * piece
            total = total + piece
        if total:
            diff[name] = FreeLieElement(total)
    out = FreeLieDGL(gens, diff)
    out.validate()
    return out


def quillen_differential_direct(C: AInfCoalgebra, dec) -> FreeLieDGL:
    """Quillen-minimal differential straight from a homology decomposition
    of a DGC: on s^{-1}h it is (1/2) sum (-1)^{|z'|} [lam z', lam z''] over
    the coproduct of h, with lam recursing through the homotopy inverse of
    the differential on the A-part."""
    if not C.is_dgc:
        raise ValueError("the direct recursion needs a DGC")
    if C.counit is not None:
        raise ValueError("the direct recursion expects a reduced coalgebra")
    space = C.space
    words = [Word.tensor(n) for n in space.names]

    from . import linalg
    from .core import coords
    from .transfer import retract_from_decomposition

    r = retract_from_decomposition(dec)
    small = r.small.space
    gens = small.suspend(-1)

    a_elems = dec.a_part
    a_vecs = [coords(a, words) for a in a_elems]
    da_vecs = [coords(C.delta(1).apply(a), words) for a in a_elems]

    def bracket_halves(cop: Element, lam_fn, depth: int) -> Element:
        """(1/2) sum (-1)^{|z'|} [lam z', lam z''] over a coproduct value."""
        total = Element.zero(gens)
        for w, c in cop.terms.items():
            zl, zr = w.factors
            sign = -1 if space.degree(zl) % 2 else 1
            left = lam_fn(Element.gen(space, zl), depth)
            right = lam_fn(Element.gen(space, zr), depth)
            if left and right:
                total = total + (Fraction(1, 2) * sign * c) * lie_bracket(left, right)
        return total

    def lam(el: Element, depth: int = 0) -> Element:
        if depth > space.dim + 2:
            raise RuntimeError("non-terminating recursion")
        out = Element.zero(gens)
        if not el:
            return out
        proj = r.proj.apply(el)
        for w, c in proj.terms.items():
            out = out + c * Element.gen(gens, w.factors[0])
        # split the rest over the A and dA coordinates; lam kills A
        vec = coords(el, words)
        hvec = coords(r.incl.apply(proj), words)
        rest = [x - y for x, y in zip(vec, hvec)]
        if any(rest):
            basis = a_vecs + da_vecs
            cols = [[v[i] for v in basis] for i in range(space.dim)]
            sol = linalg.solve(cols, rest)
            if sol is None:
                raise ValueError("element outside A + dA + H")
            for j, cj in enumerate(sol[len(a_vecs):]):
                if cj:
                    cop = C.delta(2).apply(a_elems[j])
                    out = out + cj * bracket_halves(cop, lam, depth + 1)
        return out

    diff: dict[str, FreeLieElement] = {}
    for nm in small.names:
        rep = r.incl.apply_word(Word.tensor(nm))
        total = bracket_halves(C.delta(2).apply(rep), lam, 0)
        if total:
            diff[nm] = FreeLieElement(total)
    out = FreeLieDGL(gens, diff)
    out.validate()
    if not out.is_minimal:
        raise ValueError("direct Quillen differential has a linear part")
    return out


# ---------------------------------------------------------------------------
# the cochain functor and its inverse


def _dual_names(names, strip: bool = False):
    if strip:
        out = [n[:-1] if n.endswith("'") else n for n in names]
    else:
        out = [n + "'" for n in names]
    if len(set(out)) != len(out):
        raise ValueError("dual naming collides; rename generators")
    return out


def _multiplicity_factor(factors) -> int:
    mult = 1
    for _, grp in itertools.groupby(factors):
        mult *= math.factorial(len(list(grp)))
    return mult


def cochain(L: LInfAlgebra, names: list[str] | None = None,
            validate: bool = True) -> CDGA:
    """Chevalley-Eilenberg algebra: generators dual to the suspension, with
    <d_j v; s x_1 ^ ... ^ s x_j> = <v; s ell_j(x_1, ..., x_j)>.

    The monomial dual to a canonical wedge word lists the dual generators in
    the same factor order, divided by the repetition factorials.
    """
    lnames = L.space.names
    vnames = names if names is not None else _dual_names(lnames, strip=True)
    vspace = GradedSpace.of(
        [(vn, L.space.degree(x) + 1) for vn, x in zip(vnames, lnames)]
    )
    dual_of = {x: vn for x, vn in zip(lnames, vnames)}

    diff: dict[str, Element] = {vn: Element.zero(vspace) for vn in vnames}
    for j in sorted(L.ops):
        for w in word_basis(L.space, "w", j):
            val = L.ops[j].apply_word(Word.tensor(*w.factors))
            if not val:
                continue
            mult = _multiplicity_factor(w.factors)
            mono = Element.make(
                vspace, [(Fraction(1, mult), "m", tuple(dual_of[f] for f in w.factors))]
            )
            for xw, co in val.terms.items():
                vn = dual_of[xw.factors[0]]
                diff[vn] = diff[vn] + co * mono
    return CDGA(vspace, {vn: el for vn, el in diff.items() if el}, validate=validate)


def linf_from_cdga(A: CDGA, names: list[str] | None = None,
                   validate: bool = True) -> LInfAlgebra:
    """L-infinity structure on the desuspended dual of the generators,
    brackets read off the word-length parts of the differential (the exact
    inverse of `cochain`)."""
    if not A.is_sullivan:
        raise ValueError("input must be a Sullivan algebra (d V in Lambda^{>=1} V)")
    vnames = A.gens.names
    xnames = names if names is not None else _dual_names(vnames)
    lspace = GradedSpace.of(
        [(x, A.gens.degree(v) - 1) for x, v in zip(xnames, vnames)]
    )
    v_of = {x: v for v, x in zip(vnames, xnames)}

    ops: dict[int, GradedMap] = {}
    arities = sorted({len(w) for el in A.diff.values() for w in el.terms})
    for j in arities:
        images: dict[Word, Element] = {}
        for w in word_basis(lspace, "w", j):
            mono = tuple(v_of[f] for f in w.factors)
            cw, s = canonical_word(A.gens, "m", mono)
            if cw is None:
                continue
            mult = _multiplicity_factor(cw.factors)
            img = Element.zero(lspace)
            for v, x in zip(vnames, xnames):
                el = A.diff.get(v)
                if not el:
                    continue
                co = el.coeff(cw)
                if co:
                    img = img + (s * mult * co) * Element.gen(lspace, x)
            if img:
                images[w] = img
        if images:
            ops[j] = GradedMap(lspace, lspace, j - 2, images, arity=j, in_kind="w")
    return LInfAlgebra(lspace, ops, validate=validate)
