"""Models of mapping spaces.

The convolution structure puts brackets on the complex of linear maps from
a DGC to an L-infinity algebra,

    ell_1(f) = ell_1 o f + (-1)^{|f|+1} f o delta,
    ell_k(f_1, ..., f_k) = ell_k o (f_1 (x) ... (x) f_k) o Delta^{(k-1)},

and homotopy transfer along the induced Hom retract moves it onto the maps
out of homology.  The cochain functor of the transferred structure, with
generators renamed v.h, is the reduced Brown-Szczarba model; the same
differential is also computed by the direct substitution recursion on
(Lambda V (x) dual basis), and the two routes agreeing generator by
generator is the strongest correctness check in the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Element, GradedMap, GradedSpace, Word, word_basis
from .functors import CDGA, FiniteCDGA, cochain, dual_coalgebra
from .structures import (
    AInfCoalgebra,
    LInfAlgebra,
    MaurerCartanElement,
    iterated_coproduct,
    mc_check,
    perturb,
    truncate,
)
from .transfer import (
    ChainComplex,
    HomotopyRetract,
    hom_complex,
    hom_name,
    hom_retract,
    hom_space,
    homology_decomposition,
    retract_from_decomposition,
    transfer_linf,
)


@dataclass
class HomSpace:
    """Elementary-map basis of Hom(source, target), source-major order."""

    source: GradedSpace
    target: GradedSpace

    @property
    def space(self) -> GradedSpace:
        return hom_space(self.source, self.target)


def convolution_linf(C: AInfCoalgebra, L: LInfAlgebra,
                     validate: bool = True) -> LInfAlgebra:
    """The convolution structure on Hom(C, L) for a DGC C."""
    if not C.is_dgc:
        raise ValueError("convolution brackets need a DGC source")
    cx = ChainComplex(C.space, C.delta(1))
    hc = hom_complex(cx, L)
    hs = hc.space
    ops: dict[int, GradedMap] = {}
    if not hc.diff.is_zero():
        from .transfer import _as_wedge_op

        ops[1] = _as_wedge_op(hc.diff)

    parts = {
        hom_name(c, x): (c, x)
        for c in C.space.names
        for x in L.space.names
    }
    cops = {k: iterated_coproduct(C, k - 1) for k in L.ops if k >= 2}
    for k in sorted(L.ops):
        if k < 2:
            continue
        ellk = L.ell(k)
        images: dict[Word, Element] = {}
        for w in word_basis(hs, "w", k):
            sources = [parts[f][0] for f in w.factors]
            targets = [parts[f][1] for f in w.factors]
            fdegs = [hs.degree(f) for f in w.factors]
            out = Element.zero(hs)
            for c in C.space.names:
                split = cops[k].apply_word(Word.tensor(c))
                total = Element.zero(L.space)
                for cw, co in split.terms.items():
                    if list(cw.factors) != sources:
                        continue
                    sign = 1
                    for i in range(k):
                        if C.space.degree(cw.factors[i]) % 2:
                            if sum(fdegs[i + 1:]) % 2:
                                sign = -sign
                    val = ellk.apply_word(Word.tensor(*targets))
                    total = total + (sign * co) * val
                for xw, cx_ in total.terms.items():
                    out = out + cx_ * Element.gen(hs, hom_name(c, xw.factors[0]))
            if out:
                images[w] = out
        if images:
            ops[k] = GradedMap(hs, hs, k - 2, images, arity=k, in_kind="w")
    return LInfAlgebra(hs, ops, validate=validate)


def pointed_convolution(C_reduced: AInfCoalgebra, L: LInfAlgebra,
                        validate: bool = True) -> LInfAlgebra:
    """Convolution structure on Hom of the augmentation kernel (same
    brackets with the reduced coproduct)."""
    if C_reduced.counit is not None:
        raise ValueError("pointed convolution expects the reduced coalgebra")
    return convolution_linf(C_reduced, L, validate=validate)


def mapping_arity_cap(C: AInfCoalgebra, small: GradedSpace) -> int | None:
    """Cap on transferred bracket arities from the source-side degrees:
    a k-leaf tree splits a homology class across k factors of the source,
    gaining at most one degree per internal edge."""
    lo = C.space.min_degree()
    hi = small.max_degree()
    if lo < 2:
        return None
    return max(2, (hi - 2) // (lo - 1))


@dataclass
class MappingModel:
    """The transferred mapping-space model and the data that built it."""

    model: LInfAlgebra
    convolution: LInfAlgebra
    retract: HomotopyRetract
    homology: GradedSpace
    coalgebra: AInfCoalgebra
    target: LInfAlgebra


def mapping_space_model(C: AInfCoalgebra, L: LInfAlgebra,
                        max_k: int | None = None, only_binary: bool = False,
                        validate: bool = True) -> MappingModel:
    """Transferred structure on Hom(H, L): homology decomposition, induced
    Hom retract and tree-sum transfer of the convolution structure."""
    cx = ChainComplex(C.space, C.delta(1))
    dec = homology_decomposition(cx)
    r = retract_from_decomposition(dec)
    hr = hom_retract(r, L)
    conv = convolution_linf(C, L, validate=validate)
    cap = max_k if max_k is not None else mapping_arity_cap(C, r.small.space)
    if cap is None:
        raise ValueError("cannot derive an arity cap; pass max_k explicitly")
    words = _degree_feasible_words(hr.small.space, cap)
    model = transfer_linf(conv, hr, max_k=cap, words=words,
                          only_binary=only_binary, validate=validate)
    return MappingModel(model, conv, hr, r.small.space, C, L)


def _degree_feasible_words(space: GradedSpace, cap: int):
    degrees = set(space.degrees())
    out: dict[int, list[Word]] = {}
    for k in range(2, cap + 1):
        keep = []
        for w in word_basis(space, "w", k):
            if space.word_degree(w) + k - 2 in degrees:
                keep.append(w)
        out[k] = keep
    return out


# ---------------------------------------------------------------------------
# reduced Brown-Szczarba model, route 1: cochains of the transferred model


def bs_name(f: str) -> str:
    """Hom basis name c.x to Brown-Szczarba generator name v.c.

    The target name is the last dotted component (source monomial names may
    themselves contain dots; target generator names never do)."""
    c, x = f.rsplit(".", 1)
    v = x[:-1] if x.endswith("'") else x
    return f"{v}.{c}"


def reduced_bs_cochain(model, source: GradedSpace | None = None,
                       target: GradedSpace | None = None) -> CDGA:
    """Cochain algebra of the transferred model on generators v.h of
    cohomological degree |v| - |h|.

    Accepts a MappingModel or an LInfAlgebra on a Hom space together with
    its source (H) and target (L) spaces.  The generator identification
    evaluates each bracket with its inputs arranged in the monomial order
    of the target generators (degree, then declaration) and threads every
    source symbol past the pairs to its right, contributing
    (-1)^{|c_i| (|c_j| + 1)} per ordered pair.  With this orientation the
    differential agrees with the substitution recursion of
    `reduced_bs_direct` generator by generator.
    """

    if isinstance(model, MappingModel):
        source = model.homology
        target = model.target.space
        model = model.model
    if source is None or target is None:
        raise ValueError("pass the source homology and target spaces")
    for k in model.ops:
        if k >= 4:
            raise ValueError(
                "the generator orientation of the reduced model is pinned for "
                "brackets of arity <= 3; a nonzero arity-4 bracket is present"
            )
    hs = model.space
    names = [bs_name(f) for f in hs.names]
    bsg = GradedSpace.of([(nm, hs.degree(f) + 1) for nm, f in zip(names, hs.names)])
    bs_of = dict(zip(hs.names, names))

    cdeg = {}
    okey = {}
    for f in hs.names:
        c, x = f.rsplit(".", 1)
        cdeg[f] = source.degree(c)
        okey[f] = (target.degree(x) + 1, target.index(x),
                   source.degree(c), source.index(c))

    diff: dict[str, Element] = {vn: Element.zero(bsg) for vn in names}
    for j in sorted(model.ops):
        for w in word_basis(hs, "w", j):
            ordered = tuple(sorted(w.factors, key=lambda f: okey[f]))
            val = model.ops[j].apply_word(Word.tensor(*ordered))
            if not val:
                continue
            mult = 1
            for _, grp in itertools.groupby(w.factors):
                mult *= math.factorial(len(list(grp)))
            xi = -1 if ((j - 1) * (j - 2) // 2) % 2 else 1
            for a in range(j):
                for b in range(a + 1, j):
                    if cdeg[ordered[a]] % 2 and (cdeg[ordered[b]] + 1) % 2:
                        xi = -xi
            mono = Element.make(
                bsg,
                [(Fraction(xi, mult), "m", tuple(bs_of[f] for f in ordered))],
            )
            for xw, co in val.terms.items():
                vn = bs_of[xw.factors[0]]
                diff[vn] = diff[vn] + co * mono
    return CDGA(bsg, {vn: el for vn, el in diff.items() if el})


# ---------------------------------------------------------------------------
# reduced Brown-Szczarba model, route 2: the substitution recursion


def reduced_bs_direct(B: FiniteCDGA, A: CDGA,
                      rename: dict[str, str] | None = None,
                      pointed: bool = True) -> CDGA:
    """The differential on Lambda(V (x) H) by expanding dv against iterated
    coproducts and eliminating the A and dA parts of the dual recursively.

    B is the finite model of the source, A = (Lambda V, d) the Sullivan
    model of the target.  Returns the CDGA on generators v.h.
    """
    full, red = dual_coalgebra(B, rename=rename)
    C = red if pointed else full
    cx = ChainComplex(C.space, C.delta(1))
    dec = homology_decomposition(cx)
    r = retract_from_decomposition(dec)
    csp = C.space
    hsp = r.small.space

    pairs = []
    for h in hsp.names:
        for v in A.gens.names:
            pairs.append((f"{v}.{h}", A.gens.degree(v) - hsp.degree(h)))
    bs = GradedSpace.of(pairs)

    cop_cache: dict[int, GradedMap] = {}

    def cop(n: int) -> GradedMap:
        if n not in cop_cache:
            cop_cache[n] = iterated_coproduct(C, n)
        return cop_cache[n]

    def expand(vfactors: tuple[str, ...], c_el: Element, depth: int) -> Element:
        """Sum of products (v_1.c^1)...(v_n.c^n) over the (n-1)-fold
        coproduct of c_el, with A parts dropped and dA parts replaced."""
        if depth > csp.dim + 2:
            raise RuntimeError("non-terminating substitution")
        n = len(vfactors)
        vdegs = [A.gens.degree(v) for v in vfactors]
        split = cop(n - 1).apply(c_el)
        out = Element.zero(bs)
        for cw, co in split.terms.items():
            sign = 1
            for i, cf in enumerate(cw.factors):
                if csp.degree(cf) % 2 and sum(vdegs[i + 1:]) % 2:
                    sign = -sign
            prod = Element(bs, {Word.mono(): Fraction(1)})
            for i, cf in enumerate(cw.factors):
                factor = factor_of(vfactors[i], cf, depth)
                if not factor:
                    prod = Element.zero(bs)
                    break
                prod = _bs_multiply(bs, prod, factor)
            if prod:
                out = out + (sign * co) * prod
        return out

    def factor_of(v: str, cf: str, depth: int) -> Element:
        """The factor v.c with c a source basis element, split over the
        decomposition: H passes through, A dies, dA substitutes."""
        e = Element.gen(csp, cf)
        out = Element.zero(bs)
        hpart = r.proj.apply(e)
        for hw, hco in hpart.terms.items():
            out = out + hco * Element.gen(bs, f"{v}.{hw.factors[0]}")
        rest = e - r.incl.apply(hpart)
        if rest:
            apart = r.homotopy.apply(r.big.diff.apply(rest))  # the A component
            dapart = rest - apart
            if dapart:
                a_el = r.homotopy.apply(dapart)
                dv = A.diff.get(v)
                if dv:
                    for mw, mc in dv.terms.items():
                        out = out + mc * expand(mw.factors, a_el, depth + 1)
        return out

    diff: dict[str, Element] = {}
    for h in hsp.names:
        h_el = r.incl.apply_word(Word.tensor(h))
        for v in A.gens.names:
            dv = A.diff.get(v)
            if not dv:
                continue
            total = Element.zero(bs)
            for mw, mc in dv.terms.items():
                total = total + mc * expand(mw.factors, h_el, 0)
            if total:
                diff[f"{v}.{h}"] = total
    return CDGA(bs, diff)


def _bs_multiply(bs: GradedSpace, a: Element, b: Element) -> Element:
    terms = []
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            terms.append((ca * cb, "m", wa.factors + wb.factors))
    return Element.make(bs, terms)


def restrict_positive(A: CDGA) -> CDGA:
    """Quotient by the generators of nonpositive degree (the component
    restriction on the Brown-Szczarba side)."""
    keep = [(n, d) for n, d in A.gens.basis if d > 0]
    space = GradedSpace.of(keep)
    diff = {}
    for g, el in A.diff.items():
        if g not in space:
            continue
        kept = {
            w: c for w, c in el.terms.items() if all(f in space for f in w.factors)
        }
        if kept:
            diff[g] = Element(space, kept)
    return CDGA(space, diff)


def parity_involution(L: LInfAlgebra) -> LInfAlgebra:
    """Conjugation by f -> (-1)^{|f|+1} f, which negates every bracket.

    This is an isomorphism of L-infinity algebras; it is the documented
    global normalization used when comparing transferred brackets against
    their printed worked-example values."""
    ops = {
        k: GradedMap(m.source, m.target, m.degree,
                     {w: (-1) * el for w, el in m.images.items()},
                     arity=m.arity, in_kind=m.in_kind)
        for k, m in L.ops.items()
    }
    return LInfAlgebra(L.space, ops, validate=False)


# ---------------------------------------------------------------------------
# component models


def component_model(model: LInfAlgebra, phi: MaurerCartanElement | Element,
                    validate: bool = True) -> LInfAlgebra:
    """Perturb by a verified Maurer-Cartan element and truncate."""
    if isinstance(phi, Element):
        phi = mc_check(model, phi)
    return truncate(perturb(model, phi, validate=validate), validate=validate)
