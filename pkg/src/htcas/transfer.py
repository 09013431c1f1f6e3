"""Homotopy retracts and homotopy transfer over rooted-tree formulas.

A retract packages (big, small, i, p, h) with id - i o p = d o h + h o d,
p o i = id and the side conditions h o i = 0, p o h = 0, h o h = 0 (the
canonical retract of a homology decomposition satisfies all of them, and
user-supplied retracts are rejected otherwise: the tree formulas below
assume them).

Transfer is computed in the suspension-normalized world of `structures`
(all ops degree -1), where the tree sums carry no signs beyond Koszul
tensor evaluation; internal edges are labeled by the negated suspended
homotopy (the bar/cobar orientation) and results are conjugated back with
the exact-inverse suspension bookkeeping.  Transferred co-operations sum
over planar trees; transferred brackets sum over isomorphism classes
weighted by 1/|Aut(T)| after symmetrizing the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, trees
from .core import (
    Element,
    FuncMap,
    GradedMap,
    GradedSpace,
    Word,
    coords,
    from_coords,
    tensor_apply,
    word_basis,
)
from .structures import (
    AInfCoalgebra,
    LInfAlgebra,
    ShiftedBrackets,
    ShiftedCoops,
    unshift_bracket,
    unshift_coop,
)


@dataclass
class ChainComplex:
    space: GradedSpace
    diff: GradedMap

    @staticmethod
    def zero_diff(space: GradedSpace) -> "ChainComplex":
        return ChainComplex(space, GradedMap.zero(space, space, -1))

    def homology_dims(self) -> dict[int, int]:
        """Dimension of homology per degree, by exact rank computation."""
        names = self.space.names
        words = [Word.tensor(n) for n in names]
        img_rows = []
        ker_dim_by_deg: dict[int, int] = {}
        by_deg: dict[int, list[str]] = {}
        for n in names:
            by_deg.setdefault(self.space.degree(n), []).append(n)
        out: dict[int, int] = {}
        for deg, gens in by_deg.items():
            mat_rows = [coords(self.diff.apply_word(Word.tensor(g)), words) for g in gens]
            rk = linalg.rank(mat_rows)
            ker = len(gens) - rk
            bnd_rows = [
                coords(self.diff.apply_word(Word.tensor(g)), words)
                for g in names
                if self.space.degree(g) == deg + 1
            ]
            out[deg] = ker - linalg.rank(bnd_rows)
        return {d: v for d, v in out.items() if v}


@dataclass
class Decomposition:
    """C = A + dA + H with A a complement of the cycles and H a complement
    of the boundaries inside the cycles, both chosen in declaration order."""

    complex: ChainComplex
    a_part: list[Element]
    h_part: list[Element]

    @property
    def da_part(self) -> list[Element]:
        return [self.complex.diff.apply(a) for a in self.a_part]


def homology_decomposition(cx: ChainComplex) -> Decomposition:
    space = cx.space
    names = space.names
    words = [Word.tensor(n) for n in names]
    dim = len(names)

    d_rows = [coords(cx.diff.apply_word(w), words) for w in words]
    # kernel of d: vectors x with sum x_i d(e_i) = 0
    cols = [[d_rows[i][j] for i in range(dim)] for j in range(dim)]
    cycles = linalg.echelon_basis(linalg.nullspace(cols, dim))
    bnds = linalg.echelon_basis([r for r in d_rows if any(r)])

    a_idx = linalg.extend_to_complement(cycles, dim)
    a_part = [Element.gen(space, names[i]) for i in a_idx]

    h_vecs: list[list[Fraction]] = []
    span = [list(b) for b in bnds]
    for i in range(dim):
        e = linalg.zeros(dim)
        e[i] = Fraction(1)
        if linalg.in_span(cycles, e) and not linalg.in_span(span, e):
            span.append(e)
            h_vecs.append(e)
    for v in cycles:
        if not linalg.in_span(span, v):
            span.append(list(v))
            h_vecs.append(list(v))
    want = len(cycles) - len(bnds)
    assert len(h_vecs) == want, "homology decomposition miscounted"
    h_part = [from_coords(space, words, v) for v in h_vecs]
    return Decomposition(cx, a_part, h_part)


@dataclass
class HomotopyRetract:
    big: ChainComplex
    small: ChainComplex
    incl: GradedMap
    proj: GradedMap
    homotopy: GradedMap

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Retract identity, chain maps, side conditions, matching homology."""
        big, small = self.big, self.small
        i, p, h = self.incl, self.proj, self.homotopy
        for n in small.space.names:
            w = Word.tensor(n)
            if p.apply(i.apply_word(w)) != Element.gen(small.space, n):
                raise ValueError("p o i is not the identity")
            lhs = big.diff.apply(i.apply_word(w))
            rhs = i.apply(small.diff.apply_word(w))
            if lhs != rhs:
                raise ValueError("i is not a chain map")
            if h.apply(i.apply_word(w)):
                raise ValueError("side condition h o i = 0 fails")
        for n in big.space.names:
            w = Word.tensor(n)
            e = Element.gen(big.space, n)
            lhs = e - i.apply(p.apply_word(w))
            rhs = big.diff.apply(h.apply_word(w)) + h.apply(big.diff.apply_word(w))
            if lhs != rhs:
                raise ValueError(f"retract identity fails on {n}")
            if small.diff.apply(p.apply_word(w)) != p.apply(big.diff.apply_word(w)):
                raise ValueError("p is not a chain map")
            if p.apply(h.apply_word(w)):
                raise ValueError("side condition p o h = 0 fails")
            if h.apply(h.apply_word(w)):
                raise ValueError("side condition h o h = 0 fails")
        if big.homology_dims() != small.homology_dims():
            raise ValueError("i cannot be a quasi-isomorphism: homology differs")


def retract_from_decomposition(dec: Decomposition) -> HomotopyRetract:
    """The canonical retract: p kills A and dA, h inverts d from dA to A."""
    cx = dec.complex
    space = cx.space
    names = space.names
    words = [Word.tensor(n) for n in names]
    dim = len(names)

    a_vecs = [coords(a, words) for a in dec.a_part]
    da_vecs = [coords(cx.diff.apply(a), words) for a in dec.a_part]
    h_vecs = [coords(hrep, words) for hrep in dec.h_part]

    used: set[str] = set()
    small_pairs = []
    for vec, el in zip(h_vecs, dec.h_part):
        pivot = next(i for i, x in enumerate(vec) if x)
        name = names[pivot]
        while name in used:
            name += "_"
        used.add(name)
        small_pairs.append((name, space.degree(names[pivot])))
    small_space = GradedSpace.of(small_pairs)
    small = ChainComplex.zero_diff(small_space)

    incl_images = {
        Word.tensor(nm): el for (nm, _), el in zip(small_pairs, dec.h_part)
    }
    incl = GradedMap(small_space, space, 0, incl_images)

    basis_vectors = a_vecs + da_vecs + h_vecs
    mat = [[basis_vectors[j][i] for j in range(len(basis_vectors))] for i in range(dim)]
    na = len(a_vecs)
    proj_images = {}
    hom_images = {}
    for gi, n in enumerate(names):
        e = linalg.zeros(dim)
        e[gi] = Fraction(1)
        sol = linalg.solve(mat, e)
        assert sol is not None, "decomposition does not span"
        p_el = Element.make(
            small_space,
            [(sol[2 * na + s], "t", (small_pairs[s][0],)) for s in range(len(h_vecs))],
        )
        if p_el:
            proj_images[Word.tensor(n)] = p_el
        h_el = Element.zero(space)
        for j in range(na):
            if sol[na + j]:
                h_el = h_el + sol[na + j] * dec.a_part[j]
        if h_el:
            hom_images[Word.tensor(n)] = h_el
    proj = GradedMap(space, small_space, 0, proj_images)
    homotopy = GradedMap(space, space, 1, hom_images)
    return HomotopyRetract(cx, small, incl, proj, homotopy)


def identity_retract(cx: ChainComplex) -> HomotopyRetract:
    ident = GradedMap.identity(cx.space)
    return HomotopyRetract(cx, cx, ident, ident, GradedMap.zero(cx.space, cx.space, 1))


# ---------------------------------------------------------------------------
# shifted retract views


@dataclass
class _ShiftedRetract:
    big: GradedSpace
    small: GradedSpace
    incl: GradedMap
    proj: GradedMap
    homotopy: GradedMap  # already carries the bar-orientation flip


def _shift_map(m: GradedMap, src: GradedSpace, tgt: GradedSpace, scale=1) -> GradedMap:
    images = {}
    for w, el in m.images.items():
        images[w] = Element(tgt, {wd: scale * c for wd, c in el.terms.items()})
    return GradedMap(src, tgt, m.degree, images)


def _shift_retract(r: HomotopyRetract, shift: int) -> _ShiftedRetract:
    big = r.big.space.suspend(shift)
    small = r.small.space.suspend(shift)
    return _ShiftedRetract(
        big,
        small,
        _shift_map(r.incl, small, big),
        _shift_map(r.proj, big, small),
        _shift_map(r.homotopy, big, big, scale=-1),
    )


# ---------------------------------------------------------------------------
# A-infinity transfer


def _co_children(tree, coops: ShiftedCoops, rr: _ShiftedRetract, el: Element) -> Element:
    """Vertex co-op followed by the branch composites; slots all degree 0."""
    arity = len(tree)
    if arity not in coops.coalgebra.ops:
        return Element.zero(rr.small)
    mid = coops.op(arity).apply(el)
    if not mid:
        return Element.zero(rr.small)
    slots = []
    for child in tree:
        if trees.is_leaf(child):
            slots.append(rr.proj)
        else:
            def fn(word, child=child):
                nxt = rr.homotopy.apply_word(word)
                return _co_children(child, coops, rr, nxt)

            slots.append(FuncMap(0, fn))
    return tensor_apply(slots, [1] * arity, mid)


def _coalgebra_tree_shifted(tree, coops, rr, name: str) -> Element:
    el = rr.incl.apply_word(Word.tensor(name))
    return _co_children(tree, coops, rr, el)


def ainf_transfer_cap(C: AInfCoalgebra, small: GradedSpace) -> int | None:
    """Largest arity a tree-transferred co-op can have, by degree counting.

    Each leaf value lands in the desuspended small space; its degrees bound
    how many leaves the fixed total degree can feed.
    """
    lo = small.min_degree() - 1
    hi = C.space.max_degree() - 1
    if lo < 1:
        return None
    return max(2, (hi - 1) // lo) if hi >= 1 else 2


def transfer_ainf(C: AInfCoalgebra, r: HomotopyRetract, max_k: int | None = None,
                  only_binary: bool = False, validate: bool = True) -> AInfCoalgebra:
    """Transferred A-infinity structure Delta'_k = sum over planar trees."""
    coops = ShiftedCoops(C)
    rr = _shift_retract(r, -1)
    cap = max_k if max_k is not None else ainf_transfer_cap(C, r.small.space)
    if cap is None:
        raise ValueError("cannot derive an arity cap; pass max_k explicitly")

    ops: dict[int, GradedMap] = {}
    if not r.small.diff.is_zero():
        ops[1] = r.small.diff
    vertex_cap = 2 if only_binary else max(C.max_arity, 2)
    for k in range(2, cap + 1):
        images = {}
        for name in r.small.space.names:
            total = Element.zero(rr.small)
            for tree in trees.enumerate_planar(k, max_arity=vertex_cap):
                if trees.is_leaf(tree):
                    continue
                total = total + _coalgebra_tree_shifted(tree, coops, rr, name)
            if total:
                images[Word.tensor(name)] = total
        if images:
            ops[k] = unshift_coop(
                GradedMap(rr.small, rr.small, -1, images), k, r.small.space
            )
    counit = C.counit if (C.counit and C.counit in r.small.space) else None
    return AInfCoalgebra(r.small.space, ops, counit=counit, validate=validate)


def tree_map_coalgebra(tree, C: AInfCoalgebra, r: HomotopyRetract) -> GradedMap:
    """The single labeled tree map Delta_T : H -> H^{(x)k}."""
    k = trees.leaf_count(tree)
    coops = ShiftedCoops(C)
    rr = _shift_retract(r, -1)
    images = {}
    for name in r.small.space.names:
        val = _coalgebra_tree_shifted(tree, coops, rr, name)
        if val:
            images[Word.tensor(name)] = val
    return unshift_coop(GradedMap(rr.small, rr.small, -1, images), k, r.small.space)


# ---------------------------------------------------------------------------
# L-infinity transfer


def _lie_node(tree, B: ShiftedBrackets, rr: _ShiftedRetract,
              factors: tuple[str, ...], memo: dict) -> Element:
    """Value of a subtree on its chunk of leaf inputs (before the edge below)."""
    if trees.is_leaf(tree):
        return rr.incl.apply_word(Word.tensor(factors[0]))
    key = (id(tree), factors)
    hit = memo.get(key)
    if hit is not None:
        return hit
    arity = len(tree)
    if arity not in B.algebra.ops:
        out = Element.zero(rr.big)
        memo[key] = out
        return out
    vals = []
    pos = 0
    dead = False
    for child in tree:
        n = trees.leaf_count(child)
        v = _lie_node(child, B, rr, factors[pos:pos + n], memo)
        pos += n
        if not trees.is_leaf(child):
            v = rr.homotopy.apply(v)
        if not v:
            dead = True
            break
        vals.append(v)
    if dead:
        out = Element.zero(rr.big)
    else:
        arg = vals[0]
        for v in vals[1:]:
            arg = arg.tensor(v)
        out = B.apply(arity, arg)
    memo[key] = out
    return out


def _lie_tree_shifted(tree, B, rr, factors: tuple[str, ...], memo: dict) -> Element:
    """p-hat o (tree composite) o Koszul symmetrization of the inputs."""
    import itertools

    from .core import koszul_sign

    degs = [rr.small.degree(f) for f in factors]
    total = Element.zero(rr.small)
    for perm in itertools.permutations(range(1, len(factors) + 1)):
        s = koszul_sign(list(perm), degs, signature=False)
        arranged = tuple(factors[p - 1] for p in perm)
        val = _lie_node(tree, B, rr, arranged, memo)
        if val:
            total = total + s * rr.proj.apply(val)
    return total


def _as_wedge_op(m: GradedMap) -> GradedMap:
    """Reshape an arity-1 map onto wedge-word keys (for bracket storage)."""
    images = {Word.wedge(*w.factors): el for w, el in m.images.items()}
    return GradedMap(m.source, m.target, m.degree, images, arity=1, in_kind="w")


def linf_transfer_cap(L: LInfAlgebra, small: GradedSpace) -> int | None:
    """Arity cap by degree counting, available for positively graded input."""
    lo = small.min_degree() + 1
    hi = L.space.max_degree() + 1
    if lo < 1:
        return None
    return max(2, hi // lo)


def transfer_linf(L: LInfAlgebra, r: HomotopyRetract, max_k: int | None = None,
                  words: dict[int, list[Word]] | None = None,
                  only_binary: bool = False, validate: bool = True) -> LInfAlgebra:
    """Transferred brackets ell'_k = sum over tree classes of ell_T / |Aut T|."""
    B = ShiftedBrackets(L)
    rr = _shift_retract(r, +1)
    if max_k is None:
        max_k = linf_transfer_cap(L, r.small.space)
        if max_k is None:
            raise ValueError("cannot derive an arity cap; pass max_k explicitly")
    memo: dict = {}
    vertex_cap = 2 if only_binary else L.max_arity

    ops: dict[int, GradedMap] = {}
    if not r.small.diff.is_zero():
        ops[1] = _as_wedge_op(r.small.diff)
    small = r.small.space
    for k in range(2, max_k + 1):
        kwords = (words or {}).get(k) if words is not None else None
        if kwords is None:
            kwords = word_basis(small, "w", k)
        tlist = [
            (trees.planar_embedding(t), Fraction(1, trees.aut_order(t)))
            for t in trees.enumerate_rooted(k, max_arity=max(vertex_cap, 2))
            if not trees.is_leaf(t)
        ]
        images = {}
        for w in kwords:
            total = Element.zero(rr.small)
            for tree, weight in tlist:
                val = _lie_tree_shifted(tree, B, rr, w.factors, memo)
                if val:
                    total = total + weight * val
            if not total:
                continue
            images[w] = total
        if images:
            shifted_imgs = images

            def apply_factors(kk, factors, _imgs=shifted_imgs, _small=small):
                from .core import canonical_word

                cw, s = canonical_word(rr.small, "m", factors)
                if cw is None:
                    return Element.zero(rr.small)
                el = _imgs.get(Word("w", cw.factors))
                if el is None:
                    return Element.zero(rr.small)
                return s * el

            unshifted = unshift_bracket(small, k, apply_factors)
            if not unshifted.is_zero():
                ops[k] = unshifted
    return LInfAlgebra(small, ops, validate=validate)


def tree_map_lie(tree, L: LInfAlgebra, r: HomotopyRetract) -> GradedMap:
    """The single tree map ell_T (symmetrization included, no 1/|Aut|)."""
    k = trees.leaf_count(tree)
    B = ShiftedBrackets(L)
    rr = _shift_retract(r, +1)
    memo: dict = {}
    small = r.small.space
    emb = trees.planar_embedding(tree)
    values = {}
    for w in word_basis(small, "w", k):
        val = _lie_tree_shifted(emb, B, rr, w.factors, memo)
        if val:
            values[Word("w", w.factors)] = val

    def apply_factors(kk, factors):
        from .core import canonical_word

        cw, s = canonical_word(rr.small, "m", factors)
        if cw is None:
            return Element.zero(rr.small)
        el = values.get(Word("w", cw.factors))
        if el is None:
            return Element.zero(rr.small)
        return s * el

    return unshift_bracket(small, k, apply_factors)


# ---------------------------------------------------------------------------
# Hom complexes and the induced retract


def hom_name(c: str, x: str) -> str:
    return f"{c}.{x}"


def hom_space(source: GradedSpace, target: GradedSpace) -> GradedSpace:
    """Elementary maps c -> x in source-major order; degree |x| - |c|."""
    pairs = []
    for c in source.names:
        for x in target.names:
            pairs.append((hom_name(c, x), target.degree(x) - source.degree(c)))
    return GradedSpace.of(pairs)


def hom_complex(source: ChainComplex, L: LInfAlgebra) -> ChainComplex:
    """Hom(C, L) with ell_1(f) = ell_1 o f + (-1)^{|f|+1} f o delta."""
    space = hom_space(source.space, L.space)
    ell1 = L.ell(1)
    delta = source.diff
    images: dict[Word, Element] = {}
    for c in source.space.names:
        for x in L.space.names:
            f = hom_name(c, x)
            out = Element.zero(space)
            post = ell1.apply_word(Word.tensor(x))
            for wy, cy in post.terms.items():
                out = out + cy * Element.gen(space, hom_name(c, wy.factors[0]))
            sgn = -1 if (space.degree(f) + 1) % 2 else 1
            for cp in source.space.names:
                pre = delta.apply_word(Word.tensor(cp))
                co = pre.coeff(Word.tensor(c))
                if co:
                    out = out + (sgn * co) * Element.gen(space, hom_name(cp, x))
            if out:
                images[Word.tensor(f)] = out
    return ChainComplex(space, GradedMap(space, space, -1, images))


def hom_retract(r: HomotopyRetract, L: LInfAlgebra) -> HomotopyRetract:
    """The retract induced on Hom complexes: precomposition with p, i and
    (sign-twisted) k; big side Hom(C,L), small side Hom(H,L)."""
    big = hom_complex(r.big, L)
    small = hom_complex(r.small, L)
    bs, ss = big.space, small.space

    def precompose(space_out, g: GradedMap, f_space, f_source):
        """f |-> f o g as a map on elementary-map bases."""
        images = {}
        for c in f_source.names:
            for x in L.space.names:
                out = Element.zero(space_out)
                for cp in g.source.names:
                    val = g.apply_word(Word.tensor(cp))
                    co = val.coeff(Word.tensor(c))
                    if co:
                        out = out + co * Element.gen(space_out, hom_name(cp, x))
                if out:
                    images[Word.tensor(hom_name(c, x))] = out
        return images

    incl = GradedMap(ss, bs, 0, precompose(bs, r.proj, bs, r.small.space))
    proj = GradedMap(bs, ss, 0, precompose(ss, r.incl, ss, r.big.space))

    hom_imgs = {}
    for c in r.big.space.names:
        for x in L.space.names:
            f = hom_name(c, x)
            sgn = -1 if bs.degree(f) % 2 else 1
            out = Element.zero(bs)
            for cp in r.big.space.names:
                val = r.homotopy.apply_word(Word.tensor(cp))
                co = val.coeff(Word.tensor(c))
                if co:
                    out = out + (sgn * co) * Element.gen(bs, hom_name(cp, x))
            if out:
                hom_imgs[Word.tensor(f)] = out
    homotopy = GradedMap(bs, bs, 1, hom_imgs)
    return HomotopyRetract(big, small, incl, proj, homotopy)
