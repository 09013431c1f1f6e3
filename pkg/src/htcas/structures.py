"""A-infinity coalgebras and L-infinity algebras as executable data.

Structure maps are stored unshifted: co-operations Delta_k : C -> C^{(x)k}
of degree k-2 on plain basis words, brackets ell_k : Lambda^k L -> L of
degree k-2 on wedge words.  The checkers evaluate the defining relations
literally:

  A-infinity:  sum_{k,n} (-1)^{k+n+kn} (id^{(x)i-k-n} (x) Delta_k (x) id^{(x)n})
               Delta_{i-k+1} = 0
  L-infinity:  sum_{i+j=n+1} sum_{(i,n-i)-shuffles} eps_sigma eps (-1)^{i(j-1)}
               ell_j(ell_i(x_sigma...), x_sigma...) = 0

with the Koszul tensor-evaluation rule supplying all remaining signs.

The engine also keeps suspension-normalized views in which every op has
degree -1 (co-ops conjugated onto s^{-1}C, brackets onto sL):

    shifted_k = (s^{-1})^{(x)k} o op_k o s          (A-infinity)
    B_k       = s o ell_k o (s^{-1})^{(x)k}         (L-infinity)

and the exact inverse conjugation carries the interleaving sign
(-1)^{k(k-1)/2}.  In this normalization the homotopy-transfer tree sums
are sign-free, which is how the transfer module computes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .core import (
    Element,
    GradedMap,
    GradedSpace,
    Word,
    canonical_word,
    frac,
    from_coords,
    suspend_element,
    suspension_sign,
    tensor_apply,
    unshuffle,
    word_basis,
)


@dataclass
class CheckReport:
    """Outcome of an axiom check; failures carry the first offending residual."""

    ok: bool
    where: str | None = None
    residual: Element | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        if self.ok:
            return "ok"
        return f"FAIL at {self.where}: {self.residual!r}"


def _interleave_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) % 2 else 1


class AInfCoalgebra:
    """Graded space with co-operations Delta_k of degree k-2.

    `counit` names the dual-of-unit basis element when this is a full
    counital coalgebra; reduced coalgebras leave it None.
    """

    def __init__(self, space: GradedSpace, ops: dict[int, GradedMap],
                 counit: str | None = None, validate: bool = True):
        self.space = space
        self.ops = {k: m for k, m in ops.items() if not m.is_zero()}
        self.counit = counit
        for k, m in self.ops.items():
            if m.degree != k - 2:
                raise ValueError(f"Delta_{k} must have degree {k - 2}, got {m.degree}")
        if validate:
            rep = check_ainf(self)
            if not rep:
                raise ValueError(f"A-infinity relation fails: {rep}")

    @property
    def max_arity(self) -> int:
        return max(self.ops, default=0)

    @property
    def is_dgc(self) -> bool:
        return self.max_arity <= 2

    def delta(self, k: int) -> GradedMap:
        m = self.ops.get(k)
        if m is None:
            return GradedMap.zero(self.space, self.space, k - 2)
        return m

    def apply(self, k: int, el: Element) -> Element:
        return self.delta(k).apply(el)

    def shifted(self) -> "ShiftedCoops":
        return ShiftedCoops(self)


class LInfAlgebra:
    """Graded space with brackets ell_k of degree k-2 stored on wedge words."""

    def __init__(self, space: GradedSpace, ops: dict[int, GradedMap],
                 validate: bool = True):
        self.space = space
        self.ops = {k: m for k, m in ops.items() if not m.is_zero()}
        for k, m in self.ops.items():
            if m.degree != k - 2:
                raise ValueError(f"ell_{k} must have degree {k - 2}, got {m.degree}")
            if m.in_kind != "w" or m.arity != k:
                raise ValueError(f"ell_{k} must act on wedge words of length {k}")
        if validate:
            rep = check_linf(self)
            if not rep:
                raise ValueError(f"generalized Jacobi fails: {rep}")

    @property
    def max_arity(self) -> int:
        return max(self.ops, default=0)

    @property
    def is_minimal(self) -> bool:
        return 1 not in self.ops

    def ell(self, k: int) -> GradedMap:
        m = self.ops.get(k)
        if m is None:
            return GradedMap.zero(self.space, self.space, k - 2, arity=k, in_kind="w")
        return m

    def bracket(self, k: int, *elements: Element) -> Element:
        """ell_k evaluated on elements (tensor positions in the given order)."""
        el = elements[0]
        for e in elements[1:]:
            el = el.tensor(e)
        return self.ell(k).apply(el)

    def shifted(self) -> "ShiftedBrackets":
        return ShiftedBrackets(self)


@dataclass
class MaurerCartanElement:
    """Degree -1 element with vanishing curvature (verified by mc_check)."""

    element: Element
    algebra: LInfAlgebra = field(repr=False)


# ---------------------------------------------------------------------------
# shifted views


class ShiftedCoops:
    """Co-ops conjugated onto the desuspension: uniform degree -1."""

    def __init__(self, C: AInfCoalgebra):
        self.coalgebra = C
        self.space = C.space.suspend(-1)
        self._maps: dict[int, GradedMap] = {}

    @property
    def arities(self):
        return sorted(self.coalgebra.ops)

    def op(self, k: int) -> GradedMap:
        if k not in self._maps:
            C = self.coalgebra
            images = {}
            for name in C.space.names:
                img = C.delta(k).apply_word(Word.tensor(name))
                if img:
                    images[Word.tensor(name)] = suspend_element(img, self.space)
            self._maps[k] = GradedMap(self.space, self.space, -1, images)
        return self._maps[k]


def unshift_coop(shifted_map: GradedMap, k: int, space: GradedSpace) -> GradedMap:
    """Inverse conjugation: Delta_k = (-1)^{k(k-1)/2} s^{(x)k} o delta_k o s^{-1}."""
    c = _interleave_sign(k)
    images = {}
    for w, el in shifted_map.images.items():
        images[w] = c * suspend_element(el, space)
    return GradedMap(space, space, k - 2, images)


class ShiftedBrackets:
    """Brackets conjugated onto the suspension: B_k of uniform degree -1.

    Evaluation is on tensor words over sL (memoized); the underlying wedge
    lookup canonicalizes in L-degrees.
    """

    def __init__(self, L: LInfAlgebra):
        self.algebra = L
        self.space = L.space.suspend(+1)
        self._cache: dict[tuple[int, tuple[str, ...]], Element] = {}

    @property
    def arities(self):
        return sorted(self.algebra.ops)

    def apply_factors(self, k: int, factors: tuple[str, ...]) -> Element:
        key = (k, factors)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        L = self.algebra
        sign = suspension_sign([self.space.degree(f) for f in factors])
        val = L.ell(k).apply_word(Word.tensor(*factors))
        out = sign * suspend_element(val, self.space)
        self._cache[key] = out
        return out

    def apply(self, k: int, el: Element) -> Element:
        out = Element.zero(self.space)
        for w, c in el.terms.items():
            out = out + c * self.apply_factors(k, w.factors)
        return out


def unshift_bracket(space: GradedSpace, k: int, apply_factors) -> GradedMap:
    """ell_k from a shifted bracket evaluator:
    ell_k = (-1)^{k(k-1)/2} s^{-1} o B_k o s^{(x)k}, materialized on wedge words."""
    c = _interleave_sign(k)
    sspace = space.suspend(+1)
    images = {}
    for w in word_basis(space, "w", k):
        sign = suspension_sign([space.degree(f) for f in w.factors])
        val = apply_factors(k, w.factors)
        if val:
            images[w] = (c * sign) * suspend_element(val, space)
    return GradedMap(space, space, k - 2, images, arity=k, in_kind="w")


# ---------------------------------------------------------------------------
# A-infinity checks


def _identity(space: GradedSpace) -> GradedMap:
    return GradedMap.identity(space)


def _ainf_total(ops: dict[int, GradedMap], space: GradedSpace, gen: str,
                i: int, literal_signs: bool) -> Element:
    ident = _identity(space)
    total = Element.zero(space)
    for k in ops:
        j = i - k + 1
        if j < 1 or j not in ops:
            continue
        inner = ops[j].apply_word(Word.tensor(gen))
        if not inner:
            continue
        for n in range(0, i - k + 1):
            a = i - k - n
            slots = [ident] * a + [ops[k]] + [ident] * n
            out = tensor_apply(slots, [1] * (i - k + 1), inner)
            if literal_signs:
                sc = -1 if (k + n + k * n) % 2 else 1
                out = sc * out
            total = total + out
    return total


def check_ainf(C: AInfCoalgebra) -> CheckReport:
    """Evaluate the A-infinity coherence relation on every basis element."""
    if not C.ops:
        return CheckReport(True)
    top = 2 * C.max_arity - 1
    for i in range(1, top + 1):
        for gen in C.space.names:
            total = _ainf_total(C.ops, C.space, gen, i, literal_signs=True)
            if total:
                return CheckReport(False, f"relation i={i} on {gen}", total)
    return CheckReport(True)


def check_ainf_shifted(C: AInfCoalgebra) -> CheckReport:
    """Cross-form of check_ainf in the degree -1 normalization (sign-free)."""
    sh = C.shifted()
    ops = {k: sh.op(k) for k in C.ops}
    top = 2 * C.max_arity - 1 if C.ops else 0
    for i in range(1, top + 1):
        for gen in sh.space.names:
            total = _ainf_total(ops, sh.space, gen, i, literal_signs=False)
            if total:
                return CheckReport(False, f"shifted relation i={i} on {gen}", total)
    return CheckReport(True)


def check_cocommutative(C: AInfCoalgebra) -> CheckReport:
    """tau o Delta_k = 0 for all k, tau the proper unshuffle splittings."""
    for k, m in sorted(C.ops.items()):
        if k < 2:
            continue
        for gen in C.space.names:
            el = m.apply_word(Word.tensor(gen))
            acc: dict[tuple[Word, Word], Fraction] = {}
            for w, c in el.terms.items():
                for pair, s in unshuffle(C.space, w, proper=True).items():
                    acc[pair] = acc.get(pair, Fraction(0)) + s * c
            bad = {p: v for p, v in acc.items() if v}
            if bad:
                pair = next(iter(bad))
                return CheckReport(
                    False, f"tau on Delta_{k}({gen}), split {pair[0]!r}|{pair[1]!r}"
                )
    return CheckReport(True)


def iterated_coproduct(C: AInfCoalgebra, k: int) -> GradedMap:
    """Delta^{(k)} = (Delta (x) id^{...}) o ... o Delta, Delta^{(0)} = id."""
    if not C.is_dgc:
        raise ValueError("iterated coproducts need a DGC (Delta_k = 0 for k > 2)")
    ident = _identity(C.space)
    if k == 0:
        return ident
    delta = C.delta(2)
    images = {Word.tensor(n): delta.apply_word(Word.tensor(n)) for n in C.space.names}
    for step in range(1, k):
        new = {}
        slots = [delta] + [ident] * step
        for w, el in images.items():
            out = tensor_apply(slots, [1] * (step + 1), el)
            if out:
                new[w] = out
        images = new
    images = {w: el for w, el in images.items() if el}
    return GradedMap(C.space, C.space, 0, images)


# ---------------------------------------------------------------------------
# L-infinity checks


def _shuffles(n: int, i: int):
    import itertools

    for left in itertools.combinations(range(n), i):
        right = tuple(p for p in range(n) if p not in left)
        yield left, right


def _shuffle_sign(degs, left, right, signature: bool) -> int:
    sign = 1
    for a in left:
        for b in right:
            if b < a:
                if signature:
                    sign = -sign
                if degs[a] % 2 and degs[b] % 2:
                    sign = -sign
    return sign


def _jacobi_total(get, arities, space: GradedSpace, factors: tuple[str, ...],
                  n: int, literal_signs: bool) -> Element:
    """Sum over (i, n-i)-shuffles of outer(inner(block), rest)."""
    degs = [space.degree(f) for f in factors]
    total = Element.zero(space)
    for i in arities:
        j = n + 1 - i
        if j < 1 or j not in arities:
            continue
        block_sign = 1
        if literal_signs and (i * (j - 1)) % 2:
            block_sign = -1
        for left, right in _shuffles(n, i):
            s = _shuffle_sign(degs, left, right, signature=literal_signs)
            inner = get(i, tuple(factors[p] for p in left))
            if not inner:
                continue
            rest = tuple(factors[p] for p in right)
            for w, c in inner.terms.items():
                out = get(j, w.factors + rest)
                if out:
                    total = total + (block_sign * s * c) * out
    return total


def _candidate_words(space: GradedSpace, supports: dict[int, list[Word]],
                     arities, n: int, kind: str = "w"):
    """Words that can carry a nonzero Jacobi summand at arity n."""
    seen = set()
    out = []
    for i in arities:
        j = n + 1 - i
        if j < 1 or j not in arities:
            continue
        for w_in in supports[i]:
            if j == 1:
                exts: list[tuple[str, ...]] = [()] if n == i else []
            else:
                exts = []
                for w_out in supports[j]:
                    fs = w_out.factors
                    for drop in range(len(fs)):
                        exts.append(fs[:drop] + fs[drop + 1:])
            for ext in exts:
                combo = w_in.factors + ext
                if len(combo) != n:
                    continue
                w, s = canonical_word(space, kind, combo)
                if w is None or w in seen:
                    continue
                seen.add(w)
                out.append(w)
    return out


def check_linf(L: LInfAlgebra, words: list[Word] | None = None) -> CheckReport:
    """Evaluate the generalized Jacobi identity.

    Without an explicit word list the check runs on all wedge words that
    could carry a nonzero summand (built from the ops' supports), which is
    exhaustive.
    """
    if not L.ops:
        return CheckReport(True)
    arities = sorted(L.ops)
    supports = {k: L.ops[k].support() for k in arities}

    def get(k, factors):
        if k not in L.ops:
            return Element.zero(L.space)
        return L.ops[k].apply_word(Word.tensor(*factors))

    top = 2 * L.max_arity - 1
    for n in range(1, top + 1):
        cands = words if words is not None else _candidate_words(
            L.space, supports, arities, n
        )
        for w in cands:
            if len(w) != n:
                continue
            total = _jacobi_total(get, arities, L.space, w.factors, n, True)
            if total:
                return CheckReport(False, f"Jacobi n={n} on {w!r}", total)
    return CheckReport(True)


def check_linf_shifted(L: LInfAlgebra, words: list[Word] | None = None) -> CheckReport:
    """Cross-form of check_linf in the suspended normalization."""
    if not L.ops:
        return CheckReport(True)
    sh = L.shifted()
    arities = sorted(L.ops)
    supports = {k: [Word.mono(*w.factors) for w in L.ops[k].support()] for k in arities}

    def get(k, factors):
        if k not in L.ops:
            return Element.zero(sh.space)
        return sh.apply_factors(k, factors)

    top = 2 * L.max_arity - 1
    for n in range(1, top + 1):
        if words is not None:
            cands = [Word.mono(*w.factors) for w in words if len(w) == n]
        else:
            cands = _candidate_words(sh.space, supports, arities, n, kind="m")
        for w in cands:
            if len(w) != n:
                continue
            total = _jacobi_total(get, arities, sh.space, w.factors, n, False)
            if total:
                return CheckReport(False, f"shifted Jacobi n={n} on {w!r}", total)
    return CheckReport(True)


# ---------------------------------------------------------------------------
# Maurer-Cartan machinery


def mc_residual(L: LInfAlgebra, z: Element) -> Element:
    """sum_k (1/k!) ell_k(z, ..., z); finite because the op family is."""
    total = Element.zero(L.space)
    power = z
    for k in range(1, L.max_arity + 1):
        if k > 1:
            power = power.tensor(z)
        if k in L.ops:
            total = total + Fraction(1, math.factorial(k)) * L.ell(k).apply(power)
    return total


def mc_check(L: LInfAlgebra, z: Element) -> MaurerCartanElement:
    """Verify the Maurer-Cartan equation; raises on failure."""
    if z and z.degree != -1:
        raise ValueError(f"Maurer-Cartan elements have degree -1, got {z.degree}")
    res = mc_residual(L, z)
    if res:
        raise ValueError(f"Maurer-Cartan equation fails, residual {res!r}")
    return MaurerCartanElement(z, L)


def perturb(L: LInfAlgebra, mc: MaurerCartanElement, validate: bool = True) -> LInfAlgebra:
    """Twisted structure ell_k^z = sum_i (1/i!) ell_{i+k}(z,...,z, -)."""
    z = mc.element
    ops: dict[int, GradedMap] = {}
    for k in range(1, L.max_arity + 1):
        images = {}
        for w in word_basis(L.space, "w", k):
            base = Element(L.space, {Word.tensor(*w.factors): Fraction(1)})
            total = Element.zero(L.space)
            arg = base
            for i in range(0, L.max_arity - k + 1):
                if i > 0:
                    arg = z.tensor(arg)
                    if not arg:
                        break
                if i + k in L.ops:
                    total = total + Fraction(1, math.factorial(i)) * L.ell(i + k).apply(arg)
            if total:
                images[w] = total
        if images:
            ops[k] = GradedMap(L.space, L.space, k - 2, images, arity=k, in_kind="w")
    return LInfAlgebra(L.space, ops, validate=validate)


def dgc_from_tables(space: GradedSpace, diff: dict, cop: dict,
                    counit: str | None = None, validate: bool = True) -> AInfCoalgebra:
    """DGC from tables: diff {gen: [(coeff, target)]},
    cop {gen: [(coeff, (left, right))]}."""
    ops: dict[int, GradedMap] = {}
    if diff:
        images = {
            Word.tensor(g): Element.make(space, [(c, "t", (t,)) for c, t in pairs])
            for g, pairs in diff.items()
        }
        ops[1] = GradedMap(space, space, -1, images)
    if cop:
        images = {
            Word.tensor(g): Element.make(space, [(c, "t", fs) for c, fs in pairs])
            for g, pairs in cop.items()
        }
        ops[2] = GradedMap(space, space, 0, images)
    return AInfCoalgebra(space, ops, counit=counit, validate=validate)


def linf_from_tables(space: GradedSpace, ops_table: dict[int, dict],
                     validate: bool = True) -> LInfAlgebra:
    """L-infinity from {k: {(names...): [(coeff, target)]}} tables."""
    ops: dict[int, GradedMap] = {}
    for k, table in ops_table.items():
        images = {}
        for fs, pairs in table.items():
            w, s = canonical_word(space, "w", fs)
            if w is None:
                raise ValueError(f"degenerate wedge word {fs}")
            el = Element.make(space, [(s * frac(c), "t", (t,)) for c, t in pairs])
            if el:
                images[w] = el
        if images:
            ops[k] = GradedMap(space, space, k - 2, images, arity=k, in_kind="w")
    return LInfAlgebra(space, ops, validate=validate)


def truncate(L: LInfAlgebra, validate: bool = True) -> LInfAlgebra:
    """Keep positive degrees and the ell_1-cycles in degree 0.

    The degree-0 part is replaced by an echelon basis of ker(ell_1),
    named by pivot generators; brackets are re-expressed in that basis.
    """
    space = L.space
    pos = [n for n in space.names if space.degree(n) > 0]
    zero = [n for n in space.names if space.degree(n) == 0]
    ell1 = L.ell(1)

    # cycle basis in degree 0
    tgt = [n for n in space.names if space.degree(n) == -1]
    mat = []
    for t in tgt:
        row = []
        for n in zero:
            img = ell1.apply_word(Word.tensor(n))
            row.append(img.coeff(Word.tensor(t)))
        mat.append(row)
    cycles = linalg.nullspace(mat, len(zero)) if zero else []
    cycles = linalg.echelon_basis(cycles)

    pairs = [(n, space.degree(n)) for n in pos]
    include: dict[str, Element] = {n: Element.gen(space, n) for n in pos}
    cycle_words = [Word.tensor(n) for n in zero]
    for vec in cycles:
        pivot = zero[next(i for i, x in enumerate(vec) if x)]
        include[pivot] = from_coords(space, cycle_words, vec)
        pairs.append((pivot, 0))
    new_space = GradedSpace.of(sorted(pairs, key=lambda p: space.index(p[0])))

    # coordinates of a degree-0 cycle in the new basis
    cyc_cols = [[v[i] for v in cycles] for i in range(len(zero))] if cycles else []
    zero_new = [n for n, d in new_space.basis if d == 0]

    def reexpress(el: Element) -> Element:
        if not el:
            return Element.zero(new_space)
        if el.degree != 0:
            for w in el.terms:
                if any(f not in new_space for f in w.factors):
                    raise ValueError("truncation is not closed under brackets")
            return Element(new_space, dict(el.terms))
        vec = [el.coeff(Word.tensor(n)) for n in zero]
        sol = linalg.solve(cyc_cols, vec) if cycles else None
        if sol is None:
            raise ValueError("bracket output is not an ell_1-cycle in degree 0")
        return Element.make(new_space, [(c, "t", (zero_new[i],)) for i, c in enumerate(sol) if c])

    ops: dict[int, GradedMap] = {}
    for k in sorted(L.ops):
        images = {}
        for w in word_basis(new_space, "w", k):
            arg = None
            for f in w.factors:
                e = include[f]
                arg = e if arg is None else arg.tensor(e)
            out = L.ell(k).apply(arg)
            out_deg = out.degree
            if not out or out_deg is None:
                continue
            if out_deg < 0:
                raise ValueError("truncation is not closed under brackets")
            img = reexpress(out)
            if img:
                images[w] = img
        if images:
            ops[k] = GradedMap(new_space, new_space, k - 2, images, arity=k, in_kind="w")
    return LInfAlgebra(new_space, ops, validate=validate)
