"""Numeric rational-homotopy invariants and the H-space criterion.

dl is the lowest word-length part of a minimal Sullivan differential, bl
the lowest bracket weight in a minimal free-Lie differential, Wl the
longest nonzero iterated binary bracket (higher brackets do not count and
a note records when some are present).  The H-space verdict is one-sided:
cone length 2 is accepted through either certificate the theory provides
(a conilpotence-2 coalgebra, or a two-stage free-Lie filtration), and the
criterion is Wl(target) < bl(source).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Element, GradedSpace, Word
from .functors import CDGA, FreeLieDGL, lie_bracket
from .structures import AInfCoalgebra, LInfAlgebra, iterated_coproduct

INF = math.inf


@dataclass
class InvariantReport:
    name: str
    value: int | float
    witness: object = None
    note: str | None = None

    def __repr__(self) -> str:
        val = "inf" if self.value == INF else str(self.value)
        out = f"{self.name} = {val}"
        if self.witness is not None:
            out += f"  (witness: {self.witness})"
        if self.note:
            out += f"  [{self.note}]"
        return out


def differential_length(A: CDGA) -> InvariantReport:
    """Least word length of a nonzero part of a minimal Sullivan
    differential; infinity when d = 0."""
    if not A.is_minimal:
        raise ValueError("differential length needs a minimal Sullivan algebra")
    best = None
    wit = None
    for g in A.gens.names:
        for j, part in A.d_parts(g).items():
            if part and (best is None or j < best):
                best, wit = j, (g, part)
    if best is None:
        return InvariantReport("dl", INF)
    gen, part = wit
    return InvariantReport("dl", best, witness=f"d({gen}) has the part {part!r}")


def bracket_length(M: FreeLieDGL) -> InvariantReport:
    """Least bracket weight in the differential of a minimal free-Lie model."""
    if not M.is_minimal:
        raise ValueError("bracket length needs a minimal model (no linear part)")
    best = None
    gen = None
    for g, img in M.diff.items():
        for k in img.weights():
            if img.weight_component(k) and (best is None or k < best):
                best, gen = k, g
    if best is None:
        return InvariantReport("bl", INF)
    comp = M.diff[gen].weight_component(best)
    witness = None
    for coeff, tree in M.presentation.get(gen, []):
        if _bracket_weight(tree) == best:
            el = _bracket_tree_element(M.gens, tree)
            if el:
                witness = _bracket_tree_str(tree)
                break
    if witness is None:
        witness = f"weight-{best} part of d({gen}): {comp!r}"
    return InvariantReport("bl", best, witness=witness)


def _bracket_weight(tree) -> int:
    if isinstance(tree, str):
        return 1
    return sum(_bracket_weight(t) for t in tree)


def _bracket_tree_element(gens: GradedSpace, tree) -> Element:
    if isinstance(tree, str):
        return Element.gen(gens, tree)
    left = _bracket_tree_element(gens, tree[0])
    right = _bracket_tree_element(gens, tree[1])
    return lie_bracket(left, right)


def _bracket_tree_str(tree) -> str:
    if isinstance(tree, str):
        return tree
    return f"[{_bracket_tree_str(tree[0])},{_bracket_tree_str(tree[1])}]"


def whitehead_length(L: LInfAlgebra) -> InvariantReport:
    """Longest nonzero iterated binary bracket of a minimal structure."""
    if not L.is_minimal:
        raise ValueError("Whitehead length needs a minimal structure")
    if L.space.dim and L.space.min_degree() < 1:
        raise ValueError("Whitehead length needs a positively graded algebra")
    note = "binary brackets only" if any(k > 2 for k in L.ops) else None
    if 2 not in L.ops:
        return InvariantReport("Wl", 1, witness="all binary brackets vanish",
                               note=note)
    levels = {1: [(Element.gen(L.space, n), n) for n in L.space.names]}
    best, bw = 1, "all binary brackets vanish"
    n = 1
    while levels.get(n):
        n += 1
        nxt = []
        for i in range(1, n // 2 + 1):
            j = n - i
            for a, wa in levels.get(i, []):
                for b, wb in levels.get(j, []):
                    val = L.bracket(2, a, b)
                    if val:
                        nxt.append((val, f"[{wa},{wb}]"))
        if nxt:
            levels[n] = nxt
            best, bw = n, nxt[0][1]
        else:
            break
    return InvariantReport("Wl", best, witness=bw, note=note)


def conilpotence(C: AInfCoalgebra) -> InvariantReport:
    """Least n with the n-fold iterated reduced coproduct zero."""
    if C.counit is not None:
        raise ValueError("conilpotence is an invariant of the reduced coalgebra")
    if not C.is_dgc:
        raise ValueError("conilpotence of a genuine A-infinity coalgebra "
                         "is not implemented; pass a DGC")
    n = 1
    while n <= C.space.dim + 1:
        it = iterated_coproduct(C, n)
        living = [g for g in C.space.names if it.apply_word(Word.tensor(g))]
        if not living:
            return InvariantReport("conilpotence", n)
        n += 1
    raise RuntimeError("iterated coproducts failed to vanish")


@dataclass
class HSpaceVerdict:
    verdict: str  # "yes-by-theorem" | "inconclusive"
    reports: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def __repr__(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        lines += [f"  {r!r}" for r in self.reports]
        lines += [f"  {t}" for t in self.trace]
        return "\n".join(lines)


def two_stage_filtration(M: FreeLieDGL) -> bool:
    """W = W0 + W1 with dW0 = 0 and dW1 inside the Lie algebra on W0."""
    w0 = {g for g in M.gens.names if not M.diff.get(g)}
    for g, img in M.diff.items():
        if not img:
            continue
        for w in img.element.terms:
            if any(f not in w0 for f in w.factors):
                return False
    return True


def hspace_certificate(x_side, y_side: LInfAlgebra,
                       direct_check: bool = True) -> HSpaceVerdict:
    """One-sided H-space detection for the components of the based mapping
    space: accepts a cone-length-2 certificate on the source and compares
    Whitehead length of the target with bracket length of the source."""
    from .transfer import ChainComplex, homology_decomposition
    from .functors import quillen_differential_direct

    reports = []
    trace = []

    if isinstance(x_side, AInfCoalgebra):
        cbar = x_side
        co = conilpotence(cbar)
        reports.append(co)
        cl_ok = co.value <= 2
        trace.append(
            f"cone-length certificate: conilpotence {co.value} "
            + ("<= 2, accepted" if cl_ok else "> 2, not a certificate")
        )
        dec = homology_decomposition(ChainComplex(cbar.space, cbar.delta(1)))
        model = quillen_differential_direct(cbar, dec)
    elif isinstance(x_side, FreeLieDGL):
        model = x_side
        cl_ok = two_stage_filtration(model)
        trace.append(
            "cone-length certificate: two-stage filtration "
            + ("holds" if cl_ok else "fails")
        )
        cbar = None
    else:
        raise ValueError("source side must be a reduced DGC or a free-Lie model")

    bl = bracket_length(model)
    wl = whitehead_length(y_side)
    reports += [bl, wl]
    hypothesis = wl.value < bl.value
    trace.append(f"Wl = {wl.value} {'<' if hypothesis else '>='} bl = {bl.value}")

    if cl_ok and hypothesis and direct_check and cbar is not None:
        from .mapping import mapping_space_model

        mm = mapping_space_model(cbar, y_side)
        higher = sorted(k for k in mm.model.ops if k >= 2)
        if higher:
            trace.append(f"direct check FAILED: nonzero transferred brackets {higher}")
            return HSpaceVerdict("inconclusive", reports, trace)
        trace.append(
            "direct check: all transferred brackets of arity >= 2 vanish"
        )

    if cl_ok and hypothesis:
        return HSpaceVerdict("yes-by-theorem", reports, trace)
    return HSpaceVerdict("inconclusive", reports, trace)
