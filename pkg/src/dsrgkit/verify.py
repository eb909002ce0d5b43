"""Recognise (directed) strongly regular graphs and decide equivalence."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .digraph import Digraph, complement, matmul, transpose
from .params import ParameterSet

DEFAULT_NODE_BUDGET = 10**7


class Kind(str, enum.Enum):
    DSRG = "DSRG"
    SRG = "SRG"
    COMPLETE = "CompleteGraph"
    NOT_SR = "NotStronglyRegular"


@dataclass(frozen=True)
class ClassifyResult:
    kind: Kind
    params: ParameterSet | None = None
    witness: tuple[int, int] | None = None
    reason: str | None = None

    @property
    def is_strongly_regular(self) -> bool:
        return self.kind in (Kind.DSRG, Kind.SRG)

    def __str__(self):
        if self.kind is Kind.NOT_SR:
            where = ""
            if self.witness is not None:
                where = " at ({},{})".format(*(v + 1 for v in self.witness))
            return f"NotStronglyRegular: {self.reason}{where}"
        return str(self.params)


def _first(mask: np.ndarray) -> tuple[int, int]:
    idx = np.argwhere(mask)[0]
    return int(idx[0]), int(idx[-1])


def classify(g: Digraph) -> ClassifyResult:
    """Recover ``(n, k, t, lam, mu)`` from the adjacency matrix, or a witness.

    Parameters are read off in order: ``k`` from row and column sums, ``t``
    from the diagonal of ``A^2``, ``lam`` from ``A^2`` on arcs and ``mu`` from
    ``A^2`` on off-diagonal non-arcs.  The first non-constant quantity is
    reported with the offending vertex pair.
    """
    A = g.adj
    n = g.n
    out_deg = g.out_degrees()
    in_deg = g.in_degrees()
    k = int(out_deg[0])
    if (out_deg != k).any():
        v = int(np.flatnonzero(out_deg != k)[0])
        return ClassifyResult(Kind.NOT_SR, witness=(0, v), reason="out-degrees differ")
    if (in_deg != k).any():
        v = int(np.flatnonzero(in_deg != k)[0])
        return ClassifyResult(Kind.NOT_SR, witness=(0, v), reason="in-degrees differ")
    if k == n - 1:
        return ClassifyResult(Kind.COMPLETE, ParameterSet.complete(n))
    if k == 0:
        return ClassifyResult(Kind.NOT_SR, reason="edgeless graph")

    A2 = matmul(A, A)
    diag = np.diagonal(A2)
    t = int(diag[0])
    if (diag != t).any():
        v = int(np.flatnonzero(diag != t)[0])
        return ClassifyResult(Kind.NOT_SR, witness=(v, v), reason="digon counts differ")
    arcs = A == 1
    lam = int(A2[arcs][0])
    bad = arcs & (A2 != lam)
    if bad.any():
        return ClassifyResult(Kind.NOT_SR, witness=_first(bad), reason="2-path counts on arcs differ")
    nonarcs = ~arcs
    np.fill_diagonal(nonarcs, False)
    mu = int(A2[nonarcs][0])
    bad = nonarcs & (A2 != mu)
    if bad.any():
        return ClassifyResult(Kind.NOT_SR, witness=_first(bad), reason="2-path counts on non-arcs differ")
    p = ParameterSet(n, k, t, lam, mu)
    return ClassifyResult(Kind.SRG if t == k else Kind.DSRG, p)


# -- isomorphism ------------------------------------------------------------


class SearchBudgetExceeded(RuntimeError):
    """The isomorphism search ran out of nodes before reaching a verdict."""


def _signatures(out_m, in_m, colors, classes):
    sigs = []
    for v in range(len(colors)):
        o = out_m[v]
        i = in_m[v]
        sigs.append((colors[v],
                     tuple((o & cm).bit_count() for cm in classes),
                     tuple((i & cm).bit_count() for cm in classes)))
    return sigs


def _class_masks(colors, ncolors):
    masks = [0] * ncolors
    for v, c in enumerate(colors):
        masks[c] |= 1 << v
    return masks


def _joint_refine(g1, c1, g2, c2):
    """Refine two colourings in lock-step; None when their histograms diverge.

    Colour ids are assigned from the sorted union of signatures, so they are
    isomorphism-invariant and directly comparable between the two graphs.
    """
    ncol = max(c1) + 1
    while True:
        m1 = _class_masks(c1, ncol)
        m2 = _class_masks(c2, ncol)
        s1 = _signatures(g1.out_masks, g1.in_masks, c1, m1)
        s2 = _signatures(g2.out_masks, g2.in_masks, c2, m2)
        if Counter(s1) != Counter(s2):
            return None
        ids = {s: i for i, s in enumerate(sorted(set(s1)))}
        new1 = [ids[s] for s in s1]
        new2 = [ids[s] for s in s2]
        if len(ids) == ncol:
            return new1, new2
        c1, c2, ncol = new1, new2, len(ids)


class _IsoSearch:
    def __init__(self, g1: Digraph, g2: Digraph, budget: int):
        self.g1 = g1
        self.g2 = g2
        self.budget = budget
        self.nodes = 0

    def run(self, c1, c2):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"isomorphism search exceeded {self.budget} nodes")
        refined = _joint_refine(self.g1, c1, self.g2, c2)
        if refined is None:
            return None
        c1, c2 = refined
        n = len(c1)
        sizes = Counter(c1)
        if len(sizes) == n:
            where = {c: v for v, c in enumerate(c2)}
            sigma = [where[c] for c in c1]
            if (self.g2.adj[np.ix_(sigma, sigma)] == self.g1.adj).all():
                return sigma
            return None
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        u = c1.index(target)
        fresh = len(sizes)
        for v in (w for w in range(n) if c2[w] == target):
            d1 = list(c1)
            d2 = list(c2)
            d1[u] = fresh
            d2[v] = fresh
            found = self.run(d1, d2)
            if found is not None:
                return found
        return None


def isomorphic(g1: Digraph, g2: Digraph, budget: int = DEFAULT_NODE_BUDGET) -> list[int] | None:
    """Find ``sigma`` with ``adj2[sigma[u], sigma[v]] == adj1[u, v]``, or None.

    Colour refinement on in/out neighbourhood counts, then backtracking that
    individualises a vertex of the smallest non-trivial colour class.  Raises
    :class:`SearchBudgetExceeded` rather than guessing when ``budget`` search
    nodes are used up.
    """
    if g1.n != g2.n:
        return None
    n = g1.n
    if int(g1.adj.sum()) != int(g2.adj.sum()):
        return None
    search = _IsoSearch(g1, g2, budget)
    return search.run([0] * n, [0] * n)


class Equivalence(str, enum.Enum):
    ISOMORPHIC = "Isomorphic"
    REVERSE = "ReverseIsomorphic"
    COMPLEMENT = "ComplementIsomorphic"
    REVERSE_COMPLEMENT = "ReverseComplementIsomorphic"
    NON_EQUIVALENT = "NonEquivalent"


@dataclass(frozen=True)
class EquivalenceVerdict:
    relation: Equivalence
    mapping: list[int] | None = None

    @property
    def equivalent(self) -> bool:
        return self.relation is not Equivalence.NON_EQUIVALENT


def equivalence_targets(g2: Digraph) -> list[tuple[Equivalence, Digraph]]:
    rev = transpose(g2)
    return [
        (Equivalence.ISOMORPHIC, g2),
        (Equivalence.REVERSE, rev),
        (Equivalence.COMPLEMENT, complement(g2)),
        (Equivalence.REVERSE_COMPLEMENT, complement(rev)),
    ]


def equivalence(g1: Digraph, g2: Digraph, budget: int = DEFAULT_NODE_BUDGET) -> EquivalenceVerdict:
    """Test ``g2``, its reverse, complement and reverse complement, in that order."""
    r1 = classify(g1)
    if not r1.is_strongly_regular or not classify(g2).is_strongly_regular:
        raise ValueError("equivalence is defined for DSRGs and SRGs only")
    for relation, target in equivalence_targets(g2):
        rt = classify(target)
        if rt.params != r1.params:
            continue
        sigma = isomorphic(g1, target, budget)
        if sigma is not None:
            return EquivalenceVerdict(relation, sigma)
    return EquivalenceVerdict(Equivalence.NON_EQUIVALENT)
