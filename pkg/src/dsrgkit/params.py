"""Parameter-set arithmetic for directed strongly regular graphs.

Nothing here touches graph data: feasibility conditions, the integer
spectrum, and the parameter maps for complementation and the pi-join.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt


@dataclass(frozen=True)
class ParameterSet:
    """The 5-tuple ``(n, k, t, lam, mu)``.

    ``t == k`` is an undirected SRG and ``t == 0`` a doubly regular
    tournament.  Complete graphs carry ``mu=None`` since no pair of distinct
    vertices is non-adjacent.
    """

    n: int
    k: int
    t: int
    lam: int
    mu: int | None

    @classmethod
    def srg(cls, n: int, k: int, lam: int, mu: int) -> "ParameterSet":
        return cls(n, k, k, lam, mu)

    @classmethod
    def complete(cls, n: int) -> "ParameterSet":
        return cls(n, n - 1, n - 1, n - 2, None)

    @classmethod
    def parse(cls, values) -> "ParameterSet":
        """Build from 5 integers, or 4 for an undirected SRG ``(n, k, lam, mu)``."""
        vals = [int(v) for v in values]
        if len(vals) == 4:
            return cls.srg(*vals)
        if len(vals) == 5:
            return cls(*vals)
        raise ValueError(f"expected 4 (SRG) or 5 (DSRG) parameters, got {len(vals)}")

    @property
    def kind(self) -> str:
        if self.mu is None:
            return "complete"
        if self.t == self.k:
            return "srg"
        if self.t == 0:
            return "tournament"
        return "dsrg"

    def as_tuple(self) -> tuple:
        return (self.n, self.k, self.t, self.lam, self.mu)

    def __str__(self):
        if self.kind == "complete":
            return f"CompleteGraph({self.n})"
        if self.kind == "srg":
            return f"SRG({self.n},{self.k},{self.lam},{self.mu})"
        return "DSRG({},{},{},{},{})".format(*self.as_tuple())


@dataclass
class FeasibilityReport:
    params: ParameterSet
    conditions: dict[str, bool] = field(default_factory=dict)
    d: int | None = None
    s: int | None = None

    @property
    def feasible(self) -> bool:
        return all(self.conditions.values())

    def failed(self) -> list[str]:
        return [name for name, ok in self.conditions.items() if not ok]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[int, int, int]
    multiplicities: tuple[int, int, int]

    def __str__(self):
        return ", ".join(f"{th}^{m}" for th, m in zip(self.eigenvalues, self.multiplicities))


def feasibility_check(p: ParameterSet) -> FeasibilityReport:
    """Evaluate each arithmetic condition independently.

    Condition names: ``count`` (the 2-path count identity), ``d_square``,
    ``d_divides``, ``parity``, ``bound``, then the inequality block.  For
    undirected SRGs the DSRG inequalities are replaced by ``0 <= lam < k``
    and ``0 <= mu <= k``, and a conference-type SRG (numerator 0) is allowed
    an irrational discriminant.
    """
    n, k, t, lam, mu = p.as_tuple()
    rep = FeasibilityReport(p)
    if min(n, k, t, lam) < 0 or n < 1 or (mu is not None and mu < 0):
        rep.conditions["nonnegative"] = False
        return rep
    if mu is None:
        rep.conditions["complete"] = k == n - 1 and t == k and lam == n - 2
        return rep

    c = rep.conditions
    c["count"] = k * (k + mu - lam) == t + (n - 1) * mu
    disc = (mu - lam) ** 2 + 4 * (t - mu)
    numer = 2 * k - (mu - lam) * (n - 1)
    root = isqrt(disc) if disc >= 0 else -1
    if disc > 0 and root * root == disc:
        rep.d = root
        c["d_square"] = True
        c["d_divides"] = numer % root == 0
        if c["d_divides"]:
            rep.s = numer // root
            c["parity"] = (n - 1 - rep.s) % 2 == 0
            c["bound"] = n - 1 >= abs(rep.s)
        else:
            c["parity"] = c["bound"] = False
    elif p.kind == "srg" and numer == 0 and disc > 0:
        c["d_square"] = c["d_divides"] = c["parity"] = c["bound"] = True
    else:
        c["d_square"] = c["d_divides"] = c["parity"] = c["bound"] = False

    if p.kind == "srg":
        c["lam_range"] = 0 <= lam < k
        c["mu_range"] = 0 <= mu <= k
        c["k_range"] = k < n
    else:
        c["lam<t<k"] = 0 <= lam < t < k
        c["0<mu<=t"] = 0 < mu <= t < k
        c["mu-lam range"] = -2 * (k - t - 1) <= mu - lam <= 2 * (k - t)
    return rep


def spectrum(p: ParameterSet) -> Spectrum:
    """Integer eigenvalues ``k > theta1 > theta2`` and their multiplicities.

    Multiplicities solve ``m1 + m2 = n - 1`` and ``k + m1*theta1 + m2*theta2 = 0``.
    Raises ValueError when the input cannot have an integral spectrum.
    """
    n, k, t, lam, mu = p.as_tuple()
    if mu is None:
        raise ValueError(f"{p}: a complete graph has only two distinct eigenvalues")
    if mu > t and p.kind != "srg":
        raise ValueError(f"{p}: mu > t violates the parameter inequalities")
    disc = (mu - lam) ** 2 + 4 * (t - mu)
    d = isqrt(disc) if disc >= 0 else -1
    if disc <= 0 or d * d != disc:
        raise ValueError(f"{p}: discriminant {disc} is not a positive square")
    th1 = (lam - mu + d) // 2
    th2 = (lam - mu - d) // 2
    num1 = -k - (n - 1) * th2
    if num1 % d:
        raise ValueError(f"{p}: multiplicity {num1}/{d} is not an integer")
    m1 = num1 // d
    m2 = n - 1 - m1
    if m1 <= 0 or m2 <= 0:
        raise ValueError(f"{p}: non-positive multiplicity ({m1}, {m2})")
    return Spectrum((k, th1, th2), (1, m1, m2))


def complement_params(p: ParameterSet) -> ParameterSet:
    n, k, t, lam, mu = p.as_tuple()
    if mu is None:
        raise ValueError("complement of a complete graph is edgeless")
    out = ParameterSet(n, n - k - 1, n - 2 * k + t - 1, n - 2 * k + mu - 2, n - 2 * k + lam)
    if min(out.as_tuple()) < 0:
        raise ValueError(f"{p} has no complementary parameter set: {out.as_tuple()}")
    return out


def pi_join_params(p: ParameterSet, a: int, b: int, j: int) -> ParameterSet:
    """Parameters of the pi-join in power ``j`` over an ``a x b`` partition.

    For complete graphs the off-diagonal quotient entry is ``b``, which is
    what the formula uses in place of the undefined ``mu``.
    """
    if a * b != p.n:
        raise ValueError(f"a*b = {a * b} does not equal n = {p.n}")
    if j < 1:
        raise ValueError(f"power j must be positive, got {j}")
    mu = b if p.mu is None else p.mu
    n = p.n
    return ParameterSet((j * a + 1) * n, j * n + p.k, j * b + p.t, j * b + p.lam, j * b + mu)
