"""Lexicographic ℓ-groups, the Γ and Δ functors, Komori chains, and the
Belluce and Id_c lattices of a finite MV-algebra.

Groups are lexicographic products of ℤ and ℚ of rank at most 3.  Elements
are plain tuples of ints and Fractions; Python's tuple ordering is exactly
the lexicographic order, which keeps the arithmetic honest and short.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .errors import MvsError, UnsupportedPresentationError
from .lattice import FiniteDistLattice
from .mv import INF, FiniteMvAlgebra
from .spectra import (
    SpecPoset,
    enumerate_ideals,
    homeomorphic,
    ideal_generated,
    ideal_meet,
    ideal_sum,
    prime_ideals,
    spec,
)

MAX_RANK = 3
_DOMAINS = ("Z", "Q")


@dataclass(frozen=True)
class LexGroup:
    domains: tuple = ()

    def __post_init__(self):
        doms = tuple(str(d).upper() for d in self.domains)
        if any(d not in _DOMAINS for d in doms):
            raise UnsupportedPresentationError(f"coordinates must be Z or Q, got {self.domains}")
        if len(doms) > MAX_RANK:
            raise UnsupportedPresentationError(f"rank {len(doms)} exceeds {MAX_RANK}")
        object.__setattr__(self, "domains", doms)

    @classmethod
    def parse(cls, text: str) -> "LexGroup":
        """'Z', 'ZxQ', 'Z lex Z', or '0'/'trivial' for the zero group."""
        t = text.strip().replace(" lex ", "x").replace("×", "x").replace(" ", "")
        if t.lower() in ("", "0", "trivial"):
            return cls(())
        return cls(tuple(t.upper().split("X")))

    @property
    def rank(self) -> int:
        return len(self.domains)

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def __str__(self):
        return " lex ".join(self.domains) if self.domains else "0"

    def element(self, coords) -> tuple:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise MvsError(f"expected {self.rank} coordinates, got {len(coords)}")
        out = []
        for d, c in zip(self.domains, coords):
            q = Fraction(c)
            if d == "Z":
                if q.denominator != 1:
                    raise MvsError(f"coordinate {c} is not an integer")
                out.append(int(q))
            else:
                out.append(q)
        return tuple(out)

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def negate(self, a) -> tuple:
        return tuple(-x for x in a)

    def scale(self, n: int, a) -> tuple:
        return tuple(n * x for x in a)

    def lex_over(self, head: str = "Z") -> "LexGroup":
        """The group ℤ lex G (or ℚ lex G)."""
        return LexGroup((head,) + self.domains)

    def convex_subgroup(self, k: int) -> "LIdealDescriptor":
        return LIdealDescriptor(self, k)


@dataclass(frozen=True)
class LIdealDescriptor:
    """The convex subgroup of elements whose leading rank−k coordinates vanish.

    In a lexicographic group these are all the convex ℓ-subgroups; they form
    a chain and every proper one is prime.
    """

    group: LexGroup
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.group.rank:
            raise MvsError("convex subgroup index out of range")

    @property
    def is_proper(self) -> bool:
        return self.k < self.group.rank

    def __contains__(self, x) -> bool:
        lead = self.group.rank - self.k
        return all(c == 0 for c in tuple(x)[:lead])

    def __le__(self, other: "LIdealDescriptor") -> bool:
        return self.k <= other.k

    def __str__(self):
        d = self.group.rank
        return "(" + ",".join(["0"] * (d - self.k) + ["*"] * self.k) + ")"


@dataclass(frozen=True)
class UnitalLGroup:
    group: LexGroup
    unit: tuple

    def __post_init__(self):
        unit = self.group.element(self.unit)
        object.__setattr__(self, "unit", unit)
        if unit <= self.group.zero:
            raise MvsError("the unit must be positive")
        # in a lex group u is a strong unit iff its leading coordinate is positive
        if unit[0] <= 0:
            raise MvsError("the unit is not a strong unit (leading coordinate must be positive)")


@dataclass(frozen=True)
class SymbolicMvAlgebra:
    """Γ(G, u) for a lexicographic G, with closed-form operations."""

    group: LexGroup
    unit: tuple
    tag: str = field(default="gamma", compare=False)

    def __post_init__(self):
        UnitalLGroup(self.group, self.unit)
        object.__setattr__(self, "unit", self.group.element(self.unit))

    @property
    def zero(self) -> tuple:
        return self.group.zero

    @property
    def one(self) -> tuple:
        return self.unit

    @property
    def rank(self) -> int:
        return self.group.rank

    def contains(self, e) -> bool:
        try:
            e = self.group.element(e)
        except MvsError:
            return False
        return self.zero <= e <= self.unit

    def element(self, *coords) -> tuple:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        e = self.group.element(coords)
        if not self.zero <= e <= self.unit:
            raise MvsError(f"{e} lies outside [0, {self.unit}]")
        return e

    def oplus(self, a, b) -> tuple:
        return min(self.group.add(a, b), self.unit)

    def neg(self, a) -> tuple:
        return self.group.sub(self.unit, a)

    def join(self, a, b) -> tuple:
        return max(a, b)

    def meet(self, a, b) -> tuple:
        return min(a, b)

    def odot(self, a, b) -> tuple:
        return max(self.group.sub(self.group.add(a, b), self.unit), self.zero)

    def ominus(self, a, b) -> tuple:
        return self.odot(a, self.neg(b))

    def leq(self, a, b) -> bool:
        return a <= b

    def multiple(self, a, n: int) -> tuple:
        return min(self.group.scale(n, a), self.unit)

    def power(self, a, n: int) -> tuple:
        if n == 0:
            return self.unit
        return max(self.group.sub(self.group.scale(n, a), self.group.scale(n - 1, self.unit)),
                   self.zero)

    def ord(self, a):
        """Least n with na = 1, or ∞; closed form on the leading coordinate."""
        a = tuple(a)
        if a[0] == 0:
            return INF
        n = math.ceil(Fraction(self.unit[0]) / Fraction(a[0]))
        return n if self.group.scale(n, a) >= self.unit else n + 1

    def is_infinitesimal(self, a) -> bool:
        return a != self.zero and a[0] == 0

    def format(self, a) -> str:
        a = tuple(a)
        if self.tag == "chang":
            return str(ChangTerm.from_pair(a))
        return "(" + ",".join(str(c) for c in a) + ")"

    def sample(self, bound: int = 3) -> list[tuple]:
        """A deterministic finite window of elements: leading coordinates on
        the integer grid up to the unit, trailing ones in [-bound, bound]
        (halves included for ℚ coordinates)."""
        axes = []
        top = math.floor(self.unit[0])
        axes.append(range(0, top + 1))
        for d in self.group.domains[1:]:
            if d == "Z":
                axes.append(range(-bound, bound + 1))
            else:
                axes.append(sorted({Fraction(i, 2) for i in range(-2 * bound, 2 * bound + 1)}))
        return [e for e in cartesian(*axes) if self.zero <= e <= self.unit]

    def __str__(self):
        return f"Γ({self.group}, {self.format(self.unit) if self.tag != 'chang' else '(1,0)'})"


# --------------------------------------------------------------------------
# functors and named algebras


def lukasiewicz(m: int) -> FiniteMvAlgebra:
    """Ł_m = Γ(ℤ, m): the (m+1)-element chain {0, 1/m, ..., 1}."""
    if m < 1:
        raise MvsError("Łukasiewicz chains need m ≥ 1")
    n = m + 1
    oplus = [[min(i + j, m) for j in range(n)] for i in range(n)]
    neg = [m - i for i in range(n)]
    return FiniteMvAlgebra(n, oplus, neg, [str(Fraction(i, m)) for i in range(n)])


def gamma(G: LexGroup | UnitalLGroup, unit=None):
    """Γ(G, u); materialized as a table when G = ℤ."""
    if isinstance(G, UnitalLGroup):
        G, unit = G.group, G.unit
    if isinstance(unit, (int, Fraction)):
        unit = (unit,)
    Gu = UnitalLGroup(G, unit)
    if G.domains == ("Z",):
        return lukasiewicz(Gu.unit[0])
    tag = "gamma"
    if G.domains == ("Z", "Z") and Gu.unit[1] == 0:
        tag = "chang" if Gu.unit[0] == 1 else f"komori({Gu.unit[0]})"
    return SymbolicMvAlgebra(G, Gu.unit, tag)


def delta(G: LexGroup):
    """Δ(G) = Γ(ℤ lex G, (1,0,...,0))."""
    H = G.lex_over("Z")
    return gamma(H, (1,) + (0,) * G.rank)


def delta_m(m: int, G: LexGroup | None = None):
    """Δ_m(G) = Γ(ℤ lex G, (m,0,...,0)); G defaults to ℚ."""
    G = LexGroup(("Q",)) if G is None else G
    return gamma(G.lex_over("Z"), (m,) + (0,) * G.rank)


def komori(m: int) -> SymbolicMvAlgebra:
    """K_m = Γ(ℤ lex ℤ, (m, 0)); K_1 is the Chang algebra."""
    if m < 1:
        raise MvsError("Komori chains need m ≥ 1")
    return gamma(LexGroup(("Z", "Z")), (m, 0))


def chang() -> SymbolicMvAlgebra:
    return komori(1)


def komori_index(S) -> int | None:
    """m when S is K_m, else None."""
    if isinstance(S, SymbolicMvAlgebra) and S.group.domains == ("Z", "Z") and S.unit[1] == 0:
        return int(S.unit[0])
    return None


# --------------------------------------------------------------------------
# the Chang algebra in nc / 1−nc notation


@dataclass(frozen=True)
class ChangTerm:
    """nc (co=False) or 1−nc (co=True), n ≥ 0.  0 = 0c and 1 = 1−0c."""

    n: int
    co: bool = False

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise MvsError(f"Chang coefficient must be a natural number, got {self.n!r}")

    @classmethod
    def from_pair(cls, e) -> "ChangTerm":
        k, z = e
        if k == 0 and z >= 0:
            return cls(int(z))
        if k == 1 and z <= 0:
            return cls(int(-z), True)
        raise MvsError(f"{e} is not an element of the Chang algebra")

    def to_pair(self) -> tuple:
        return (1, -self.n) if self.co else (0, self.n)

    def __str__(self):
        if self.co:
            return "1" if self.n == 0 else f"1-{self._c()}"
        return "0" if self.n == 0 else self._c()

    def _c(self):
        return "c" if self.n == 1 else f"{self.n}c"


def chang_op(x: ChangTerm, y: ChangTerm | None = None, op: str = "⊕") -> ChangTerm:
    """⊕ and ¬ of the Chang algebra by its case table.

    nc ⊕ mc = (n+m)c; (1−nc) ⊕ mc = 1−(n−m)c when m < n, and symmetrically;
    every other sum is 1.  ¬(nc) = 1−nc.
    """
    for t in (x, y):
        if t is not None and not isinstance(t, ChangTerm):
            raise MvsError(f"malformed Chang element {t!r}")
    if op in ("¬", "neg", "not"):
        return ChangTerm(x.n, not x.co)
    if op not in ("⊕", "oplus", "+"):
        raise MvsError(f"unknown Chang operation {op!r}")
    if y is None:
        raise MvsError("⊕ needs two arguments")
    if not x.co and not y.co:
        return ChangTerm(x.n + y.n)
    if x.co and not y.co and y.n < x.n:
        return ChangTerm(x.n - y.n, True)
    if y.co and not x.co and x.n < y.n:
        return ChangTerm(y.n - x.n, True)
    return ChangTerm(0, True)


# --------------------------------------------------------------------------
# spectra of symbolic algebras and ℓ-groups


def symbolic_primes(S: SymbolicMvAlgebra) -> list[LIdealDescriptor]:
    """Primes of Γ(G,u) as convex subgroups H of G (H ∩ [0,u]), smallest first."""
    if not isinstance(S, SymbolicMvAlgebra):
        raise UnsupportedPresentationError("symbolic spectra need a symbolic algebra")
    if S.rank > MAX_RANK:
        raise UnsupportedPresentationError("rank too large")
    return [LIdealDescriptor(S.group, k) for k in range(S.rank)]


def _check_symbolic_prime(S: SymbolicMvAlgebra, P: LIdealDescriptor, window) -> None:
    # spot-check the ideal and prime laws on a finite window
    for a in window:
        for b in window:
            if a in P and b in P and S.oplus(a, b) not in P:
                raise MvsError(f"{P} is not ⊕-closed at {a}, {b}")
            if b in P and a <= b and a not in P:
                raise MvsError(f"{P} is not downward closed at {a} ≤ {b}")
            if S.meet(a, b) in P and a not in P and b not in P:
                raise MvsError(f"{P} is not prime at {a}, {b}")
    if S.unit in P:
        raise MvsError(f"{P} is not proper")


def symbolic_spec(S) -> SpecPoset:
    """Prime spectrum of a symbolic algebra, from the convex-subgroup chain."""
    if isinstance(S, FiniteMvAlgebra):
        return spec(S)
    primes = symbolic_primes(S)
    window = S.sample(2)
    for P in primes:
        _check_symbolic_prime(S, P, window)
    leq = [[p <= q for q in primes] for p in primes]
    return SpecPoset(tuple(primes), leq, tuple(str(P) for P in primes))


def symbolic_quotient(S: SymbolicMvAlgebra, P: LIdealDescriptor):
    """Γ(G,u)/(H ∩ [0,u]) ≅ Γ(G/H, u+H); for lex G this drops trailing
    coordinates."""
    if P.group != S.group or not P.is_proper:
        raise UnsupportedPresentationError("quotient needs a proper convex subgroup of the group")
    keep = S.rank - P.k
    return gamma(LexGroup(S.group.domains[:keep]), S.unit[:keep])


def lgroup_prime_spectrum(G: LexGroup) -> SpecPoset:
    """Prime ℓ-ideals of a lex group: its proper convex subgroups."""
    if not isinstance(G, LexGroup):
        raise UnsupportedPresentationError("only lexicographic groups are supported")
    primes = [LIdealDescriptor(G, k) for k in range(G.rank)]
    leq = [[p <= q for q in primes] for p in primes]
    return SpecPoset(tuple(primes), leq, tuple(str(P) for P in primes))


def verify_lspec(G: LexGroup) -> bool:
    """Spec(Δ(G)) minus its unique closed point is homeomorphic to the
    prime spectrum of G."""
    Y = symbolic_spec(delta(G))
    tops = Y.maximal_points()
    if len(tops) != 1:
        return False
    X = Y.remove(tops[0])
    return homeomorphic(X, lgroup_prime_spectrum(G))


def project_leading(S: SymbolicMvAlgebra):
    """Γ of the projection ℤ lex H → ℤ onto the leading coordinate.

    Returns the target chain and the element map.
    """
    u0 = S.unit[0]
    if S.group.domains[0] != "Z" or any(c != 0 for c in S.unit[1:]):
        raise UnsupportedPresentationError("projection needs a unit of the form (m,0,...)")
    target = lukasiewicz(int(u0))
    return target, (lambda e: int(e[0]))


# --------------------------------------------------------------------------
# Belluce and Id_c lattices


def belluce(A: FiniteMvAlgebra) -> FiniteDistLattice:
    """A modulo 'lies in the same primes', with the induced ∨ and ∧."""
    primes = prime_ideals(A)
    sig = [sum(1 << i for i, P in enumerate(primes) if x in P) for x in range(A.size)]
    reps: dict[int, int] = {}
    for x in range(A.size):
        reps.setdefault(sig[x], x)
    keys = list(reps)
    pos = {s: i for i, s in enumerate(keys)}
    n = len(keys)
    J, M = A.join_table, A.meet_table
    join = [[None] * n for _ in range(n)]
    meet = [[None] * n for _ in range(n)]
    for x in range(A.size):
        for y in range(A.size):
            i, j = pos[sig[x]], pos[sig[y]]
            jv, mv = pos[sig[J[x][y]]], pos[sig[M[x][y]]]
            if join[i][j] is None:
                join[i][j], meet[i][j] = jv, mv
            elif (join[i][j], meet[i][j]) != (jv, mv):
                raise MvsError("the Belluce congruence is not compatible with ∨/∧")
    labels = ["[" + A.label(reps[s]) + "]" for s in keys]
    return FiniteDistLattice.from_tables(join, meet, pos[sig[0]], pos[sig[A.one]], labels)


def idc(A: FiniteMvAlgebra) -> FiniteDistLattice:
    """Principal ideals ordered by inclusion."""
    gen = [ideal_generated(A, [a]) for a in range(A.size)]
    masks: list[int] = []
    rep: dict[int, int] = {}
    for a, I in enumerate(gen):
        if I.mask not in rep:
            rep[I.mask] = a
            masks.append(I.mask)
    for a in range(A.size):
        for b in range(A.size):
            if ideal_sum(A, gen[a], gen[b]).mask != gen[A.oplus[a][b]].mask:
                raise MvsError("ideal(a) ∨ ideal(b) differs from ideal(a⊕b)")
            if ideal_meet(A, gen[a], gen[b]).mask != gen[A.meet_table[a][b]].mask:
                raise MvsError("ideal(a) ∩ ideal(b) differs from ideal(a∧b)")
    labels = ["(" + A.label(rep[m]) + ")" for m in masks]
    leq = [[a & ~b == 0 for b in masks] for a in masks]
    return FiniteDistLattice.from_leq(leq, labels)


def all_ideals_principal(A: FiniteMvAlgebra) -> bool:
    principal = {ideal_generated(A, [a]).mask for a in range(A.size)}
    return all(I.mask in principal for I in enumerate_ideals(A))
