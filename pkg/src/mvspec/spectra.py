"""Ideals, prime spectra and the finite Zariski topology.

For a finite MV-algebra the spectrum is a finite poset under inclusion;
its closed sets are exactly the up-sets.  The topological predicates below
work on an explicit list of closed sets and never consult the algebra, so
they can serve as independent checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

from .errors import (
    ConsistencyError,
    MvsError,
    NotAnIdealError,
    NotPrimeError,
    check_size,
)
from .lattice import (
    FiniteDistLattice,
    downset_lattice,
    find_lattice_isomorphism,
    popcount,
)
from .mv import FiniteMvAlgebra, MvHom, _is_ideal_mask, _mask_of


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class IdealSet:
    algebra: FiniteMvAlgebra = field(compare=False, repr=False)
    mask: int

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return _bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __le__(self, other: "IdealSet") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "IdealSet") -> bool:
        return self.mask != other.mask and self <= other

    @property
    def members(self) -> tuple:
        return tuple(_bits(self.mask))

    @property
    def is_whole(self) -> bool:
        return self.mask == self.algebra.full_mask

    def __str__(self) -> str:
        return "{" + ",".join(self.algebra.label(x) for x in self.members) + "}"


def _as_ideal(A: FiniteMvAlgebra, I) -> IdealSet:
    mask = _mask_of(A, I)
    if not _is_ideal_mask(A, mask):
        raise NotAnIdealError("not an ideal of the algebra")
    return I if isinstance(I, IdealSet) else IdealSet(A, mask)


def is_ideal(A: FiniteMvAlgebra, S) -> bool:
    return _is_ideal_mask(A, _mask_of(A, S))


def _close(A: FiniteMvAlgebra, mask: int) -> int:
    """Least ideal mask containing ``mask`` and 0."""
    below, o = A.below_masks, A.oplus
    cur = mask | 1
    while True:
        nxt = 0
        for x in _bits(cur):
            nxt |= below[x]
        members = list(_bits(nxt))
        for i, x in enumerate(members):
            row = o[x]
            for y in members[i:]:
                nxt |= below[row[y]]
        if nxt == cur:
            return cur
        cur = nxt


def ideal_generated(A: FiniteMvAlgebra, S=()) -> IdealSet:
    return IdealSet(A, _close(A, _mask_of(A, S)))


def ideal_sum(A: FiniteMvAlgebra, *ideals) -> IdealSet:
    """The ideal generated by a union of ideals."""
    mask = 0
    for I in ideals:
        mask |= _as_ideal(A, I).mask
    return IdealSet(A, _close(A, mask))


def ideal_meet(A: FiniteMvAlgebra, *ideals) -> IdealSet:
    mask = A.full_mask
    for I in ideals:
        mask &= _as_ideal(A, I).mask
    return IdealSet(A, mask)


@lru_cache(maxsize=512)
def _ideal_masks(A: FiniteMvAlgebra) -> tuple:
    check_size(A.size)
    n = A.size
    below, above = A.below_masks, A.above_masks
    # top-down decision order so exclusions propagate to everything above
    order = sorted(range(n), key=lambda x: -popcount(below[x]))
    found = []

    def rec(i, inc, exc):
        if i == n:
            found.append(inc)
            return
        x = order[i]
        bit = 1 << x
        if (inc | exc) & bit:
            rec(i + 1, inc, exc)
            return
        grown = _close(A, inc | bit)
        if not grown & exc:
            rec(i + 1, grown, exc)
        rec(i + 1, inc, exc | above[x])

    rec(0, _close(A, 0), 0)
    return tuple(sorted(found))


def enumerate_ideals(A: FiniteMvAlgebra) -> list[IdealSet]:
    """All ideals, ordered by bitmask."""
    return [IdealSet(A, m) for m in _ideal_masks(A)]


def _is_prime_mask(A: FiniteMvAlgebra, mask: int) -> bool:
    if mask == A.full_mask:
        return False
    meet = A.meet_table
    outside = [x for x in range(A.size) if not mask >> x & 1]
    for i, x in enumerate(outside):
        for y in outside[i:]:
            if mask >> meet[x][y] & 1:
                return False
    return True


def is_prime(A: FiniteMvAlgebra, I) -> bool:
    I = _as_ideal(A, I)
    return _is_prime_mask(A, I.mask)


def prime_ideals(A: FiniteMvAlgebra) -> list[IdealSet]:
    return [I for I in enumerate_ideals(A) if _is_prime_mask(A, I.mask)]


def maximals(A: FiniteMvAlgebra) -> list[IdealSet]:
    primes = prime_ideals(A)
    return [P for P in primes if not any(P < Q for Q in primes)]


def is_maximal(A: FiniteMvAlgebra, I) -> bool:
    I = _as_ideal(A, I)
    return any(I.mask == M.mask for M in maximals(A))


def V(A: FiniteMvAlgebra, I) -> frozenset:
    """Primes containing the ideal (or any subset) I."""
    mask = _mask_of(A, I)
    return frozenset(P for P in prime_ideals(A) if mask & ~P.mask == 0)


def O(A: FiniteMvAlgebra, a: int) -> frozenset:
    """Primes not containing the element a."""
    return frozenset(P for P in prime_ideals(A) if a not in P)


def radical(A: FiniteMvAlgebra) -> IdealSet:
    """Intersection of the maximal ideals; the whole algebra if there are none."""
    return ideal_meet(A, *maximals(A))


def pullback_prime(h: MvHom, P) -> IdealSet:
    B = h.target
    P = _as_ideal(B, P)
    if not _is_prime_mask(B, P.mask):
        raise NotPrimeError("pullback needs a prime of the target")
    pre = h.preimage_mask(P.mask)
    if not _is_prime_mask(h.source, pre) or not _is_ideal_mask(h.source, pre):
        raise ConsistencyError("preimage of a prime is not prime")
    return IdealSet(h.source, pre)


def image_ideal(h: MvHom, I) -> IdealSet:
    """Image of an ideal under a surjective homomorphism."""
    if not h.is_surjective():
        raise MvsError("image of an ideal is taken along surjections only")
    I = _as_ideal(h.source, I)
    img = h.image_mask(I.mask)
    if not _is_ideal_mask(h.target, img):
        raise ConsistencyError("image of an ideal under a surjection is not an ideal")
    return IdealSet(h.target, img)


# --------------------------------------------------------------------------
# spectral posets


@dataclass(frozen=True)
class SpecPoset:
    """A finite poset given by its points and an order matrix."""

    points: tuple
    leq: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "leq", tuple(tuple(bool(v) for v in r) for r in self.leq))
        n = len(self.points)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise MvsError("order matrix does not match the number of points")
        for x in range(n):
            if not self.leq[x][x]:
                raise MvsError("order is not reflexive")
            for y in range(n):
                if x != y and self.leq[x][y] and self.leq[y][x]:
                    raise MvsError("order is not antisymmetric")
                if self.leq[x][y] and any(self.leq[y][z] and not self.leq[x][z]
                                          for z in range(n)):
                    raise MvsError("order is not transitive")

    @classmethod
    def from_ideals(cls, ideals) -> "SpecPoset":
        ideals = list(ideals)
        leq = [[a <= b for b in ideals] for a in ideals]
        return cls(tuple(ideals), leq, tuple(str(I) for I in ideals))

    @classmethod
    def chain(cls, n: int, points=None) -> "SpecPoset":
        pts = tuple(range(n)) if points is None else tuple(points)
        return cls(pts, [[x <= y for y in range(n)] for x in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "SpecPoset":
        return cls(tuple(range(n)), [[x == y for y in range(n)] for x in range(n)])

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(self.points[i])

    @cached_property
    def up_masks(self) -> tuple:
        n = self.size
        return tuple(sum(1 << y for y in range(n) if self.leq[x][y]) for x in range(n))

    @cached_property
    def down_masks(self) -> tuple:
        n = self.size
        return tuple(sum(1 << y for y in range(n) if self.leq[y][x]) for x in range(n))

    def up_closure(self, mask: int) -> int:
        out = 0
        for x in _bits(mask):
            out |= self.up_masks[x]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for x in _bits(mask):
            out |= self.down_masks[x]
        return out

    def maximal_points(self) -> list[int]:
        return [x for x in range(self.size) if self.up_masks[x] == 1 << x]

    def minimal_points(self) -> list[int]:
        return [x for x in range(self.size) if self.down_masks[x] == 1 << x]

    def is_chain(self) -> bool:
        return all(self.leq[x][y] or self.leq[y][x]
                   for x in range(self.size) for y in range(self.size))

    def hasse_edges(self) -> list[tuple[int, int]]:
        n, leq = self.size, self.leq
        edges = []
        for x in range(n):
            for y in range(n):
                if x != y and leq[x][y] and not any(
                        z not in (x, y) and leq[x][z] and leq[z][y] for z in range(n)):
                    edges.append((x, y))
        return edges

    def remove(self, i: int) -> "SpecPoset":
        keep = [x for x in range(self.size) if x != i]
        labels = None if self.labels is None else [self.labels[x] for x in keep]
        return SpecPoset([self.points[x] for x in keep],
                         [[self.leq[x][y] for y in keep] for x in keep], labels)

    def upsets(self) -> list[int]:
        """All up-sets, as masks sorted by (size, mask)."""
        n = self.size
        order = sorted(range(n), key=lambda x: -popcount(self.up_masks[x]))
        out = []

        def rec(i, inc, exc):
            if i == n:
                out.append(inc)
                return
            x = order[i]
            bit = 1 << x
            if (inc | exc) & bit:
                rec(i + 1, inc, exc)
                return
            if not self.up_masks[x] & exc:
                rec(i + 1, inc | self.up_masks[x], exc)
            rec(i + 1, inc, exc | self.down_masks[x])

        rec(0, 0, 0)
        return sorted(out, key=lambda m: (popcount(m), m))


def spec(A: FiniteMvAlgebra) -> SpecPoset:
    return SpecPoset.from_ideals(prime_ideals(A))


# --------------------------------------------------------------------------
# finite topologies


@dataclass(frozen=True)
class FiniteTopology:
    n: int
    closed: frozenset

    def __post_init__(self):
        closed = frozenset(self.closed)
        object.__setattr__(self, "closed", closed)
        full = (1 << self.n) - 1
        if 0 not in closed or full not in closed:
            raise MvsError("closed sets must include the empty set and the whole space")
        for a in closed:
            if a & ~full:
                raise MvsError("closed set mentions a point outside the space")
            for b in closed:
                if a | b not in closed or a & b not in closed:
                    raise MvsError("closed sets are not closed under union and intersection")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def opens(self) -> frozenset:
        return frozenset(self.full & ~c for c in self.closed)

    def closure(self, mask: int) -> int:
        out = self.full
        for c in self.closed:
            if mask & ~c == 0:
                out &= c
        return out

    def is_irreducible(self, c: int) -> bool:
        if c == 0 or c not in self.closed:
            return False
        proper = [d for d in self.closed if d != c and d & ~c == 0]
        return not any(a | b == c for a in proper for b in proper)


def zariski_topology(S: SpecPoset) -> FiniteTopology:
    """Closed sets are the up-sets of the poset."""
    return FiniteTopology(S.size, frozenset(S.upsets()))


def zariski_topology_of(A: FiniteMvAlgebra) -> tuple[SpecPoset, FiniteTopology]:
    """Spec(A) with closed sets V(I) for all ideals I, read off the algebra."""
    S = spec(A)
    index = {P: i for i, P in enumerate(S.points)}
    closed = set()
    for I in enumerate_ideals(A):
        closed.add(sum(1 << index[P] for P in V(A, I)))
    return S, FiniteTopology(S.size, frozenset(closed))


def is_sober(T: FiniteTopology) -> bool:
    """Every irreducible closed set is the closure of exactly one point."""
    for c in T.closed:
        if not T.is_irreducible(c):
            continue
        generic = [p for p in range(T.n) if T.closure(1 << p) == c]
        if len(generic) != 1:
            return False
    return True


def is_spectral(T: FiniteTopology) -> bool:
    """Sober, compact, and the compact opens form a basis closed under
    finite intersection.  In a finite space every open set is compact."""
    if not is_sober(T):
        return False
    compact_opens = T.opens
    for u in compact_opens:
        for v in compact_opens:
            if u & v not in compact_opens:
                return False
    for u in T.opens:
        covered = 0
        for v in compact_opens:
            if v & ~u == 0:
                covered |= v
        if covered != u:
            return False
    return T.full in compact_opens


def is_root_system(S: SpecPoset) -> bool:
    leq = S.leq
    for x in range(S.size):
        above = list(_bits(S.up_masks[x]))
        for a, b in combinations(above, 2):
            if not (leq[a][b] or leq[b][a]):
                return False
    return True


def compact_opens_lattice(S: SpecPoset) -> FiniteDistLattice:
    """Open sets (the down-sets) under union and intersection."""
    L, _ = downset_lattice(S.size, S.leq)
    return L


def find_poset_isomorphism(S1: SpecPoset, S2: SpecPoset):
    if S1.size != S2.size:
        return None
    n = S1.size

    def sig(S, x):
        return (popcount(S.up_masks[x]), popcount(S.down_masks[x]))

    s1 = [sig(S1, x) for x in range(n)]
    s2 = [sig(S2, y) for y in range(n)]
    if sorted(s1) != sorted(s2):
        return None
    phi = [-1] * n
    used = [False] * n

    def ok(x):
        y = phi[x]
        for z in range(n):
            w = phi[z]
            if w >= 0 and (S1.leq[x][z] != S2.leq[y][w] or S1.leq[z][x] != S2.leq[w][y]):
                return False
        return True

    def rec(x):
        if x == n:
            return True
        for y in range(n):
            if used[y] or s1[x] != s2[y]:
                continue
            phi[x], used[y] = y, True
            if ok(x) and rec(x + 1):
                return True
            phi[x], used[y] = -1, False
        return False

    return tuple(phi) if rec(0) else None


def homeomorphic(S1: SpecPoset, S2: SpecPoset) -> bool:
    """Decided by order isomorphism and by isomorphism of the lattices of
    compact opens; the two must agree."""
    by_order = find_poset_isomorphism(S1, S2) is not None
    by_lattice = find_lattice_isomorphism(compact_opens_lattice(S1),
                                          compact_opens_lattice(S2)) is not None
    if by_order != by_lattice:
        raise ConsistencyError(
            f"homeomorphism routes disagree: order={by_order}, lattice={by_lattice}")
    return by_order
