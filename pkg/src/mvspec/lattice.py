"""Finite bounded distributive lattices and the homomorphism properties
studied on them: closed epimorphisms and duals that preserve closed sets.

Subsets of a lattice are bitmasks over element indices throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import (
    ConsistencyError,
    HomomorphismError,
    InvalidLatticeError,
    MalformedTableError,
    NotAnIdealError,
    NotSurjectiveError,
    check_size,
)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FiniteDistLattice:
    size: int
    join: tuple
    meet: tuple
    bottom: int
    top: int
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        join = tuple(tuple(r) for r in self.join)
        meet = tuple(tuple(r) for r in self.meet)
        n = self.size
        if n < 1 or len(join) != n or len(meet) != n:
            raise MalformedTableError("join/meet tables do not match size")
        for table in (join, meet):
            for row in table:
                if len(row) != n or any(not 0 <= v < n for v in row):
                    raise MalformedTableError("lattice table entry out of range")
        if not (0 <= self.bottom < n and 0 <= self.top < n):
            raise MalformedTableError("bounds out of range")
        check_size(n, "lattice")
        object.__setattr__(self, "join", join)
        object.__setattr__(self, "meet", meet)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    # constructors ----------------------------------------------------------

    @classmethod
    def from_tables(cls, join, meet, bottom, top, labels=None, validate=True):
        L = cls(len(join), join, meet, bottom, top, labels)
        if validate:
            problems = validate_lattice(L)
            if problems:
                raise InvalidLatticeError("; ".join(problems))
        return L

    @classmethod
    def from_leq(cls, leq, labels=None, validate=True):
        """Build join/meet from an order matrix; the order must be a lattice."""
        n = len(leq)
        join = [[None] * n for _ in range(n)]
        meet = [[None] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                ub = [z for z in range(n) if leq[x][z] and leq[y][z]]
                lub = [z for z in ub if all(leq[z][w] for w in ub)]
                lb = [z for z in range(n) if leq[z][x] and leq[z][y]]
                glb = [z for z in lb if all(leq[w][z] for w in lb)]
                if len(lub) != 1 or len(glb) != 1:
                    raise InvalidLatticeError(f"elements {x}, {y} lack a join or meet")
                join[x][y], meet[x][y] = lub[0], glb[0]
        bottom = [z for z in range(n) if all(leq[z][w] for w in range(n))]
        top = [z for z in range(n) if all(leq[w][z] for w in range(n))]
        return cls.from_tables(join, meet, bottom[0], top[0], labels, validate)

    @classmethod
    def chain(cls, n: int) -> "FiniteDistLattice":
        join = [[max(x, y) for y in range(n)] for x in range(n)]
        meet = [[min(x, y) for y in range(n)] for x in range(n)]
        return cls(n, join, meet, 0, n - 1, [str(i) for i in range(n)])

    @classmethod
    def boolean(cls, k: int) -> "FiniteDistLattice":
        n = 1 << k
        join = [[x | y for y in range(n)] for x in range(n)]
        meet = [[x & y for y in range(n)] for x in range(n)]
        labels = [format(x, f"0{k}b") if k else "0" for x in range(n)]
        return cls(n, join, meet, 0, n - 1, labels)

    @classmethod
    def of_sets(cls, masks, labels=None) -> "FiniteDistLattice":
        """Lattice of a family of sets closed under ∪ and ∩."""
        masks = list(masks)
        pos = {m: i for i, m in enumerate(masks)}
        try:
            join = [[pos[a | b] for b in masks] for a in masks]
            meet = [[pos[a & b] for b in masks] for a in masks]
        except KeyError:
            raise InvalidLatticeError("family is not closed under union and intersection") from None
        bottom = min(range(len(masks)), key=lambda i: popcount(masks[i]))
        top = max(range(len(masks)), key=lambda i: popcount(masks[i]))
        return cls(len(masks), join, meet, bottom, top, labels)

    # order -----------------------------------------------------------------

    @cached_property
    def leq_table(self) -> tuple:
        j, n = self.join, self.size
        return tuple(tuple(j[x][y] == y for y in range(n)) for x in range(n))

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    @cached_property
    def down_masks(self) -> tuple:
        n, leq = self.size, self.leq_table
        return tuple(sum(1 << y for y in range(n) if leq[y][x]) for x in range(n))

    @cached_property
    def up_masks(self) -> tuple:
        n, leq = self.size, self.leq_table
        return tuple(sum(1 << y for y in range(n) if leq[x][y]) for x in range(n))

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def members(self, mask: int) -> list[int]:
        return list(_bits(mask))

    def is_chain(self) -> bool:
        leq = self.leq_table
        return all(leq[x][y] or leq[y][x] for x in range(self.size) for y in range(self.size))

    def __repr__(self):
        return f"FiniteDistLattice(size={self.size})"


def validate_lattice(L: FiniteDistLattice) -> list[str]:
    """Lattice axioms, distributivity and bounds, checked by exhaustion."""
    problems = []
    J, M, n = L.join, L.meet, L.size
    for x in range(n):
        if J[x][x] != x or M[x][x] != x:
            problems.append(f"idempotence fails at {x}")
        if J[x][L.bottom] != x or M[x][L.top] != x:
            problems.append(f"bounds fail at {x}")
        for y in range(n):
            if J[x][y] != J[y][x] or M[x][y] != M[y][x]:
                problems.append(f"commutativity fails at {x},{y}")
            if J[x][M[x][y]] != x or M[x][J[x][y]] != x:
                problems.append(f"absorption fails at {x},{y}")
            for z in range(n):
                if J[J[x][y]][z] != J[x][J[y][z]] or M[M[x][y]][z] != M[x][M[y][z]]:
                    problems.append(f"associativity fails at {x},{y},{z}")
                if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                    problems.append(f"distributivity fails at {x},{y},{z}")
            if len(problems) > 10:
                return problems
    return problems


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class LatticeHom:
    source: FiniteDistLattice
    target: FiniteDistLattice
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.size:
            raise HomomorphismError("map length does not match the source size")
        if any(not 0 <= v < self.target.size for v in self.map):
            raise HomomorphismError("map value outside the target")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def preimage(self, mask: int) -> int:
        return sum(1 << x for x in range(self.source.size) if mask >> self.map[x] & 1)

    def image(self, mask: int) -> int:
        out = 0
        for x in _bits(mask):
            out |= 1 << self.map[x]
        return out


def hom_problems(f: LatticeHom) -> list[str]:
    L, K, m = f.source, f.target, f.map
    problems = []
    if m[L.bottom] != K.bottom:
        problems.append("bottom not preserved")
    if m[L.top] != K.top:
        problems.append("top not preserved")
    for x in range(L.size):
        for y in range(x, L.size):
            if m[L.join[x][y]] != K.join[m[x]][m[y]]:
                problems.append(f"join not preserved at {x},{y}")
            if m[L.meet[x][y]] != K.meet[m[x]][m[y]]:
                problems.append(f"meet not preserved at {x},{y}")
    return problems


def is_lattice_hom(f: LatticeHom) -> bool:
    return not hom_problems(f)


def identity(L: FiniteDistLattice) -> LatticeHom:
    return LatticeHom(L, L, tuple(range(L.size)))


def _require_surjective(f: LatticeHom) -> None:
    if not f.is_surjective():
        raise NotSurjectiveError("homomorphism is not surjective")


# --------------------------------------------------------------------------
# down-sets and ideals


@dataclass(frozen=True)
class DownSet:
    lattice: FiniteDistLattice = field(compare=False, repr=False)
    mask: int

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return _bits(self.mask)

    def __len__(self):
        return popcount(self.mask)

    @property
    def members(self) -> tuple:
        return tuple(_bits(self.mask))

    def __str__(self):
        return "{" + ",".join(self.lattice.label(x) for x in self.members) + "}"


def down_closure(L: FiniteDistLattice, mask: int) -> int:
    out = 0
    for x in _bits(mask):
        out |= L.down_masks[x]
    return out


def principal_down(L: FiniteDistLattice, b: int) -> int:
    return L.down_masks[b]


def is_downset(L: FiniteDistLattice, mask: int) -> bool:
    return down_closure(L, mask) == mask


def elementwise_join(L: FiniteDistLattice, B: int, C: int) -> int:
    """The set {b ∨ c : b ∈ B, c ∈ C}."""
    out = 0
    cs = list(_bits(C))
    for b in _bits(B):
        for c in cs:
            out |= 1 << L.join[b][c]
    return out


def is_lattice_ideal(L: FiniteDistLattice, mask: int) -> bool:
    if mask == 0 or not is_downset(L, mask):
        return False
    xs = list(_bits(mask))
    return all(mask >> L.join[x][y] & 1 for x in xs for y in xs)


def _require_ideal(L, mask):
    if not is_lattice_ideal(L, mask):
        raise NotAnIdealError("not a lattice ideal")


def lattice_ideals(L: FiniteDistLattice) -> list[DownSet]:
    """All ideals, by exhaustive search over down-sets."""
    out = []
    for mask in _enumerate_downsets(L):
        if is_lattice_ideal(L, mask):
            out.append(DownSet(L, mask))
    return sorted(out, key=lambda d: d.mask)


def _enumerate_downsets(L: FiniteDistLattice):
    # decide elements from the top down so exclusion propagates upward
    elems = sorted(range(L.size), key=lambda x: -popcount(L.down_masks[x]))
    n = len(elems)

    def rec(i, inc, exc):
        if i == n:
            yield inc
            return
        x = elems[i]
        bit = 1 << x
        if inc & bit or exc & bit:
            yield from rec(i + 1, inc, exc)
            return
        down = L.down_masks[x]
        if not down & exc:
            yield from rec(i + 1, inc | down, exc)
        yield from rec(i + 1, inc, exc | L.up_masks[x])

    yield from rec(0, 0, 0)


def is_lattice_prime(L: FiniteDistLattice, mask: int) -> bool:
    if mask == L.full_mask or not is_lattice_ideal(L, mask):
        return False
    n = L.size
    for x in range(n):
        if mask >> x & 1:
            continue
        for y in range(n):
            if not mask >> y & 1 and mask >> L.meet[x][y] & 1:
                return False
    return True


def lattice_primes(L: FiniteDistLattice) -> list[DownSet]:
    return [I for I in lattice_ideals(L) if is_lattice_prime(L, I.mask)]


def ideal_join(L: FiniteDistLattice, I, J) -> DownSet:
    """Least ideal containing both: join-closure of the down-closure of I ∪ J."""
    a, b = _m(I), _m(J)
    _require_ideal(L, a)
    _require_ideal(L, b)
    cur = down_closure(L, a | b)
    while True:
        nxt = down_closure(L, cur | elementwise_join(L, cur, cur))
        if nxt == cur:
            return DownSet(L, cur)
        cur = nxt


def _m(x) -> int:
    return x if isinstance(x, int) else x.mask


# --------------------------------------------------------------------------
# closed epimorphisms


@dataclass(frozen=True)
class ClosednessWitness:
    route: str
    data: tuple


def closed_defn_witness(f: LatticeHom):
    """First (a0, a1, c) violating the order-theoretic definition, or None.

    The definition: f(a0) ≤ f(a1) ∨ c implies a0 ≤ a1 ∨ x for some x with
    f(x) ≤ c.
    """
    _require_surjective(f)
    L, K, m = f.source, f.target, f.map
    n = L.size
    for c in range(K.size):
        below_c = [x for x in range(n) if K.leq(m[x], c)]
        for a0 in range(n):
            for a1 in range(n):
                if not K.leq(m[a0], K.join[m[a1]][c]):
                    continue
                if not any(L.leq(a0, L.join[a1][x]) for x in below_c):
                    return (a0, a1, c)
    return None


def is_closed_epi_defn(f: LatticeHom) -> bool:
    return closed_defn_witness(f) is None


def closed_downsets_witness(f: LatticeHom):
    """First (b, c) with f⁻¹(Db ∨ Dc) ⊄ f⁻¹(Db) ∨ f⁻¹(Dc), or None.

    Both ∨ here are the element-wise join of subsets.
    """
    _require_surjective(f)
    L, K = f.source, f.target
    for b in range(K.size):
        Db = K.down_masks[b]
        for c in range(b, K.size):
            Dc = K.down_masks[c]
            lhs = f.preimage(elementwise_join(K, Db, Dc))
            rhs = elementwise_join(L, f.preimage(Db), f.preimage(Dc))
            if lhs & ~rhs:
                return (b, c)
    return None


def is_closed_epi_downsets(f: LatticeHom) -> bool:
    return closed_downsets_witness(f) is None


def closed_ideals_witness(f: LatticeHom):
    _require_surjective(f)
    L, K = f.source, f.target
    ideals = lattice_ideals(K)
    for i, I in enumerate(ideals):
        for J in ideals[i:]:
            lhs = f.preimage(ideal_join(K, I, J).mask)
            rhs = ideal_join(L, f.preimage(I.mask), f.preimage(J.mask)).mask
            if lhs != rhs:
                return (I.mask, J.mask)
    return None


def is_closed_epi_ideals(f: LatticeHom) -> bool:
    return closed_ideals_witness(f) is None


@dataclass(frozen=True)
class ClosednessVerdicts:
    defn: bool
    downsets: bool
    ideals: bool

    @property
    def agree(self) -> bool:
        return self.defn == self.downsets == self.ideals

    def as_dict(self) -> dict:
        return {"defn": self.defn, "downsets": self.downsets, "ideals": self.ideals,
                "agree": self.agree}


def closedness_verdicts(f: LatticeHom) -> ClosednessVerdicts:
    return ClosednessVerdicts(is_closed_epi_defn(f), is_closed_epi_downsets(f),
                              is_closed_epi_ideals(f))


# --------------------------------------------------------------------------
# Stone duals


def stone_dual(f: LatticeHom) -> dict[int, int]:
    """Map each prime of the target to its preimage, a prime of the source."""
    if not is_lattice_hom(f):
        raise HomomorphismError("; ".join(hom_problems(f)[:3]))
    out = {}
    for Q in lattice_primes(f.target):
        P = f.preimage(Q.mask)
        if not is_lattice_prime(f.source, P):
            raise ConsistencyError("preimage of a prime is not prime")
        out[Q.mask] = P
    return out


def _v(primes: list[int], ideal: int) -> frozenset:
    """Primes (given as masks) containing the ideal."""
    return frozenset(P for P in primes if ideal & ~P == 0)


def zariski_closed_sets(L: FiniteDistLattice) -> set[frozenset]:
    primes = [P.mask for P in lattice_primes(L)]
    return {_v(primes, I.mask) for I in lattice_ideals(L)}


def preserves_closed_witnesses(f: LatticeHom) -> list[tuple[int, int]]:
    """All (P, I) violating: P ⊇ f⁻¹(I) ⟹ P = f⁻¹(Q) for a prime Q ⊇ I.

    Primes are scanned largest first, so the head of the list is a
    maximal offending prime.
    """
    dual = stone_dual(f)
    primes_src = sorted((P.mask for P in lattice_primes(f.source)),
                        key=lambda m: (-popcount(m), m))
    out = []
    for I in lattice_ideals(f.target):
        pre = f.preimage(I.mask)
        reachable = {dual[Q] for Q in dual if I.mask & ~Q == 0}
        for P in primes_src:
            if pre & ~P == 0 and P not in reachable:
                out.append((P, I.mask))
    return out


def preserves_closed_witness(f: LatticeHom):
    found = preserves_closed_witnesses(f)
    return found[0] if found else None


def _preserves_closed_by_criterion(f: LatticeHom) -> bool:
    return preserves_closed_witness(f) is None


def _preserves_closed_topologically(f: LatticeHom) -> bool:
    dual = stone_dual(f)
    closed_src = zariski_closed_sets(f.source)
    for C in zariski_closed_sets(f.target):
        if frozenset(dual[Q] for Q in C) not in closed_src:
            return False
    return True


def dual_preserves_closed(f: LatticeHom) -> bool:
    a = _preserves_closed_by_criterion(f)
    b = _preserves_closed_topologically(f)
    if a != b:
        raise ConsistencyError(f"preserves-closed routes disagree: criterion={a}, topology={b}")
    return a


def _up_closure(primes: list[int], X) -> frozenset:
    """Zariski closure of a set of primes: every prime containing ⋂X."""
    if not X:
        return frozenset()
    inter = ~0
    for P in X:
        inter &= P
    return frozenset(P for P in primes if inter & ~P == 0)


def dual_closure_equalities(f: LatticeHom) -> bool:
    """The three conditions on g = stone_dual(f) characterising duals of
    closed epimorphisms: g commutes with unions and intersections, g sends
    ideals to ideals, and cl g(C∩D) = cl g(C) ∩ cl g(D) for closed C, D."""
    _require_surjective(f)
    L, K = f.source, f.target
    dual = stone_dual(f)
    primes_t = sorted(dual)
    primes_s = [P.mask for P in lattice_primes(L)]

    # preimage commutes with unions and intersections of families of primes
    for r in range(len(primes_t) + 1):
        for fam in combinations(primes_t, r):
            inter, union = K.full_mask, 0
            for Q in fam:
                inter &= Q
                union |= Q
            g_inter, g_union = L.full_mask, 0
            for Q in fam:
                g_inter &= dual[Q]
                g_union |= dual[Q]
            if f.preimage(inter) != g_inter or f.preimage(union) != g_union:
                return False

    for I in lattice_ideals(K):
        if not is_lattice_ideal(L, f.preimage(I.mask)):
            return False

    closed = sorted(zariski_closed_sets(K), key=lambda s: sorted(s))
    for C in closed:
        for D in closed:
            lhs = _up_closure(primes_s, [dual[Q] for Q in C & D])
            rhs = (_up_closure(primes_s, [dual[Q] for Q in C])
                   & _up_closure(primes_s, [dual[Q] for Q in D]))
            if lhs != rhs:
                return False
    return True


# --------------------------------------------------------------------------
# isomorphism


def find_lattice_isomorphism(L1: FiniteDistLattice, L2: FiniteDistLattice):
    """Backtracking search for an order isomorphism (hence a lattice one)."""
    if L1.size != L2.size:
        return None
    n = L1.size

    def sig(L, x):
        return (popcount(L.down_masks[x]), popcount(L.up_masks[x]))

    s1 = [sig(L1, x) for x in range(n)]
    s2 = [sig(L2, y) for y in range(n)]
    if sorted(s1) != sorted(s2):
        return None
    phi = [-1] * n
    used = [False] * n
    order = sorted(range(n), key=lambda x: s1[x])

    def ok(x):
        y = phi[x]
        for z in range(n):
            w = phi[z]
            if w < 0:
                continue
            if L1.leq(x, z) != L2.leq(y, w) or L1.leq(z, x) != L2.leq(w, y):
                return False
        return True

    def rec(i):
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if used[y] or s1[x] != s2[y]:
                continue
            phi[x], used[y] = y, True
            if ok(x) and rec(i + 1):
                return True
            phi[x], used[y] = -1, False
        return False

    if rec(0):
        return tuple(phi)
    return None


def lattices_isomorphic(L1: FiniteDistLattice, L2: FiniteDistLattice) -> bool:
    return find_lattice_isomorphism(L1, L2) is not None


def downset_lattice(n: int, leq) -> tuple[FiniteDistLattice, list[int]]:
    """Lattice of down-sets of a finite poset given by an order matrix.

    Returns the lattice and the down-set mask behind each element.
    """
    down = [sum(1 << y for y in range(n) if leq[y][x]) for x in range(n)]
    up = [sum(1 << y for y in range(n) if leq[x][y]) for x in range(n)]
    order = sorted(range(n), key=lambda x: -popcount(down[x]))
    masks = []

    def rec(i, inc, exc):
        if i == n:
            masks.append(inc)
            return
        x = order[i]
        bit = 1 << x
        if inc & bit or exc & bit:
            rec(i + 1, inc, exc)
            return
        if not down[x] & exc:
            rec(i + 1, inc | down[x], exc)
        rec(i + 1, inc, exc | up[x])

    rec(0, 0, 0)
    masks = sorted(set(masks), key=lambda m: (popcount(m), m))
    return FiniteDistLattice.of_sets(masks), masks
