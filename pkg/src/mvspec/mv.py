"""Finite MV-algebras given by operation tables.

Elements are the indices ``0 .. size-1``; index 0 is the constant 0 and
``neg[0]`` is the constant 1.  Everything here is immutable: derived tables
are computed once and cached on the instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (
    HomomorphismError,
    InvalidAlgebraError,
    MalformedTableError,
    MvsError,
    NotAnIdealError,
    check_size,
)

INF = math.inf

AXIOMS = (
    "oplus-commutative",
    "oplus-associative",
    "oplus-identity",
    "neg-involution",
    "one-absorbing",
    "mv-axiom",
)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} at {self.witness}"


@dataclass
class ValidationReport:
    malformed: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.malformed and not self.violations

    def summary(self) -> str:
        if self.malformed:
            return "malformed: " + "; ".join(self.malformed)
        if self.violations:
            return "; ".join(str(v) for v in self.violations)
        return "ok"

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "malformed": list(self.malformed),
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness)} for v in self.violations
            ],
        }


def _shape_problems(oplus, neg) -> list[str]:
    problems = []
    n = len(neg)
    if n == 0:
        return ["empty carrier"]
    if len(oplus) != n:
        problems.append(f"oplus has {len(oplus)} rows, expected {n}")
        return problems
    for i, row in enumerate(oplus):
        if len(row) != n:
            problems.append(f"oplus row {i} has length {len(row)}, expected {n}")
            continue
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                problems.append(f"oplus[{i}][{j}] = {v!r} out of range")
    for i, v in enumerate(neg):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            problems.append(f"neg[{i}] = {v!r} out of range")
    return problems


def validate_algebra(oplus: Sequence[Sequence[int]], neg: Sequence[int],
                     first_only: bool = True) -> ValidationReport:
    """Check the four MV axioms on raw tables by exhaustion.

    With ``first_only`` each axiom reports at most one witness.
    """
    report = ValidationReport()
    report.malformed = _shape_problems(oplus, neg)
    if report.malformed:
        return report
    n = len(neg)
    one = neg[0]
    seen = set()

    def fail(axiom, *witness):
        if first_only and axiom in seen:
            return
        seen.add(axiom)
        report.violations.append(Violation(axiom, tuple(witness)))

    for x in range(n):
        if oplus[x][0] != x or oplus[0][x] != x:
            fail("oplus-identity", x)
        if neg[neg[x]] != x:
            fail("neg-involution", x)
        if oplus[x][one] != one:
            fail("one-absorbing", x)
        for y in range(n):
            if oplus[x][y] != oplus[y][x]:
                fail("oplus-commutative", x, y)
            lhs = oplus[neg[oplus[neg[x]][y]]][y]
            rhs = oplus[neg[oplus[neg[y]][x]]][x]
            if lhs != rhs:
                fail("mv-axiom", x, y)
            xy = oplus[x][y]
            for z in range(n):
                if oplus[xy][z] != oplus[x][oplus[y][z]]:
                    fail("oplus-associative", x, y, z)
    return report


# --------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True)
class FiniteMvAlgebra:
    size: int
    oplus: tuple
    neg: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        oplus = tuple(tuple(row) for row in self.oplus)
        neg = tuple(self.neg)
        problems = _shape_problems(oplus, neg)
        if not problems and len(neg) != self.size:
            problems.append(f"size {self.size} does not match neg length {len(neg)}")
        if problems:
            raise MalformedTableError("; ".join(problems))
        check_size(self.size)
        object.__setattr__(self, "oplus", oplus)
        object.__setattr__(self, "neg", neg)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise MalformedTableError("labels length does not match size")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_tables(cls, oplus, neg, labels=None, validate: bool = True) -> "FiniteMvAlgebra":
        if validate:
            report = validate_algebra(oplus, neg)
            if report.malformed:
                raise MalformedTableError("; ".join(report.malformed))
            if not report.ok:
                raise InvalidAlgebraError(report)
        return cls(len(neg), oplus, neg, labels)

    # basic constants -------------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.neg[0]

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def is_trivial(self) -> bool:
        return self.size == 1

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label: str) -> int:
        if self.labels is not None and label in self.labels:
            return self.labels.index(label)
        try:
            x = int(label)
        except ValueError:
            raise KeyError(label) from None
        if not 0 <= x < self.size:
            raise KeyError(label)
        return x

    def __repr__(self):
        return f"FiniteMvAlgebra(size={self.size})"

    # derived tables --------------------------------------------------------

    @cached_property
    def join_table(self) -> tuple:
        o, ng, n = self.oplus, self.neg, self.size
        return tuple(tuple(o[ng[o[ng[x]][y]]][y] for y in range(n)) for x in range(n))

    @cached_property
    def meet_table(self) -> tuple:
        j, ng, n = self.join_table, self.neg, self.size
        return tuple(tuple(ng[j[ng[x]][ng[y]]] for y in range(n)) for x in range(n))

    @cached_property
    def odot_table(self) -> tuple:
        o, ng, n = self.oplus, self.neg, self.size
        return tuple(tuple(ng[o[ng[x]][ng[y]]] for y in range(n)) for x in range(n))

    @cached_property
    def ominus_table(self) -> tuple:
        d, ng, n = self.odot_table, self.neg, self.size
        return tuple(tuple(d[x][ng[y]] for y in range(n)) for x in range(n))

    @cached_property
    def leq_table(self) -> tuple:
        m, n = self.meet_table, self.size
        return tuple(tuple(m[x][y] == x for y in range(n)) for x in range(n))

    @cached_property
    def below_masks(self) -> tuple:
        """``below_masks[x]`` is the bitmask of the principal down-set of x."""
        leq, n = self.leq_table, self.size
        return tuple(sum(1 << y for y in range(n) if leq[y][x]) for x in range(n))

    @cached_property
    def above_masks(self) -> tuple:
        leq, n = self.leq_table, self.size
        return tuple(sum(1 << y for y in range(n) if leq[x][y]) for x in range(n))

    def leq(self, x: int, y: int) -> bool:
        return self.leq_table[x][y]

    def power(self, x: int, n: int) -> int:
        """n-fold ⊙-power of x (x^0 = 1)."""
        r = self.one
        for _ in range(n):
            r = self.odot_table[r][x]
        return r

    def multiple(self, x: int, n: int) -> int:
        """n-fold ⊕-sum of x (0x = 0)."""
        r = 0
        for _ in range(n):
            r = self.oplus[r][x]
        return r


def as_algebra(A) -> FiniteMvAlgebra:
    if not isinstance(A, FiniteMvAlgebra):
        raise TypeError(f"expected a FiniteMvAlgebra, got {type(A).__name__}")
    return A


def _check_element(A: FiniteMvAlgebra, *xs: int) -> None:
    for x in xs:
        if not isinstance(x, int) or not 0 <= x < A.size:
            raise IndexError(f"element {x!r} is not in a carrier of size {A.size}")


_OP_ALIASES = {
    "∨": "join", "join": "join", "or": "join",
    "∧": "meet", "meet": "meet", "and": "meet",
    "⊙": "odot", "odot": "odot",
    "⊖": "ominus", "ominus": "ominus",
    "≤": "leq", "<=": "leq", "leq": "leq",
}


def derived_op(A: FiniteMvAlgebra, op: str, x: int, y: int):
    """Evaluate a derived connective by expanding its defining identity.

    Unlike the cached tables this goes through ⊕ and ¬ every call, so it can
    serve as a cross-check of them.
    """
    _check_element(A, x, y)
    name = _OP_ALIASES.get(op)
    if name is None:
        raise ValueError(f"unknown derived operation {op!r}")
    o, ng = A.oplus, A.neg

    def join(a, b):
        return o[ng[o[ng[a]][b]]][b]

    def meet(a, b):
        return ng[join(ng[a], ng[b])]

    if name == "join":
        return join(x, y)
    if name == "meet":
        return meet(x, y)
    if name == "odot":
        return ng[o[ng[x]][ng[y]]]
    if name == "ominus":
        return ng[o[ng[x]][y]]
    return meet(x, y) == x


def order(A: FiniteMvAlgebra, x: int):
    """Least n with n·x = 1, or ``INF`` when the ⊕-orbit of x stays below 1."""
    _check_element(A, x)
    one = A.one
    acc, n, seen = x, 1, set()
    while acc != one:
        if acc in seen:
            return INF
        seen.add(acc)
        acc = A.oplus[acc][x]
        n += 1
    return n


# --------------------------------------------------------------------------
# terms


class MvTerm:
    """Expression tree over ⊕, ¬, 0 and variables."""

    __slots__ = ()

    def __add__(self, other):
        return Oplus(self, other)

    def __invert__(self):
        return Neg(self)

    def depth(self) -> int:
        raise NotImplementedError

    def variables(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True, repr=False)
class Var(MvTerm):
    index: int

    def depth(self):
        return 0

    def variables(self):
        return frozenset({self.index})

    def __repr__(self):
        return f"x{self.index}"


@dataclass(frozen=True, repr=False)
class Zero(MvTerm):
    def depth(self):
        return 0

    def variables(self):
        return frozenset()

    def __repr__(self):
        return "0"


@dataclass(frozen=True, repr=False)
class Neg(MvTerm):
    arg: MvTerm

    def depth(self):
        return 1 + self.arg.depth()

    def variables(self):
        return self.arg.variables()

    def __repr__(self):
        return f"¬{self.arg!r}"


@dataclass(frozen=True, repr=False)
class Oplus(MvTerm):
    left: MvTerm
    right: MvTerm

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __repr__(self):
        return f"({self.left!r} ⊕ {self.right!r})"


ZERO = Zero()


def one_term() -> MvTerm:
    return Neg(ZERO)


def t_join(x: MvTerm, y: MvTerm) -> MvTerm:
    return Oplus(Neg(Oplus(Neg(x), y)), y)


def t_meet(x: MvTerm, y: MvTerm) -> MvTerm:
    return Neg(t_join(Neg(x), Neg(y)))


def t_odot(x: MvTerm, y: MvTerm) -> MvTerm:
    return Neg(Oplus(Neg(x), Neg(y)))


def t_ominus(x: MvTerm, y: MvTerm) -> MvTerm:
    return t_odot(x, Neg(y))


def check_arity(t: MvTerm, arity: int) -> None:
    bad = [i for i in t.variables() if not 0 <= i < arity]
    if bad:
        raise ValueError(f"term uses variables {sorted(bad)} outside arity {arity}")


def evaluate(t: MvTerm, assignment: Sequence, zero, oplus, neg):
    """Generic bottom-up evaluation with caller-supplied operations."""
    if isinstance(t, Var):
        if not 0 <= t.index < len(assignment):
            raise MvsError(f"unbound variable x{t.index}")
        return assignment[t.index]
    if isinstance(t, Zero):
        return zero
    if isinstance(t, Neg):
        return neg(evaluate(t.arg, assignment, zero, oplus, neg))
    if isinstance(t, Oplus):
        return oplus(evaluate(t.left, assignment, zero, oplus, neg),
                     evaluate(t.right, assignment, zero, oplus, neg))
    raise TypeError(f"not a term: {t!r}")


def eval_term(A: FiniteMvAlgebra, t: MvTerm, assignment: Sequence[int]) -> int:
    _check_element(A, *assignment)
    return evaluate(t, assignment, 0, lambda a, b: A.oplus[a][b], lambda a: A.neg[a])


# --------------------------------------------------------------------------
# constructions


def product(A: FiniteMvAlgebra, B: FiniteMvAlgebra) -> FiniteMvAlgebra:
    """Direct product; the pair (a, b) has index ``a * B.size + b``."""
    n = A.size * B.size
    check_size(n, "product")
    m = B.size
    pairs = [(a, b) for a in range(A.size) for b in range(B.size)]
    oplus = [[A.oplus[a][c] * m + B.oplus[b][d] for (c, d) in pairs] for (a, b) in pairs]
    neg = [A.neg[a] * m + B.neg[b] for (a, b) in pairs]
    labels = [f"({A.label(a)},{B.label(b)})" for (a, b) in pairs]
    return FiniteMvAlgebra(n, oplus, neg, labels)


@dataclass(frozen=True)
class MvHom:
    source: FiniteMvAlgebra
    target: FiniteMvAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.size:
            raise HomomorphismError(
                f"map has {len(self.map)} entries, source has {self.source.size} elements")
        for v in self.map:
            if not isinstance(v, int) or not 0 <= v < self.target.size:
                raise HomomorphismError(f"map value {v!r} outside the target carrier")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_mask(self, mask: int) -> int:
        out = 0
        for x in range(self.source.size):
            if mask >> x & 1:
                out |= 1 << self.map[x]
        return out

    def preimage_mask(self, mask: int) -> int:
        return sum(1 << x for x in range(self.source.size) if mask >> self.map[x] & 1)

    def kernel_mask(self) -> int:
        return self.preimage_mask(1)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def validate_hom(h: MvHom) -> HomCheck:
    A, B, f = h.source, h.target, h.map
    if f[0] != 0:
        return HomCheck(False, "zero", (0,))
    for x in range(A.size):
        if f[A.neg[x]] != B.neg[f[x]]:
            return HomCheck(False, "neg", (x,))
    for x in range(A.size):
        for y in range(x, A.size):
            if f[A.oplus[x][y]] != B.oplus[f[x]][f[y]]:
                return HomCheck(False, "oplus", (x, y))
    return HomCheck(True)


def identity_hom(A: FiniteMvAlgebra) -> MvHom:
    return MvHom(A, A, tuple(range(A.size)))


def _is_ideal_mask(A: FiniteMvAlgebra, mask: int) -> bool:
    if not mask & 1:
        return False
    members = [x for x in range(A.size) if mask >> x & 1]
    for x in members:
        if A.below_masks[x] & ~mask:
            return False
    for i, x in enumerate(members):
        for y in members[i:]:
            if not mask >> A.oplus[x][y] & 1:
                return False
    return True


def _mask_of(A: FiniteMvAlgebra, ideal) -> int:
    if isinstance(ideal, int):
        return ideal
    mask = getattr(ideal, "mask", None)
    if mask is not None:
        return mask
    out = 0
    for x in ideal:
        _check_element(A, x)
        out |= 1 << x
    return out


def quotient(A: FiniteMvAlgebra, ideal) -> tuple[FiniteMvAlgebra, MvHom]:
    """Quotient by the congruence x ≈ y iff (x⊖y)⊕(y⊖x) ∈ I.

    ``ideal`` may be an IdealSet, a bitmask or an iterable of elements.
    Returns the quotient algebra and the canonical surjection.
    """
    mask = _mask_of(A, ideal)
    if not _is_ideal_mask(A, mask):
        raise NotAnIdealError("quotient needs an ideal")
    om, o = A.ominus_table, A.oplus
    cls = [-1] * A.size
    reps = []
    for x in range(A.size):
        if cls[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for y in range(x, A.size):
            if cls[y] < 0 and mask >> o[om[x][y]][om[y][x]] & 1:
                cls[y] = k
    n = len(reps)
    oplus = [[cls[o[reps[i]][reps[j]]] for j in range(n)] for i in range(n)]
    neg = [cls[A.neg[reps[i]]] for i in range(n)]
    labels = [A.label(r) + "/I" for r in reps]
    Q = FiniteMvAlgebra(n, oplus, neg, labels)
    return Q, MvHom(A, Q, tuple(cls))


# --------------------------------------------------------------------------
# isomorphism


def _signature(A: FiniteMvAlgebra, x: int):
    o = order(A, x)
    return (o, order(A, A.neg[x]), bin(A.below_masks[x]).count("1"),
            x == A.neg[x], A.oplus[x][x] == x)


def find_isomorphism(A: FiniteMvAlgebra, B: FiniteMvAlgebra) -> tuple | None:
    """Backtracking search for a bijection preserving ⊕ and ¬."""
    if A.size != B.size:
        return None
    n = A.size
    sig_a = [_signature(A, x) for x in range(n)]
    sig_b = [_signature(B, y) for y in range(n)]
    if sorted(sig_a, key=repr) != sorted(sig_b, key=repr):
        return None
    phi = [-1] * n
    used = [False] * n

    def consistent(x):
        y = phi[x]
        nx = A.neg[x]
        if phi[nx] >= 0 and phi[nx] != B.neg[y]:
            return False
        for z in range(n):
            if phi[z] < 0:
                continue
            s = A.oplus[x][z]
            if phi[s] >= 0 and phi[s] != B.oplus[y][phi[z]]:
                return False
        return True

    order_ = sorted(range(n), key=lambda x: (x != 0, x != A.one, x))

    def extend(i):
        if i == n:
            return True
        x = order_[i]
        for y in range(n):
            if used[y] or sig_a[x] != sig_b[y]:
                continue
            phi[x] = y
            used[y] = True
            if consistent(x) and extend(i + 1):
                return True
            phi[x] = -1
            used[y] = False
        return False

    if extend(0):
        result = tuple(phi)
        assert validate_hom(MvHom(A, B, result))
        return result
    return None


def is_isomorphic(A: FiniteMvAlgebra, B: FiniteMvAlgebra) -> bool:
    return find_isomorphism(A, B) is not None


def trivial_algebra() -> FiniteMvAlgebra:
    return FiniteMvAlgebra(1, [[0]], [0], ["0"])


def boolean_algebra() -> FiniteMvAlgebra:
    return FiniteMvAlgebra(2, [[0, 1], [1, 1]], [1, 0], ["0", "1"])

