"""McNaughton functions in normal form ∧∨ρ(a·x + b), their homogeneity
theory, exact one-dimensional zerosets, and zerosets of terms over Δ(ℚ).

All arithmetic is exact.  Functions that sample do so on integer grids
scaled by a common denominator, so every comparison is between integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

import numpy as np

from .errors import ConsistencyError, MvsError
from .lgroups import SymbolicMvAlgebra, delta_m
from .mv import MvTerm, Neg, Oplus, Var, Zero, check_arity, evaluate

# local-homogeneity sampling: points r·d/GRID with d_i in SAMPLE_STEPS and
# multipliers up to MAX_MULTIPLIER; GRID / max(SAMPLE_STEPS) ≥ MAX_MULTIPLIER
# keeps n·x inside the neighbourhood
NEIGHBOURHOOD = Fraction(1, 8)
GRID = 24
SAMPLE_STEPS = (0, 1, 3, 6)
MAX_MULTIPLIER = 4

COEFF_BOUND = 1000


def rho(q) -> Fraction:
    """Truncation to [0, 1]."""
    q = Fraction(q)
    return max(Fraction(0), min(Fraction(1), q))


@dataclass(frozen=True)
class Piece:
    a: tuple
    b: int

    def __post_init__(self):
        a = tuple(self.a)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in a + (self.b,)):
            raise MvsError("piece coefficients must be integers")
        object.__setattr__(self, "a", a)

    def affine(self, x) -> Fraction:
        return sum((Fraction(c) * xi for c, xi in zip(self.a, x)), Fraction(self.b))

    def __str__(self):
        terms = []
        names = _names(len(self.a))
        for c, v in zip(self.a, names):
            if c:
                terms.append(f"{c}{v}" if c not in (1, -1) else ("" if c == 1 else "-") + v)
        if self.b or not terms:
            terms.append(str(self.b))
        text = "+".join(terms).replace("+-", "-")
        return f"ρ({text})"


def _names(n: int) -> list[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i}" for i in range(1, n + 1)]


@dataclass(frozen=True)
class NormalForm:
    """φ(x) = min over meets of max over pieces of ρ(a·x + b)."""

    arity: int
    meets: tuple

    def __post_init__(self):
        meets = tuple(tuple(p if isinstance(p, Piece) else Piece(*p) for p in j)
                      for j in self.meets)
        if not meets or any(not j for j in meets):
            raise MvsError("normal forms need at least one join and one piece per join")
        if any(len(p.a) != self.arity for j in meets for p in j):
            raise MvsError("piece arity does not match the normal form")
        object.__setattr__(self, "meets", meets)

    @classmethod
    def single(cls, a, b) -> "NormalForm":
        a = tuple(a)
        return cls(len(a), ((Piece(a, b),),))

    @classmethod
    def from_json(cls, data: dict) -> "NormalForm":
        meets = tuple(tuple(Piece(tuple(p["a"]), p["b"]) for p in j) for j in data["meets"])
        return cls(data["arity"], meets)

    def to_json(self) -> dict:
        return {"arity": self.arity,
                "meets": [[{"a": list(p.a), "b": p.b} for p in j] for j in self.meets]}

    def pieces(self):
        for j in self.meets:
            yield from j

    def meet(self, other: "NormalForm") -> "NormalForm":
        return NormalForm(self.arity, self.meets + other.meets)

    def __str__(self):
        joins = ["∨".join(str(p) for p in j) for j in self.meets]
        if len(joins) == 1:
            return joins[0]
        return "∧".join(f"({j})" if "∨" in j else j for j in joins)


def _point(phi: NormalForm, x) -> tuple:
    if isinstance(x, (int, Fraction, str)):
        x = (x,)
    x = tuple(Fraction(c) for c in x)
    if len(x) != phi.arity:
        raise MvsError(f"point has {len(x)} coordinates, form has arity {phi.arity}")
    if any(not 0 <= c <= 1 for c in x):
        raise MvsError("evaluation points must lie in the unit cube")
    return x


def eval_nf(phi: NormalForm, x) -> Fraction:
    x = _point(phi, x)
    return min(max(rho(p.affine(x)) for p in j) for j in phi.meets)


def _eval_unchecked(phi: NormalForm, x) -> Fraction:
    return min(max(rho(p.affine(x)) for p in j) for j in phi.meets)


def is_syntactically_homogeneous(phi: NormalForm) -> bool:
    return all(p.b == 0 for p in phi.pieces())


def zero_at_origin_criterion(phi: NormalForm) -> bool:
    """Some join has every constant term ≤ 0; equivalent to φ(0) = 0."""
    verdict = any(all(p.b <= 0 for p in j) for j in phi.meets)
    if verdict != (eval_nf(phi, (0,) * phi.arity) == 0):
        raise ConsistencyError(f"zero-at-origin criterion fails on {phi}")
    return verdict


def _slope_bound(phi: NormalForm) -> int:
    return max(sum(abs(c) for c in p.a) for p in phi.pieces())


def neighbourhood_radius(phi: NormalForm) -> Fraction:
    """A radius r ≤ 1/8 inside which φ(0) = 0 forces φ to be homogeneous.

    With S the largest ℓ¹ norm of a slope vector, S·r ≤ 1/2 keeps every
    piece with b ≤ −1 at zero, every piece with b = 0 below the upper
    truncation, and every join containing a piece with b ≥ 1 at or above
    the joins built only from pieces with b ≤ 0.
    """
    s = _slope_bound(phi)
    return NEIGHBOURHOOD if s == 0 else min(NEIGHBOURHOOD, Fraction(1, 2 * s))


def _scaled_value(phi: NormalForm, d, denom: int) -> int:
    """denom·φ(d/denom) for an integer vector d with d/denom in the cube."""
    best = None
    for j in phi.meets:
        top = 0
        for p in j:
            t = sum(c * di for c, di in zip(p.a, d)) + p.b * denom
            t = 0 if t < 0 else (denom if t > denom else t)
            if t > top:
                top = t
                if top == denom:
                    break
        if best is None or top < best:
            best = top
            if best == 0:
                break
    return best


def homogeneity_violation(phi: NormalForm):
    """First sampled (x, n) with φ(nx) ≠ nφ(x) near the origin, or None."""
    r = neighbourhood_radius(phi)
    denom = GRID * r.denominator
    unit = r.numerator
    for steps in cartesian(SAMPLE_STEPS, repeat=phi.arity):
        if not any(steps):
            continue
        d = tuple(unit * s for s in steps)
        base = _scaled_value(phi, d, denom)
        for n in range(2, MAX_MULTIPLIER + 1):
            if _scaled_value(phi, tuple(n * c for c in d), denom) != n * base:
                return tuple(Fraction(c, denom) for c in d), n
    return None


def is_locally_homogeneous(phi: NormalForm) -> bool:
    """φ(0) = 0, checked against φ(nx) = nφ(x) on a sampled neighbourhood."""
    verdict = eval_nf(phi, (0,) * phi.arity) == 0
    if verdict:
        bad = homogeneity_violation(phi)
        if bad is not None:
            raise ConsistencyError(f"{phi} is not homogeneous near 0: witness {bad}")
    return verdict


def homogenize(phi: NormalForm) -> NormalForm:
    """ρ(a·x + b) becomes ρ(a·x + b·y) in one extra variable."""
    meets = tuple(tuple(Piece(p.a + (p.b,), 0) for p in j) for j in phi.meets)
    return NormalForm(phi.arity + 1, meets)


def grid_points(arity: int, denominator: int = GRID):
    for ks in cartesian(range(denominator + 1), repeat=arity):
        yield tuple(Fraction(k, denominator) for k in ks)


def homogenization_holds(phi: NormalForm, denominator: int = GRID) -> bool:
    """ψ(x, 1) = φ(x) on the grid with the given denominator."""
    psi = homogenize(phi)
    return all(_eval_unchecked(psi, x + (Fraction(1),)) == _eval_unchecked(phi, x)
               for x in grid_points(phi.arity, denominator))


# --------------------------------------------------------------------------
# exact zerosets in dimension one


@dataclass(frozen=True)
class Interval1D:
    """Finite union of closed rational intervals in [0, 1]; a point is [p, p]."""

    parts: tuple = ()

    def __post_init__(self):
        parts = sorted((Fraction(lo), Fraction(hi)) for lo, hi in self.parts)
        merged: list[list[Fraction]] = []
        for lo, hi in parts:
            if lo > hi or lo < 0 or hi > 1:
                raise MvsError(f"bad interval [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "parts", tuple((lo, hi) for lo, hi in merged))

    @classmethod
    def empty(cls) -> "Interval1D":
        return cls(())

    @classmethod
    def point(cls, p) -> "Interval1D":
        return cls(((p, p),))

    @classmethod
    def closed(cls, lo, hi) -> "Interval1D":
        return cls(((lo, hi),))

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        return any(lo <= x <= hi for lo, hi in self.parts)

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def __str__(self):
        if not self.parts:
            return "∅"
        return " ∪ ".join(f"{{{lo}}}" if lo == hi else f"[{lo}, {hi}]" for lo, hi in self.parts)

    def to_json(self) -> list:
        return [[str(lo), str(hi)] for lo, hi in self.parts]


def breakpoints_1d(phi: NormalForm) -> list[Fraction]:
    if phi.arity != 1:
        raise MvsError("one-dimensional analysis needs arity 1")
    pts = {Fraction(0), Fraction(1)}
    for p in phi.pieces():
        a = p.a[0]
        if a:
            for level in (0, 1):
                x = Fraction(level - p.b, a)
                if 0 <= x <= 1:
                    pts.add(x)
    return sorted(pts)


def zeroset_1d(phi: NormalForm) -> Interval1D:
    """Exact zero locus: φ is affine between consecutive breakpoints, and
    its zero status is constant on each open gap."""
    pts = breakpoints_1d(phi)
    parts = []
    for p in pts:
        if _eval_unchecked(phi, (p,)) == 0:
            parts.append((p, p))
    for lo, hi in zip(pts, pts[1:]):
        if _eval_unchecked(phi, ((lo + hi) / 2,)) == 0:
            parts.append((lo, hi))
    return Interval1D(tuple(parts))


def farey_points(max_denominator: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of all reduced fractions in [0,1] with
    denominator at most the bound."""
    nums, dens = [], []
    for q in range(1, max_denominator + 1):
        for k in range(q + 1):
            if np.gcd(k, q) == 1:
                nums.append(k)
                dens.append(q)
    return np.array(nums, dtype=np.int64), np.array(dens, dtype=np.int64)


def zero_mask_1d(phi: NormalForm, nums: np.ndarray, dens: np.ndarray) -> np.ndarray:
    """Boolean array: φ(k/q) = 0, decided with integer arithmetic."""
    out = np.zeros(len(nums), dtype=bool)
    for j in phi.meets:
        join_zero = np.ones(len(nums), dtype=bool)
        for p in j:
            join_zero &= p.a[0] * nums + p.b * dens <= 0
        out |= join_zero
    return out


def is_cone_1d(Z: Interval1D) -> bool:
    """Closed under scaling by λ ≥ 0 within [0, 1]: ∅, {0} or [0, 1]."""
    return Z.parts in ((), ((0, 0),), ((0, 1),))


def homogeneous_zeroset_check(phi: NormalForm) -> bool:
    if not is_syntactically_homogeneous(phi):
        return True
    return is_cone_1d(zeroset_1d(phi))


def random_normal_form(rng: random.Random, arity: int, coeff: int = 10,
                       max_meets: int = 3, max_pieces: int = 3) -> NormalForm:
    if not 0 < coeff <= COEFF_BOUND:
        raise MvsError(f"coefficient bound must lie in 1..{COEFF_BOUND}")
    meets = []
    for _ in range(rng.randint(1, max_meets)):
        join = []
        for _ in range(rng.randint(1, max_pieces)):
            a = tuple(rng.randint(-coeff, coeff) for _ in range(arity))
            join.append(Piece(a, rng.randint(-coeff, coeff)))
        meets.append(tuple(join))
    return NormalForm(arity, tuple(meets))


def x_meet_rho_2x_minus_1() -> NormalForm:
    """x ∧ ρ(2x − 1): vanishes at 0 but is not homogeneous."""
    return NormalForm(1, ((Piece((1,), 0),), (Piece((2,), -1),)))


# --------------------------------------------------------------------------
# terms over Δ_m(ℚ)


def eval_delta_term(t: MvTerm, point, m: int = 1):
    """Evaluate an MV term at a point of Δ_m(ℚ)^n."""
    D = delta_m(m)
    if not isinstance(D, SymbolicMvAlgebra):
        raise MvsError("Δ_m(ℚ) must be symbolic")
    pts = []
    for e in point:
        if not D.contains(e):
            raise MvsError(f"{e} is not an element of Δ_{m}(ℚ)")
        pts.append(D.element(e))
    check_arity(t, len(pts))
    return evaluate(t, pts, D.zero, D.oplus, D.neg)


@dataclass(frozen=True)
class ZerosetForm1:
    """Points (v, x) of Δ(ℚ)^n with v ∈ S and x in the cone C_v.

    Each cone is a list of integer vectors a read as a·x ≤ 0.
    """

    arity: int
    S: frozenset
    cones: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        S = frozenset(tuple(v) for v in self.S)
        for v in S:
            if len(v) != self.arity or any(c not in (0, 1) for c in v):
                raise MvsError(f"{v} is not a Boolean vector of length {self.arity}")
        object.__setattr__(self, "S", S)
        cones = {tuple(v): tuple(tuple(a) for a in ineqs) for v, ineqs in self.cones.items()}
        object.__setattr__(self, "cones", cones)


def form1_member(Z: ZerosetForm1, point) -> bool:
    pts = [tuple(e) for e in point]
    if len(pts) != Z.arity:
        raise MvsError("point arity does not match the zeroset")
    v = tuple(int(e[0]) for e in pts)
    x = tuple(Fraction(e[1]) for e in pts)
    if v not in Z.S:
        return False
    return all(sum(Fraction(c) * xi for c, xi in zip(a, x)) <= 0 for a in Z.cones.get(v, ()))


# --------------------------------------------------------------------------
# zerosets of terms over Δ(ℚ): exhaustive over terms, sampled over points

# an element (k, q) of Δ(ℚ) with integer q is encoded as k·M + q; this is
# additive and order preserving while |q| < M/2, so ⊕ is min(a + b, M)
_M = 1 << 30
FORM1_STEPS = (0, 1, 2, 3)
FORM1_SCALES = (1, 2, 3, 4, 6)


@dataclass
class Form1Report:
    variables: int
    max_depth: int
    distinct_functions: int
    terms_checked: int
    sample_points: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _form1_samples(nvars: int):
    """Points grouped as (sector v, direction y, scale λ): the point has
    Boolean part v and infinitesimal part ±λ·y (sign fixed by v)."""
    rows = []
    for v in cartesian((0, 1), repeat=nvars):
        for y in cartesian(FORM1_STEPS, repeat=nvars):
            for lam in FORM1_SCALES:
                rows.append((v, y, lam))
    coords = np.array([[vi * _M + (lam * yi if vi == 0 else -lam * yi)
                        for vi, yi in zip(v, y)] for v, y, lam in rows], dtype=np.int64)
    return rows, coords


def _ray_failures(values: np.ndarray, rows, label) -> list:
    failures = []
    zero = values == 0
    boolean = (values > _M // 2).astype(np.int64)  # leading coordinate
    groups: dict = {}
    for i, (v, y, lam) in enumerate(rows):
        groups.setdefault((v, y), []).append(i)
    sector_bool: dict = {}
    for (v, y), idx in groups.items():
        b = set(boolean[idx].tolist())
        prev = sector_bool.setdefault(v, b)
        if len(b) != 1 or b != prev:
            failures.append({"term": label, "sector": v, "direction": y,
                             "reason": "Boolean part depends on the infinitesimal part"})
        if any(y) and len(set(zero[idx].tolist())) != 1:
            failures.append({"term": label, "sector": v, "direction": y,
                             "reason": "membership not constant along the ray"})
    return failures


def form1_check(nvars: int = 2, max_depth: int = 4, stop_after: int = 10) -> Form1Report:
    """All terms of depth ≤ max_depth in nvars variables, evaluated over a
    fixed sample of Δ(ℚ)^nvars.

    Terms are grouped by their value vector on the sample, which is exact
    for this check since evaluation is compositional.  Every function of
    depth ≤ max_depth is then tested: zero membership is constant along
    each ray of every Boolean sector, and the Boolean part of the value
    depends on the sector only.
    """
    rows, coords = _form1_samples(nvars)
    one = np.full(len(rows), _M, dtype=np.int64)

    def key(a):
        return a.tobytes()

    seen: dict = {}
    layers: list[list] = []
    base = [(np.zeros(len(rows), dtype=np.int64), repr(Zero()))]
    base += [(coords[:, i].copy(), repr(Var(i))) for i in range(nvars)]
    layer = []
    for vals, label in base:
        if key(vals) not in seen:
            seen[key(vals)] = label
            layer.append((vals, label))
    layers.append(layer)

    checked = 0
    failures: list = []

    def test(vals, label):
        nonlocal checked
        checked += 1
        if len(failures) < stop_after:
            failures.extend(_ray_failures(vals, rows, label)[: stop_after - len(failures)])

    for vals, label in layer:
        test(vals, label)

    for depth in range(1, max_depth + 1):
        below = [t for lay in layers for t in lay]
        prev = layers[-1]
        new = []

        def consider(vals, label):
            k = key(vals)
            if k in seen:
                return
            seen[k] = label
            new.append((vals, label))
            test(vals, label)

        for vals, label in prev:
            consider(one - vals, f"¬{label}")
        # a sum has depth d exactly when one summand has depth d − 1
        n_prev = len(prev)
        for i, (va, la) in enumerate(prev):
            for vb, lb in below[: len(below) - n_prev + i + 1]:
                consider(np.minimum(va + vb, _M), f"({la}⊕{lb})")
        layers.append(new)

    return Form1Report(nvars, max_depth, len(seen), checked, len(rows), failures)


def form1_zeroset_of(t: MvTerm, nvars: int) -> ZerosetForm1 | None:
    """S for a term, read from its values at Boolean points of Δ(ℚ)."""
    S = set()
    for v in cartesian((0, 1), repeat=nvars):
        val = eval_delta_term(t, [(vi, 0) for vi in v])
        if val == (0, 0):
            S.add(v)
    return ZerosetForm1(nvars, frozenset(S), {})


def term_depth_enumeration(nvars: int, depth: int):
    """Syntactic terms of exactly the given depth (small depths only)."""
    if depth == 0:
        yield Zero()
        for i in range(nvars):
            yield Var(i)
        return
    lower = [t for d in range(depth) for t in term_depth_enumeration(nvars, d)]
    top = list(term_depth_enumeration(nvars, depth - 1))
    for t in top:
        yield Neg(t)
    for a in top:
        for b in lower:
            yield Oplus(a, b)
            if b.depth() < depth - 1:
                yield Oplus(b, a)

