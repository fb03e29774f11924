"""Decision procedures for classes of MV-algebras and ideals.

Wherever two characterizations of the same class are known, both are
computed and a disagreement raises ConsistencyError instead of being
silently resolved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ConsistencyError,
    NotAnIdealError,
    NotMaximalError,
    UnsupportedPresentationError,
    check_size,
)
from .lgroups import SymbolicMvAlgebra, symbolic_primes, symbolic_quotient
from .mv import INF, FiniteMvAlgebra, boolean_algebra, order, product, quotient
from .spectra import (
    IdealSet,
    V,
    _as_ideal,
    ideal_meet,
    is_maximal,
    maximals,
    prime_ideals,
    radical,
)


def _agree(what: str, **routes) -> bool:
    values = set(routes.values())
    if len(values) != 1:
        raise ConsistencyError(f"{what}: routes disagree {routes}")
    return values.pop()


# --------------------------------------------------------------------------
# perfect algebras and ideals


def _perfect_by_order(A: FiniteMvAlgebra) -> bool:
    return all((order(A, x) < INF) != (order(A, A.neg[x]) < INF) for x in A.elements)


def _perfect_by_radical(A: FiniteMvAlgebra) -> bool:
    # A = Rad ∪ ¬Rad with the two halves disjoint
    rad = radical(A).mask
    neg_rad = sum(1 << A.neg[x] for x in A.elements if rad >> x & 1)
    return rad | neg_rad == A.full_mask and rad & neg_rad == 0


def _nilpotent(A: FiniteMvAlgebra, a: int) -> bool:
    return A.power(a, A.size) == A.zero


def _perfect_by_powers(A: FiniteMvAlgebra) -> bool:
    # a^n = 0 for some n iff (¬a)^m ≠ 0 for every m
    return all(_nilpotent(A, a) != _nilpotent(A, A.neg[a]) for a in A.elements)


def _perfect_symbolic(S: SymbolicMvAlgebra) -> bool:
    closed = S.group.domains[0] == "Z" and S.unit[0] == 1
    sampled = all((S.ord(x) < INF) != (S.ord(S.neg(x)) < INF) for x in S.sample(2))
    if closed and not sampled:
        raise ConsistencyError("closed-form perfectness contradicted on a sample")
    return closed


def is_perfect(A) -> bool:
    """Exactly one of x and ¬x has finite order, for every x."""
    if isinstance(A, SymbolicMvAlgebra):
        return _perfect_symbolic(A)
    if not isinstance(A, FiniteMvAlgebra):
        raise UnsupportedPresentationError("is_perfect needs a finite or symbolic algebra")
    return _agree("perfect", order=_perfect_by_order(A), radical=_perfect_by_radical(A),
                  powers=_perfect_by_powers(A))


def _in(mask: int, x: int) -> bool:
    return bool(mask >> x & 1)


def is_perfect_ideal(A: FiniteMvAlgebra, I) -> bool:
    """For every a: some a^n ∈ I iff no (¬a)^m ∈ I.  Cross-checked against
    perfectness of A/I."""
    I = _as_ideal(A, I)

    def some_power_in(a):
        return any(_in(I.mask, A.power(a, n)) for n in range(1, A.size + 1))

    direct = all(some_power_in(a) != some_power_in(A.neg[a]) for a in A.elements)
    Q, _ = quotient(A, I)
    return _agree("perfect ideal", criterion=direct, quotient=is_perfect(Q))


# --------------------------------------------------------------------------
# local, primary, semisimple, supermaximal


def is_local(A: FiniteMvAlgebra) -> bool:
    """Exactly one maximal ideal.  The trivial algebra has none."""
    by_max = len(maximals(A)) == 1
    if A.is_trivial:
        return by_max
    by_order = all(order(A, x) < INF or order(A, A.neg[x]) < INF for x in A.elements)
    return _agree("local", maximals=by_max, order=by_order)


def is_primary(A: FiniteMvAlgebra, I) -> bool:
    """x⊙y ∈ I implies x^n ∈ I or y^n ∈ I for some n (⊙-powers)."""
    I = _as_ideal(A, I)
    if I.is_whole:
        raise NotAnIdealError("primary ideals are proper by definition")
    odot = A.odot_table
    eventually_in = [_in(I.mask, A.power(x, A.size)) for x in A.elements]
    for x in A.elements:
        for y in A.elements:
            if _in(I.mask, odot[x][y]) and not (eventually_in[x] or eventually_in[y]):
                return False
    return True


def is_semisimple(A: FiniteMvAlgebra) -> bool:
    return radical(A).mask == 1


def is_supermaximal(A: FiniteMvAlgebra, M) -> bool:
    M = _as_ideal(A, M)
    if not is_maximal(A, M):
        raise NotMaximalError("supermaximality is defined for maximal ideals")
    Q, _ = quotient(A, M)
    return Q.size == 2


# --------------------------------------------------------------------------
# rank


def rank(A) -> int:
    """Number of radical classes minus one (so rank(Ł_m) = m)."""
    if isinstance(A, SymbolicMvAlgebra):
        if A.group.domains[0] != "Z":
            raise UnsupportedPresentationError("rank needs an integer leading coordinate")
        return int(A.unit[0])
    Q, _ = quotient(A, radical(A))
    return Q.size - 1


def rank_of_prime(A, P) -> int:
    if isinstance(A, SymbolicMvAlgebra):
        return rank(symbolic_quotient(A, P))
    Q, _ = quotient(A, P)
    return rank(Q)


def maximal_above(A: FiniteMvAlgebra, P) -> IdealSet:
    P = _as_ideal(A, P)
    above = [M for M in maximals(A) if P <= M]
    if len(above) != 1:
        raise ConsistencyError(f"prime {P} lies under {len(above)} maximal ideals")
    return above[0]


def roots(A: FiniteMvAlgebra) -> list[tuple[IdealSet, list[IdealSet]]]:
    """Each maximal ideal with the primes below it."""
    primes = prime_ideals(A)
    return [(M, [P for P in primes if P <= M]) for M in maximals(A)]


# --------------------------------------------------------------------------
# varieties generated by Chang and Komori algebras


def _presentation(A: FiniteMvAlgebra):
    """A as a quotient of B = A × {0,1} by J = {0} × {0,1}."""
    two = boolean_algebra()
    check_size(A.size * 2)
    B = product(A, two)
    J = IdealSet(B, (1 << 0) | (1 << 1))
    return B, J


def chang_equation_holds(A: FiniteMvAlgebra) -> bool:
    """2(x²) = (2x)², the equation axiomatizing the Chang variety."""
    return all(A.multiple(A.power(x, 2), 2) == A.power(A.multiple(x, 2), 2) for x in A.elements)


@dataclass(frozen=True)
class RouteVerdicts:
    verdict: bool
    routes: dict = field(compare=False)


def in_VC_routes(A) -> RouteVerdicts:
    if isinstance(A, SymbolicMvAlgebra):
        by_primes = all(is_perfect(symbolic_quotient(A, P)) for P in symbolic_primes(A))
        routes = {"perfect-primes": by_primes}
        return RouteVerdicts(by_primes, routes)
    supermax = all(is_supermaximal(A, M) for M in maximals(A))
    perfect_primes = all(is_perfect_ideal(A, P) for P in prime_ideals(A))
    B, J = _presentation(A)
    presented = all(is_perfect_ideal(B, P) for P in V(B, J))
    routes = {"supermaximal": supermax, "perfect-primes": perfect_primes,
              "presentation": presented, "equation": chang_equation_holds(A)}
    return RouteVerdicts(_agree("V(C) membership", **routes), routes)


def in_VC(A) -> bool:
    """Membership in the variety generated by the Chang algebra."""
    return in_VC_routes(A).verdict


def in_VKm_routes(A, m: int) -> RouteVerdicts:
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(A, SymbolicMvAlgebra):
        ok = all(m % rank_of_prime(A, P) == 0 for P in symbolic_primes(A))
        return RouteVerdicts(ok, {"primes": ok})
    by_primes = all(m % rank_of_prime(A, P) == 0 for P in prime_ideals(A))
    by_max = all(m % rank_of_prime(A, M) == 0 for M in maximals(A))
    B, J = _presentation(A)
    presented = all(m % rank_of_prime(B, P) == 0 for P in V(B, J))
    routes = {"primes": by_primes, "maximals": by_max, "presentation": presented}
    return RouteVerdicts(_agree(f"V(K_{m}) membership", **routes), routes)


def in_VKm(A, m: int) -> bool:
    """Membership in the variety generated by K_m: every prime has rank
    dividing m."""
    return in_VKm_routes(A, m).verdict


# --------------------------------------------------------------------------
# local spectra


@dataclass(frozen=True)
class LocalProfile:
    quotient_local: bool
    one_closed_point: bool
    intersection_primary: bool

    @property
    def agree(self) -> bool:
        return self.quotient_local == self.one_closed_point == self.intersection_primary

    def as_dict(self) -> dict:
        return {"quotient_local": self.quotient_local,
                "one_closed_point": self.one_closed_point,
                "intersection_primary": self.intersection_primary, "agree": self.agree}


def local_spectrum_profile(A: FiniteMvAlgebra, I=1, strict: bool = True) -> LocalProfile:
    """The three conditions on C = V(I): A/I is local, C has exactly one
    closed point, and ⋂C is primary."""
    I = _as_ideal(A, I)
    Q, _ = quotient(A, I)
    C = V(A, I)
    closed_points = [P for P in C if not any(P < R for R in C)]
    inter = ideal_meet(A, *C)
    primary = False if inter.is_whole else is_primary(A, inter)
    profile = LocalProfile(is_local(Q), len(closed_points) == 1, primary)
    if strict and not profile.agree:
        raise ConsistencyError(f"local-spectrum conditions disagree: {profile.as_dict()}")
    return profile


# --------------------------------------------------------------------------
# reports


@dataclass
class ClassificationReport:
    perfect: bool
    local: bool
    semisimple: bool
    rank: int
    in_vc: bool
    in_vk: dict
    witnesses: dict

    def as_dict(self) -> dict:
        return {"perfect": self.perfect, "local": self.local, "semisimple": self.semisimple,
                "rank": self.rank, "inVC": self.in_vc,
                "inVK": {str(m): v for m, v in self.in_vk.items()},
                "witnesses": self.witnesses}


def classify(A: FiniteMvAlgebra, ms=(1, 2, 3, 4, 5, 6)) -> ClassificationReport:
    witnesses: dict = {}
    perfect = is_perfect(A)
    if not perfect:
        bad = next((x for x in A.elements
                    if (order(A, x) < INF) == (order(A, A.neg[x]) < INF)), None)
        witnesses["perfect"] = {"element": A.label(bad)} if bad is not None else {}
    local = is_local(A)
    if not local:
        witnesses["local"] = {"maximals": [str(M) for M in maximals(A)]}
    semisimple = is_semisimple(A)
    if not semisimple:
        witnesses["semisimple"] = {"radical": str(radical(A))}
    vc = in_VC(A)
    if not vc:
        bad = [str(M) for M in maximals(A) if not is_supermaximal(A, M)]
        witnesses["inVC"] = {"non_supermaximal": bad}
    vk = {m: in_VKm(A, m) for m in ms}
    for m, ok in vk.items():
        if not ok:
            bad = [str(P) for P in prime_ideals(A) if m % rank_of_prime(A, P)]
            witnesses.setdefault("inVK", {})[str(m)] = {"primes": bad}
    return ClassificationReport(perfect, local, semisimple, rank(A), vc, vk, witnesses)
