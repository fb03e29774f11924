"""Registry of executable checks and the runner behind ``mvs verify``.

Each suite takes the corpus and returns ``None`` when the statement holds
everywhere, or a JSON-serializable counterexample.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np

from .classify import (
    in_VC,
    in_VC_routes,
    in_VKm,
    in_VKm_routes,
    is_perfect,
    is_perfect_ideal,
    is_semisimple,
    is_supermaximal,
    local_spectrum_profile,
    maximal_above,
    rank_of_prime,
    roots,
)
from .corpus import (
    CorpusSpec,
    default_corpus,
    surjective_homs,
)
from .errors import MvsError
from .lattice import (
    FiniteDistLattice,
    LatticeHom,
    closedness_verdicts,
    dual_closure_equalities,
    dual_preserves_closed,
    elementwise_join,
    find_lattice_isomorphism,
    is_downset,
    preserves_closed_witnesses,
)
from .lgroups import (
    ChangTerm,
    LexGroup,
    belluce,
    chang,
    chang_op,
    gamma,
    idc,
    komori,
    lukasiewicz,
    project_leading,
    symbolic_spec,
    verify_lspec,
)
from .mcnaughton import (
    eval_nf,
    farey_points,
    form1_check,
    homogeneous_zeroset_check,
    homogenization_holds,
    is_locally_homogeneous,
    is_syntactically_homogeneous,
    random_normal_form,
    rho,
    x_meet_rho_2x_minus_1,
    zero_at_origin_criterion,
    zero_mask_1d,
    zeroset_1d,
)
from .mv import find_isomorphism, quotient, validate_hom
from .spectra import (
    O,
    SpecPoset,
    V,
    compact_opens_lattice,
    enumerate_ideals,
    homeomorphic,
    ideal_meet,
    ideal_sum,
    image_ideal,
    is_root_system,
    is_sober,
    is_spectral,
    prime_ideals,
    pullback_prime,
    spec,
    zariski_topology,
    zariski_topology_of,
)

_REGISTRY: dict = {}


def suite(ident: str, statement: str):
    def register(fn):
        _REGISTRY[ident] = (statement, fn)
        return fn
    return register


def registry() -> dict[str, str]:
    """Suite id → the statement it checks."""
    return {k: v[0] for k, v in sorted(_REGISTRY.items())}


def _algebras(corpus):
    return corpus.algebras


# --------------------------------------------------------------------------
# ideals and spectra


@suite("ideal-sum-closed-sets", "⋂ V(I_α) = V(⊕ I_α) for families of at most three ideals")
def _ideal_sum(corpus):
    for name, A in _algebras(corpus):
        ideals = enumerate_ideals(A)
        for r in (1, 2, 3):
            for fam in combinations_with_replacement(ideals, r):
                lhs = frozenset.intersection(*(V(A, I) for I in fam))
                if lhs != V(A, ideal_sum(A, *fam)):
                    return {"algebra": name, "family": [str(I) for I in fam]}
    return None


@suite("open-sum", "O(f ⊕ g) = O(f) ∪ O(g)")
def _open_sum(corpus):
    for name, A in _algebras(corpus):
        opens = [O(A, a) for a in A.elements]
        for f in A.elements:
            for g in A.elements:
                if O(A, A.oplus[f][g]) != opens[f] | opens[g]:
                    return {"algebra": name, "f": A.label(f), "g": A.label(g)}
    return None


@suite("spectrum-sober", "the Zariski topology on Spec(A) is sober")
def _sober(corpus):
    for name, A in _algebras(corpus):
        S, T = zariski_topology_of(A)
        if T != zariski_topology(S) or not is_sober(T):
            return {"algebra": name}
    return None


@suite("spectrum-spectral", "Spec(A) is spectral and a root system")
def _spectral(corpus):
    for name, A in _algebras(corpus):
        S, T = zariski_topology_of(A)
        if not is_spectral(T) or not is_root_system(S):
            return {"algebra": name}
    return None


@suite("compact-opens", "the compact opens of Spec(A) form a lattice isomorphic to Id_c(A)")
def _compact_opens(corpus):
    for name, A in _algebras(corpus):
        if find_lattice_isomorphism(compact_opens_lattice(spec(A)), idc(A)) is None:
            return {"algebra": name}
    return None


@suite("quotient-correspondence",
       "ideals above J correspond to ideals of A/J, and Spec(A/J) ≅ V(J)")
def _quotient_correspondence(corpus):
    for name, A in _algebras(corpus):
        ideals = enumerate_ideals(A)
        for J in ideals:
            Q, h = quotient(A, J)
            if not validate_hom(h):
                return {"algebra": name, "J": str(J), "reason": "projection is not a homomorphism"}
            above = [I for I in ideals if J <= I]
            images = [image_ideal(h, I) for I in above]
            q_ideals = {I.mask for I in enumerate_ideals(Q)}
            if {I.mask for I in images} != q_ideals or len(set(I.mask for I in images)) != len(above):
                return {"algebra": name, "J": str(J), "reason": "not a bijection"}
            for I1 in above:
                for I2 in above:
                    if (I1 <= I2) != (image_ideal(h, I1) <= image_ideal(h, I2)):
                        return {"algebra": name, "J": str(J), "reason": "order not preserved"}
            pulled = {pullback_prime(h, P).mask for P in prime_ideals(Q)}
            if pulled != {P.mask for P in V(A, J)}:
                return {"algebra": name, "J": str(J), "reason": "pullback misses V(J)"}
            VJ = [P for P in prime_ideals(A) if J <= P]
            if not homeomorphic(spec(Q), SpecPoset.from_ideals(VJ)):
                return {"algebra": name, "J": str(J), "reason": "Spec(A/J) not homeomorphic to V(J)"}
    return None


@suite("prime-pullback", "preimages of primes under homomorphisms are prime")
def _prime_pullback(corpus):
    for name, A in _algebras(corpus):
        for J in enumerate_ideals(A):
            Q, h = quotient(A, J)
            for P in prime_ideals(Q):
                pullback_prime(h, P)
    return None


@suite("quotient-by-zero", "A/{0} ≅ A, and homomorphisms factor through their kernels")
def _quotient_zero(corpus):
    for name, A in _algebras(corpus):
        Q, _ = quotient(A, 1)
        if find_isomorphism(A, Q) is None:
            return {"algebra": name}
        for J in enumerate_ideals(A):
            Q, h = quotient(A, J)
            K, k = quotient(A, h.kernel_mask())
            # h = g ∘ k with g well defined
            g = {}
            for x in A.elements:
                if g.setdefault(k(x), h(x)) != h(x):
                    return {"algebra": name, "J": str(J)}
    return None


# --------------------------------------------------------------------------
# functors


@suite("belluce-idc", "β(A) ≅ Id_c(A) ≅ K°(Spec A)")
def _functors(corpus):
    for name, A in _algebras(corpus):
        B, I, K = belluce(A), idc(A), compact_opens_lattice(spec(A))
        if find_lattice_isomorphism(B, I) is None or find_lattice_isomorphism(I, K) is None:
            return {"algebra": name}
    return None


@suite("gamma-chains", "Γ(ℤ, m) is an (m+1)-element chain and Γ of a projection is onto")
def _gamma_chains(corpus):
    for m in range(1, 9):
        A = gamma(LexGroup(("Z",)), m)
        if A.size != m + 1 or any(not (A.leq(x, y) or A.leq(y, x))
                                  for x in A.elements for y in A.elements):
            return {"m": m}
        K = komori(m)
        target, proj = project_leading(K)
        window = K.sample(2)
        if {proj(e) for e in window} != set(target.elements):
            return {"m": m, "reason": "projection not onto"}
        for a in window:
            for b in window:
                if proj(K.oplus(a, b)) != target.oplus[proj(a)][proj(b)]:
                    return {"m": m, "a": str(a), "b": str(b)}
    return None


@suite("lgroup-spectrum", "Spec(Δ(G)) minus its closed point is the ℓ-spectrum of G")
def _lspec(corpus):
    for text in ("0", "Z", "ZxZ"):
        if not verify_lspec(LexGroup.parse(text)):
            return {"group": text}
    return None


@suite("komori-spectra", "Spec(K_m) are homeomorphic two-element chains for m ≤ 8")
def _komori_spectra(corpus):
    spectra = [symbolic_spec(komori(m)) for m in range(1, 9)]
    for m, S in enumerate(spectra, 1):
        if S.size != 2 or not S.is_chain():
            return {"m": m}
    for i, j in combinations(range(8), 2):
        if not homeomorphic(spectra[i], spectra[j]):
            return {"m": [i + 1, j + 1]}
    return None


@suite("chang-table", "the Chang case table agrees with Γ(ℤ lex ℤ, (1,0))")
def _chang_table(corpus):
    C = chang()
    terms = [ChangTerm(n, co) for n in range(51) for co in (False, True)]
    for x in terms:
        if chang_op(x, op="¬").to_pair() != C.neg(x.to_pair()):
            return {"x": str(x), "op": "¬"}
        for y in terms:
            if chang_op(x, y).to_pair() != C.oplus(x.to_pair(), y.to_pair()):
                return {"x": str(x), "y": str(y), "op": "⊕"}
    return None


# --------------------------------------------------------------------------
# lattices


def _corpus_homs(corpus):
    return corpus.homs


@suite("closed-epi-equivalence",
       "the order-theoretic, down-set and ideal forms of closedness agree")
def _closed_equivalence(corpus):
    for name, h in _corpus_homs(corpus):
        v = closedness_verdicts(h)
        if not v.agree:
            return {"hom": name, "map": list(h.map), **v.as_dict()}
    return None


@suite("closed-epi-dual", "the dual closure equalities hold exactly for surjections closed in the ideal sense")
def _closed_dual(corpus):
    for name, h in _corpus_homs(corpus):
        v = closedness_verdicts(h)
        d = dual_closure_equalities(h)
        if d != v.ideals:
            return {"hom": name, "map": list(h.map), "dual": d, **v.as_dict()}
    return None


def chain_counterexample() -> LatticeHom:
    """The 4-chain onto the 2-chain, collapsing everything above 0."""
    return LatticeHom(FiniteDistLattice.chain(4), FiniteDistLattice.chain(2), (0, 1, 1, 1))


@suite("chain-counterexample",
       "4-chain → 2-chain is closed, yet its dual does not preserve closed sets")
def _chain_counterexample(corpus):
    f = chain_counterexample()
    v = closedness_verdicts(f)
    preserves = dual_preserves_closed(f)
    witnesses = preserves_closed_witnesses(f)
    witness = sorted(f.source.members(witnesses[0][0])) if witnesses else None
    if v.defn and v.downsets and v.ideals and not preserves and witness == [0, 1, 2]:
        return None
    return {**v.as_dict(), "preserves_closed": preserves, "witness": witness}


@suite("chain-surjections-closed", "every surjection between chains of length ≤ 6 is closed")
def _chains_closed(corpus):
    for n in range(1, 7):
        for k in range(1, n + 1):
            for h in surjective_homs(FiniteDistLattice.chain(n), FiniteDistLattice.chain(k)):
                v = closedness_verdicts(h)
                if not (v.defn and v.downsets and v.ideals):
                    return {"map": list(h.map), **v.as_dict()}
    return None


@suite("downset-laws", "D(b∨c) = Db ∨ Dc, and preimages of principal down-sets are down-sets")
def _downset_laws(corpus):
    for name, L in corpus.lattices:
        for b in range(L.size):
            for c in range(L.size):
                if L.down_masks[L.join[b][c]] != elementwise_join(L, L.down_masks[b], L.down_masks[c]):
                    return {"lattice": name, "b": b, "c": c}
    for name, h in _corpus_homs(corpus):
        for b in range(h.target.size):
            if not is_downset(h.source, h.preimage(h.target.down_masks[b])):
                return {"hom": name, "b": b}
    return None


@suite("closed-not-preserving", "some closed surjection has a dual that fails to preserve closed sets")
def _closed_not_preserving(corpus):
    for name, h in _corpus_homs(corpus):
        if closedness_verdicts(h).ideals and not dual_preserves_closed(h):
            return None
    return {"reason": "no closed surjection with a non-preserving dual in the corpus"}


# --------------------------------------------------------------------------
# classification


@suite("chang-variety", "the four characterizations of V(C) agree")
def _chang_variety(corpus):
    for name, A in _algebras(corpus):
        in_VC_routes(A)
    if not in_VC(chang()) or in_VC(komori(2)):
        return {"reason": "symbolic Komori verdicts"}
    return None


@suite("komori-variety", "prime-based and maximal-based V(K_m) verdicts agree for m ≤ 6")
def _komori_variety(corpus):
    for name, A in _algebras(corpus):
        for m in range(1, 7):
            in_VKm_routes(A, m)
            for k in range(2, 4):
                if in_VKm(A, m) and not in_VKm(A, m * k):
                    return {"algebra": name, "m": m, "reason": "not monotone under divisibility"}
    return None


@suite("perfect-prime-supermaximal", "a prime P is perfect iff the maximal above it is supermaximal")
def _sit(corpus):
    for name, A in _algebras(corpus):
        for P in prime_ideals(A):
            if is_perfect_ideal(A, P) != is_supermaximal(A, maximal_above(A, P)):
                return {"algebra": name, "P": str(P)}
    return None


@suite("prime-rank-lift", "a prime and the maximal above it have the same rank")
def _rank_lift(corpus):
    for name, A in _algebras(corpus):
        for P in prime_ideals(A):
            if rank_of_prime(A, P) != rank_of_prime(A, maximal_above(A, P)):
                return {"algebra": name, "P": str(P)}
    return None


@suite("root-supermaximal", "the top of a root is supermaximal iff every member is perfect")
def _roots(corpus):
    for name, A in _algebras(corpus):
        for M, members in roots(A):
            if is_supermaximal(A, M) != all(is_perfect_ideal(A, P) for P in members):
                return {"algebra": name, "M": str(M)}
    return None


@suite("local-spectrum", "A/I local ⟺ V(I) has one closed point ⟺ ⋂V(I) primary")
def _local(corpus):
    for name, A in _algebras(corpus):
        for I in enumerate_ideals(A):
            p = local_spectrum_profile(A, I, strict=False)
            if not p.agree:
                return {"algebra": name, "I": str(I), **p.as_dict()}
    return None


@suite("semisimple-maximals", "A/I is semisimple iff the maximal points of V(I) meet in I")
def _semisimple(corpus):
    for name, A in _algebras(corpus):
        if not is_semisimple(A):
            return {"algebra": name, "reason": "finite algebra not semisimple"}
        for I in enumerate_ideals(A):
            VI = V(A, I)
            tops = [P for P in VI if not any(P < R for R in VI)]
            Q, _ = quotient(A, I)
            if is_semisimple(Q) != (ideal_meet(A, *tops).mask == I.mask):
                return {"algebra": name, "I": str(I)}
    return None


@suite("rank-convention", "Ł_d ∈ V(K_m) iff d divides m, for d, m ≤ 6")
def _rank_convention(corpus):
    for d in range(1, 7):
        for m in range(1, 7):
            if in_VKm(lukasiewicz(d), m) != (m % d == 0):
                return {"d": d, "m": m}
    return None


@suite("chang-perfect", "the Chang algebra is perfect and Ł_2 is not")
def _chang_perfect(corpus):
    if not is_perfect(chang()) or is_perfect(lukasiewicz(2)):
        return {"chang": is_perfect(chang()), "L2": is_perfect(lukasiewicz(2))}
    return None


# --------------------------------------------------------------------------
# McNaughton functions


@suite("rho-zero", "ρ(b) = 0 iff b ≤ 0")
def _rho(corpus):
    for num in range(-60, 61):
        for den in (1, 2, 3, 5, 7, 24):
            q = Fraction(num, den)
            if (rho(q) == 0) != (q <= 0):
                return {"q": str(q)}
    return None


def _random_forms(seed: int, count: int, max_arity: int = 3, coeff: int = 10):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_normal_form(rng, rng.randint(1, max_arity), coeff)


@suite("zero-at-origin", "some join has all b ≤ 0 iff φ(0) = 0 (10⁴ random forms)")
def _zero_origin(corpus):
    for phi in _random_forms(corpus.spec.seed, 10_000):
        at0 = eval_nf(phi, (0,) * phi.arity) == 0
        if zero_at_origin_criterion(phi) != at0:
            return {"form": str(phi)}
        if is_syntactically_homogeneous(phi) and not at0:
            return {"form": str(phi), "reason": "homogeneous but φ(0) ≠ 0"}
    return None


@suite("local-homogeneity", "φ is locally homogeneous in 0 iff φ(0) = 0 (10⁴ random forms)")
def _local_homogeneity(corpus):
    for phi in _random_forms(corpus.spec.seed + 1, 10_000):
        if is_locally_homogeneous(phi) != (eval_nf(phi, (0,) * phi.arity) == 0):
            return {"form": str(phi)}
    return None


@suite("non-homogeneous-witness", "x ∧ ρ(2x−1) vanishes at 0, is locally homogeneous, not homogeneous")
def _witness(corpus):
    phi = x_meet_rho_2x_minus_1()
    ok = (eval_nf(phi, (0,)) == 0 and not is_syntactically_homogeneous(phi)
          and is_locally_homogeneous(phi) and zero_at_origin_criterion(phi))
    return None if ok else {"form": str(phi)}


@suite("homogenization", "ψ(x, 1) = φ(x) on the denominator-24 grid")
def _homogenization(corpus):
    rng = random.Random(corpus.spec.seed + 2)
    forms = [x_meet_rho_2x_minus_1()]
    forms += [random_normal_form(rng, rng.randint(1, 2)) for _ in range(40)]
    for phi in forms:
        if not homogenization_holds(phi):
            return {"form": str(phi)}
    return None


@suite("zeroset-1d", "exact 1-D zerosets match dense sampling (10³ random forms)")
def _zeroset(corpus):
    nums, dens = farey_points(97)
    for phi in _random_forms(corpus.spec.seed + 3, 1000, max_arity=1):
        Z = zeroset_1d(phi)
        exact = np.zeros(len(nums), dtype=bool)
        for lo, hi in Z.parts:
            # lo ≤ k/q ≤ hi by cross-multiplication
            exact |= (nums * lo.denominator >= lo.numerator * dens) & (
                nums * hi.denominator <= hi.numerator * dens)
        bad = np.flatnonzero(exact != zero_mask_1d(phi, nums, dens))
        if bad.size:
            i = int(bad[0])
            return {"form": str(phi), "x": f"{nums[i]}/{dens[i]}", "exact": str(Z)}
    return None


@suite("homogeneous-cones", "zerosets of homogeneous 1-D forms are cones")
def _cones(corpus):
    rng = random.Random(corpus.spec.seed + 4)
    for _ in range(1000):
        phi = random_normal_form(rng, 1)
        phi = type(phi)(1, tuple(tuple(type(p)(p.a, 0) for p in j) for j in phi.meets))
        if not homogeneous_zeroset_check(phi):
            return {"form": str(phi), "zeroset": str(zeroset_1d(phi))}
    return None


@suite("form1-zerosets", "zerosets of terms over Δ(ℚ)² decompose by Boolean part into cones")
def _form1(corpus):
    report = form1_check(2, 4)
    if report.ok:
        return None
    return {"failures": [{**f, "sector": list(f["sector"]), "direction": list(f["direction"])}
                         for f in report.failures]}


# --------------------------------------------------------------------------
# runner


@dataclass
class VerifyEntry:
    ident: str
    statement: str
    passed: bool
    counterexample: object
    seconds: float

    def as_dict(self) -> dict:
        return {"id": self.ident, "statement": self.statement,
                "verdict": "pass" if self.passed else "fail",
                "counterexample": self.counterexample, "seconds": round(self.seconds, 3)}


@dataclass
class VerifyReport:
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def as_dict(self, timings: bool = True) -> dict:
        rows = [e.as_dict() for e in self.entries]
        if not timings:
            for r in rows:
                r.pop("seconds")
        return {"ok": self.ok, "results": rows}


def run_suite(ident: str, corpus=None) -> VerifyEntry:
    if ident not in _REGISTRY:
        raise MvsError(f"unknown suite id {ident!r}")
    statement, fn = _REGISTRY[ident]
    corpus = default_corpus() if corpus is None else corpus
    start = time.perf_counter()
    try:
        cex = fn(corpus)
    except MvsError as exc:  # a consistency failure is a failed check
        cex = {"error": type(exc).__name__, "message": str(exc)}
    return VerifyEntry(ident, statement, cex is None, cex, time.perf_counter() - start)


def _run_one(args):
    ident, spec = args
    return run_suite(ident, default_corpus(spec))


def run_verify(spec: CorpusSpec | None = None, selection=None, jobs: int = 1) -> VerifyReport:
    """Run the selected suites (all when ``selection`` is None).

    With ``jobs > 1`` suites run in worker processes; entries are always
    reported in id order.
    """
    ids = sorted(_REGISTRY) if selection is None else sorted(set(selection))
    unknown = [i for i in ids if i not in _REGISTRY]
    if unknown:
        raise MvsError(f"unknown suite id(s): {', '.join(unknown)}")
    report = VerifyReport()
    if not ids:
        return report
    spec = spec if spec is not None else CorpusSpec()
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.entries.extend(pool.map(_run_one, [(i, spec) for i in ids]))
    else:
        corpus = default_corpus(spec)
        report.entries.extend(run_suite(i, corpus) for i in ids)
    return report
