import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspec.corpus import default_corpus
from mvspec.errors import MvsError, NotAnIdealError
from mvspec.lgroups import idc, komori, lukasiewicz, symbolic_spec
from mvspec.mv import MvHom, identity_hom, quotient
from mvspec.spectra import (
    O,
    FiniteTopology,
    IdealSet,
    SpecPoset,
    V,
    compact_opens_lattice,
    enumerate_ideals,
    homeomorphic,
    ideal_generated,
    ideal_sum,
    image_ideal,
    is_prime,
    is_root_system,
    is_sober,
    is_spectral,
    maximals,
    prime_ideals,
    pullback_prime,
    radical,
    spec,
    zariski_topology,
    zariski_topology_of,
)
from mvspec.lattice import find_lattice_isomorphism

ALGEBRAS = [A for _, A in default_corpus().algebras]
FIRST = [0, 3, 6]  # Ł2 × {0} inside Ł2 × Ł2
SECOND = [0, 1, 2]  # {0} × Ł2


def members(I):
    return sorted(I.members)


# ---- ideals ---------------------------------------------------------------


def test_ideal_generated_examples(L2, L2xL2):
    assert ideal_generated(L2, [1]).is_whole
    assert members(ideal_generated(L2, [])) == [0]
    assert members(ideal_generated(L2xL2, [3])) == FIRST


def test_enumerate_ideals_examples(L2, two, L2xL2):
    assert [members(I) for I in enumerate_ideals(L2)] == [[0], [0, 1, 2]]
    assert [members(I) for I in enumerate_ideals(two)] == [[0], [0, 1]]
    found = sorted(members(I) for I in enumerate_ideals(L2xL2))
    assert found == sorted([[0], FIRST, SECOND, list(range(9))])


def test_is_prime_examples(L2, L2xL2):
    assert is_prime(L2, [0])
    assert not is_prime(L2xL2, [0])
    assert not is_prime(L2, [0, 1, 2])


def test_not_an_ideal(L2):
    with pytest.raises(NotAnIdealError):
        is_prime(L2, [0, 2])


def test_spec_examples(L2, L2xL2, two):
    assert [members(P) for P in prime_ideals(L2)] == [[0]]
    S = spec(L2xL2)
    assert S.size == 2 and not S.is_chain()
    assert sorted(members(P) for P in S.points) == sorted([FIRST, SECOND])
    assert spec(two).size == 1


def test_v_and_o(L2xL2):
    everything = frozenset(prime_ideals(L2xL2))
    assert V(L2xL2, [0]) == everything
    assert O(L2xL2, L2xL2.one) == everything
    assert [members(P) for P in O(L2xL2, 3)] == [SECOND]


def test_radical_examples(L2xL2, two):
    assert members(radical(L2xL2)) == [0]
    assert members(radical(two)) == [0]
    assert members(radical(lukasiewicz(4))) == [0]


@given(st.sampled_from(ALGEBRAS), st.data())
def test_closed_sets_of_sums(A, data):
    ideals = enumerate_ideals(A)
    fam = data.draw(st.lists(st.sampled_from(ideals), min_size=1, max_size=3))
    assert frozenset.intersection(*(V(A, I) for I in fam)) == V(A, ideal_sum(A, *fam))


@given(st.sampled_from(ALGEBRAS), st.data())
def test_open_of_sum(A, data):
    f = data.draw(st.integers(0, A.size - 1))
    g = data.draw(st.integers(0, A.size - 1))
    assert O(A, A.oplus[f][g]) == O(A, f) | O(A, g)


# ---- topology --------------------------------------------------------------


def test_zariski_topology_examples():
    assert len(zariski_topology(SpecPoset.chain(1)).closed) == 2
    chain = zariski_topology(SpecPoset.chain(2))
    assert chain.closed == frozenset({0, 0b10, 0b11})
    assert len(zariski_topology(SpecPoset.antichain(2)).closed) == 4


def test_sober_examples():
    indiscrete = FiniteTopology(2, {0, 0b11})
    assert not is_sober(indiscrete)
    discrete = FiniteTopology(3, set(range(8)))
    assert is_sober(discrete) and is_spectral(discrete)


def test_topology_validation():
    with pytest.raises(MvsError):
        FiniteTopology(2, {0, 0b01, 0b10})  # whole space missing
    with pytest.raises(MvsError):
        FiniteTopology(3, {0, 0b001, 0b010, 0b111})  # union 0b011 missing


def test_root_system_examples():
    assert is_root_system(SpecPoset.chain(2))
    vee = SpecPoset((0, 1, 2), [[1, 1, 1], [0, 1, 0], [0, 0, 1]])
    assert not is_root_system(vee)


@given(st.sampled_from(ALGEBRAS))
def test_spectrum_is_spectral_root_system(A):
    S, T = zariski_topology_of(A)
    assert T == zariski_topology(S)
    assert is_sober(T) and is_spectral(T) and is_root_system(S)


def test_compact_opens_examples():
    assert compact_opens_lattice(SpecPoset.chain(1)).size == 2
    L = compact_opens_lattice(SpecPoset.chain(2))
    assert L.size == 3 and L.is_chain()
    B = compact_opens_lattice(SpecPoset.antichain(2))
    assert B.size == 4 and not B.is_chain()


@given(st.sampled_from(ALGEBRAS))
def test_compact_opens_match_idc(A):
    assert find_lattice_isomorphism(compact_opens_lattice(spec(A)), idc(A)) is not None


def test_homeomorphic_examples():
    assert homeomorphic(spec(lukasiewicz(2)), spec(lukasiewicz(5)))
    assert homeomorphic(symbolic_spec(komori(1)), symbolic_spec(komori(5)))
    assert not homeomorphic(SpecPoset.chain(2), SpecPoset.antichain(2))


# ---- pullbacks and the quotient correspondence -----------------------------


def test_pullback_examples(L2, L2xL2):
    P = IdealSet(L2, 1)
    assert pullback_prime(identity_hom(L2), P) == P
    proj = MvHom(L2xL2, L2, tuple(a for a in range(3) for _ in range(3)))
    assert members(pullback_prime(proj, P)) == SECOND


@given(st.sampled_from(ALGEBRAS), st.data())
def test_quotient_correspondence(A, data):
    J = data.draw(st.sampled_from(enumerate_ideals(A)))
    Q, h = quotient(A, J)
    pulled = {pullback_prime(h, P).mask for P in prime_ideals(Q)}
    assert pulled == {P.mask for P in V(A, J)}
    above = [I for I in enumerate_ideals(A) if J <= I]
    assert sorted(image_ideal(h, I).mask for I in above) == sorted(
        I.mask for I in enumerate_ideals(Q))


def test_maximals_of_product(L2xL2):
    assert sorted(members(M) for M in maximals(L2xL2)) == sorted([FIRST, SECOND])
