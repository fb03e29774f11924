"""Finite distributive lattices, closed surjections and their Stone duals.

Several tests here encode claims that the implementation shows to be false
for the order-theoretic definition of closedness; they fail on purpose.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspec.corpus import all_surjective_lattice_homs, surjective_homs
from mvspec.errors import InvalidLatticeError, NotSurjectiveError
from mvspec.io import emit_dot
from mvspec.lattice import (
    DownSet,
    FiniteDistLattice,
    LatticeHom,
    closed_defn_witness,
    closed_downsets_witness,
    closed_ideals_witness,
    closedness_verdicts,
    dual_closure_equalities,
    dual_preserves_closed,
    elementwise_join,
    identity,
    ideal_join,
    is_closed_epi_defn,
    is_closed_epi_downsets,
    is_closed_epi_ideals,
    is_downset,
    lattice_ideals,
    lattice_primes,
    preserves_closed_witnesses,
    stone_dual,
)
from mvspec.spectra import SpecPoset
from mvspec.verify import chain_counterexample

HOMS = all_surjective_lattice_homs(6)
CHAIN = chain_counterexample()


def diamond_with_top():
    """0 < a, b < m < 1, the smallest lattice with a non-closed surjection
    onto the four-element Boolean lattice."""
    up = {0: {0, 1, 2, 3, 4}, 1: {1, 3, 4}, 2: {2, 3, 4}, 3: {3, 4}, 4: {4}}
    leq = [[y in up[x] for y in range(5)] for x in range(5)]
    return FiniteDistLattice.from_leq(leq, labels=["0", "a", "b", "m", "1"])


NON_CLOSED = LatticeHom(diamond_with_top(), FiniteDistLattice.boolean(2), (0, 1, 2, 3, 3))


# ---- construction ----------------------------------------------------------


def test_non_distributive_rejected():
    # M3: 0 < a, b, c < 1
    leq = [[x == y or x == 0 or y == 4 for y in range(5)] for x in range(5)]
    with pytest.raises(InvalidLatticeError):
        FiniteDistLattice.from_leq(leq)


def test_non_surjection_rejected():
    f = LatticeHom(FiniteDistLattice.chain(2), FiniteDistLattice.chain(3), (0, 2))
    with pytest.raises(NotSurjectiveError):
        is_closed_epi_defn(f)


# ---- ideals and primes -----------------------------------------------------


def test_ideals_and_primes_examples():
    L2 = FiniteDistLattice.chain(2)
    assert [I.members for I in lattice_ideals(L2)] == [(0,), (0, 1)]
    assert [P.members for P in lattice_primes(L2)] == [(0,)]
    assert [P.members for P in lattice_primes(FiniteDistLattice.chain(3))] == [(0,), (0, 1)]
    assert len(lattice_primes(FiniteDistLattice.boolean(2))) == 2


def test_ideal_join_examples():
    B = FiniteDistLattice.boolean(2)
    bottom = DownSet(B, 1)
    atoms = [DownSet(B, B.down_masks[x]) for x in (1, 2)]
    assert ideal_join(B, atoms[0], bottom) == atoms[0]
    assert ideal_join(B, atoms[0], atoms[0]) == atoms[0]
    assert ideal_join(B, *atoms).mask == B.full_mask


# ---- closedness --------------------------------------------------------------


@pytest.mark.parametrize("L", [FiniteDistLattice.chain(4), FiniteDistLattice.boolean(2),
                               diamond_with_top()])
def test_identity_is_closed(L):
    f = identity(L)
    assert is_closed_epi_defn(f) and is_closed_epi_downsets(f) and is_closed_epi_ideals(f)
    assert dual_preserves_closed(f) and dual_closure_equalities(f)
    assert stone_dual(f) == {P.mask: P.mask for P in lattice_primes(L)}


def test_chain_example_is_closed_defn():
    # claimed: every surjection between chains is closed
    assert is_closed_epi_defn(CHAIN)


def test_chain_example_defn_witness():
    # f(2) ≤ f(1) ∨ 0, yet 2 ≤ 1 ∨ x forces x ∈ {2, 3}, which f does not send to 0
    assert closed_defn_witness(CHAIN) == (2, 1, 0)


def test_chain_example_other_routes():
    assert is_closed_epi_downsets(CHAIN)
    assert is_closed_epi_ideals(CHAIN)


def test_chain_example_dual():
    assert stone_dual(CHAIN) == {0b1: 0b1}
    assert not dual_preserves_closed(CHAIN)
    P, _ = preserves_closed_witnesses(CHAIN)[0]
    assert CHAIN.source.members(P) == [0, 1, 2]


def test_frozen_non_closed_witness():
    f = NON_CLOSED
    assert closedness_verdicts(f).as_dict() == {"defn": False, "downsets": False,
                                                "ideals": False, "agree": True}
    assert closed_defn_witness(f) == (4, 3, 0)
    assert closed_downsets_witness(f) == (1, 2)
    assert closed_ideals_witness(f) == (3, 5)
    assert not dual_closure_equalities(f)
    assert not dual_preserves_closed(f)


def test_projection_dual_is_injective():
    B, two = FiniteDistLattice.boolean(2), FiniteDistLattice.chain(2)
    f = LatticeHom(B, two, (0, 1, 0, 1))
    dual = stone_dual(f)
    assert len(set(dual.values())) == len(dual)


def test_three_chain_collapse_routes_agree():
    f = LatticeHom(FiniteDistLattice.chain(3), FiniteDistLattice.chain(2), (0, 1, 1))
    dual_preserves_closed(f)  # raises ConsistencyError on disagreement


@given(st.sampled_from(HOMS))
def test_closedness_predicates_agree(f):
    v = closedness_verdicts(f)
    assert v.defn == v.downsets == v.ideals


@given(st.sampled_from(HOMS))
def test_downset_and_ideal_forms_agree(f):
    assert is_closed_epi_downsets(f) == is_closed_epi_ideals(f)


@given(st.sampled_from(HOMS))
def test_dual_equalities_match_ideal_form(f):
    assert dual_closure_equalities(f) == is_closed_epi_ideals(f)


@given(st.sampled_from(HOMS))
def test_defn_matches_dual_preserving_closed_sets(f):
    assert is_closed_epi_defn(f) == dual_preserves_closed(f)


def test_corpus_has_closed_non_preserving_hom():
    assert any(is_closed_epi_ideals(f) and not dual_preserves_closed(f) for f in HOMS)


def test_chain_surjections_closed():
    bad = []
    for n in range(1, 7):
        for k in range(1, n + 1):
            for f in surjective_homs(FiniteDistLattice.chain(n), FiniteDistLattice.chain(k)):
                if not all(closedness_verdicts(f).as_dict().values()):
                    bad.append(f.map)
    assert not bad, f"{len(bad)} non-closed chain surjections, first {bad[0]}"


@given(st.sampled_from(HOMS), st.data())
def test_downset_laws(f, data):
    K = f.target
    b = data.draw(st.integers(0, K.size - 1))
    c = data.draw(st.integers(0, K.size - 1))
    assert K.down_masks[K.join[b][c]] == elementwise_join(K, K.down_masks[b], K.down_masks[c])
    assert is_downset(f.source, f.preimage(K.down_masks[b]))


# ---- DOT -------------------------------------------------------------------


@pytest.mark.parametrize("poset, nodes, edges", [
    (SpecPoset.chain(1), 1, 0),
    (SpecPoset.chain(2), 2, 1),
    (SpecPoset.antichain(2), 2, 0),
])
def test_emit_dot_counts(poset, nodes, edges):
    text = emit_dot(poset)
    assert text.count("[label=") == nodes
    assert text.count("->") == edges
    assert text == emit_dot(poset)


def test_emit_dot_lattice():
    text = emit_dot(FiniteDistLattice.boolean(2))
    assert text.count("->") == 4
