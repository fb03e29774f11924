import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspec.errors import MvsError
from mvspec.mcnaughton import (
    Interval1D,
    NormalForm,
    Piece,
    ZerosetForm1,
    eval_delta_term,
    eval_nf,
    farey_points,
    form1_check,
    form1_member,
    homogeneity_violation,
    homogenization_holds,
    homogenize,
    homogeneous_zeroset_check,
    is_cone_1d,
    is_locally_homogeneous,
    is_syntactically_homogeneous,
    random_normal_form,
    rho,
    x_meet_rho_2x_minus_1,
    zero_at_origin_criterion,
    zero_mask_1d,
    zeroset_1d,
)
from mvspec.mv import Neg, Oplus, Var, t_odot

WITNESS = x_meet_rho_2x_minus_1()
ORIGIN = {1: (0,), 2: (0, 0), 3: (0, 0, 0)}


def single(a, b):
    return NormalForm.single(a, b)


@st.composite
def normal_forms(draw, max_arity=3, coeff=10):
    arity = draw(st.integers(1, max_arity))
    piece = st.builds(Piece, st.tuples(*[st.integers(-coeff, coeff)] * arity),
                      st.integers(-coeff, coeff))
    meets = draw(st.lists(st.lists(piece, min_size=1, max_size=3), min_size=1, max_size=3))
    return NormalForm(arity, tuple(tuple(j) for j in meets))


# ---- ρ and evaluation ------------------------------------------------------


def test_rho_examples():
    assert rho(-3) == 0 and rho(F(1, 2)) == F(1, 2) and rho(7) == 1


@given(st.fractions(min_value=-20, max_value=20))
def test_rho_zero_iff_nonpositive(q):
    assert (rho(q) == 0) == (q <= 0)


def test_eval_examples():
    assert eval_nf(single((2,), -1), (F(3, 4),)) == F(1, 2)
    assert eval_nf(WITNESS, (0,)) == 0
    with pytest.raises(MvsError):
        NormalForm(1, ())
    with pytest.raises(MvsError):
        eval_nf(WITNESS, (F(3, 2),))


def test_json_round_trip():
    assert NormalForm.from_json(WITNESS.to_json()) == WITNESS


# ---- homogeneity -------------------------------------------------------------


def test_homogeneity_examples():
    assert is_syntactically_homogeneous(single((3, -2), 0))
    assert not is_syntactically_homogeneous(WITNESS)
    assert is_syntactically_homogeneous(single((0,), 0))
    assert zero_at_origin_criterion(WITNESS)
    assert not zero_at_origin_criterion(single((1,), 1))
    assert zero_at_origin_criterion(single((1,), 0))
    assert is_locally_homogeneous(WITNESS)
    assert not is_locally_homogeneous(single((1,), 1))
    assert is_locally_homogeneous(single((0,), 0))


@given(normal_forms())
def test_zero_at_origin_criterion(phi):
    at0 = eval_nf(phi, ORIGIN[phi.arity]) == 0
    assert zero_at_origin_criterion(phi) == at0
    assert is_locally_homogeneous(phi) == at0
    if is_syntactically_homogeneous(phi):
        assert at0


@given(normal_forms())
def test_sampling_never_contradicts_positive_verdict(phi):
    if eval_nf(phi, ORIGIN[phi.arity]) == 0:
        assert homogeneity_violation(phi) is None


def test_homogenize_examples():
    assert homogenize(single((2,), -1)) == single((2, -1), 0)
    h = single((3, -2), 0)
    assert homogenize(h) == single((3, -2, 0), 0)
    assert str(homogenize(WITNESS)) == "ρ(x)∧ρ(2x-y)"
    assert homogenization_holds(WITNESS)


@given(normal_forms(max_arity=2))
def test_homogenization_identity(phi):
    assert homogenization_holds(phi, denominator=12)


# ---- one-dimensional zerosets ---------------------------------------------------


def test_zeroset_examples():
    assert zeroset_1d(single((1,), 0)) == Interval1D.point(0)
    assert str(zeroset_1d(WITNESS)) == "[0, 1/2]"
    assert zeroset_1d(single((0,), 1)).is_empty


def test_cone_examples():
    assert is_cone_1d(Interval1D.point(0))
    assert not is_cone_1d(Interval1D.closed(0, F(1, 2)))
    assert is_cone_1d(Interval1D.closed(0, 1))
    assert is_cone_1d(Interval1D.empty())


def test_homogeneous_zeroset_examples():
    assert homogeneous_zeroset_check(single((1,), 0))
    assert zeroset_1d(single((-1,), 0)) == Interval1D.closed(0, 1)
    assert homogeneous_zeroset_check(single((-1,), 0))
    phi = single((2,), 0).meet(single((-1,), 0))
    assert homogeneous_zeroset_check(phi)


@given(normal_forms(max_arity=1))
def test_zeroset_matches_sampling(phi):
    nums, dens = farey_points(97)
    Z = zeroset_1d(phi)
    sampled = zero_mask_1d(phi, nums, dens)
    for k, q, z in zip(nums.tolist(), dens.tolist(), sampled.tolist()):
        assert (F(k, q) in Z) == z


@given(normal_forms(max_arity=1))
def test_homogeneous_zerosets_are_cones(phi):
    hom = NormalForm(1, tuple(tuple(Piece(p.a, 0) for p in j) for j in phi.meets))
    assert is_cone_1d(zeroset_1d(hom))


def test_random_generator_is_seeded():
    a = [str(random_normal_form(random.Random(5), 2)) for _ in range(3)]
    b = [str(random_normal_form(random.Random(5), 2)) for _ in range(3)]
    assert a == b


# ---- terms over Δ(ℚ) -------------------------------------------------------


def test_delta_term_examples():
    z = Var(0)
    assert eval_delta_term(t_odot(z, z), [(0, 3)]) == (0, 0)
    assert eval_delta_term(t_odot(z, z), [(1, -2)]) != (0, 0)
    for p in [(0, 0), (0, F(5, 2)), (1, -7), (1, 0)]:
        assert eval_delta_term(Oplus(z, Neg(z)), [p]) == (1, 0)


def test_form1_member_examples():
    Z = ZerosetForm1(1, {(0,)}, {(0,): ()})
    assert form1_member(Z, [(0, 5)])
    assert not form1_member(Z, [(1, -2)])
    empty = ZerosetForm1(1, set())
    assert not form1_member(empty, [(0, 0)])


def test_form1_check_small():
    report = form1_check(nvars=1, max_depth=3)
    assert report.ok and report.distinct_functions > 2
