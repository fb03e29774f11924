import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspec.corpus import default_corpus
from mvspec.errors import MalformedTableError, NotAnIdealError, SizeGuardError
from mvspec.lgroups import lukasiewicz
from mvspec.mv import (
    INF,
    FiniteMvAlgebra,
    MvHom,
    Neg,
    Oplus,
    Var,
    derived_op,
    eval_term,
    find_isomorphism,
    identity_hom,
    order,
    product,
    quotient,
    t_odot,
    trivial_algebra,
    validate_algebra,
    validate_hom,
)

ALGEBRAS = [A for _, A in default_corpus().algebras if A.size <= 9]


@st.composite
def algebra_and_elements(draw, k=2):
    A = draw(st.sampled_from(ALGEBRAS))
    xs = [draw(st.integers(0, A.size - 1)) for _ in range(k)]
    return A, xs


# ---- validate_algebra ----------------------------------------------------


def test_l2_tables_validate(L2):
    assert validate_algebra(L2.oplus, L2.neg).ok


def test_boolean_tables_validate(two):
    assert validate_algebra(two.oplus, two.neg).ok


def test_patched_l2_fails(L2):
    oplus = [list(r) for r in L2.oplus]
    oplus[1][1] = 0
    report = validate_algebra(oplus, L2.neg)
    assert not report.ok
    assert report.violations


def test_malformed_tables_rejected():
    with pytest.raises(MalformedTableError):
        FiniteMvAlgebra.from_tables([[0, 1], [1]], [1, 0])
    assert not validate_algebra([[0, 5], [5, 1]], [1, 0]).ok


@given(st.sampled_from(ALGEBRAS), st.data())
def test_single_cell_perturbation(A, data):
    # a perturbed table is either invalid or still an MV-algebra
    if A.size < 2:
        return
    x = data.draw(st.integers(0, A.size - 1))
    y = data.draw(st.integers(0, A.size - 1))
    v = data.draw(st.integers(0, A.size - 1).filter(lambda v: v != A.oplus[x][y]))
    oplus = [list(r) for r in A.oplus]
    oplus[x][y] = v
    report = validate_algebra(oplus, A.neg)
    if report.ok:
        B = FiniteMvAlgebra.from_tables(oplus, A.neg)
        assert validate_algebra(B.oplus, B.neg).ok


# ---- derived operations and ord ------------------------------------------


def test_derived_examples(L2):
    half = 1
    assert derived_op(L2, "∨", half, half) == half
    assert derived_op(L2, "⊙", half, half) == 0
    for x in L2.elements:
        assert derived_op(L2, "∧", x, L2.one) == x


def test_order_examples(L2):
    assert order(L2, L2.one) == 1
    assert order(L2, 0) == INF
    assert order(L2, 1) == 2


@given(algebra_and_elements(3))
def test_lattice_laws(case):
    A, (x, y, z) = case
    j, m = A.join_table, A.meet_table
    assert j[x][y] == j[y][x] == derived_op(A, "∨", x, y)
    assert m[x][y] == derived_op(A, "∧", x, y)
    assert j[x][j[y][z]] == j[j[x][y]][z]
    assert m[x][j[x][y]] == x
    assert m[x][j[y][z]] == j[m[x][y]][m[x][z]]
    assert j[x][0] == x and m[x][A.one] == x


@given(algebra_and_elements(2))
def test_mv_identities(case):
    A, (x, y) = case
    o, n = A.oplus, A.neg
    assert n[n[x]] == x
    assert o[x][n[x]] == A.one
    assert o[n[o[n[x]][y]]][y] == o[n[o[n[y]][x]]][x]
    if not A.is_trivial:
        # finite algebras are semisimple: only 0 has infinite order
        assert (order(A, x) == INF) == (x == 0)


# ---- terms ---------------------------------------------------------------


def test_eval_term_examples(L2, two):
    x = Var(0)
    assert eval_term(L2, Neg(x), [0]) == L2.one
    assert eval_term(L2, t_odot(x, x), [1]) == 0
    assert eval_term(two, Oplus(x, Neg(x)), [0]) == two.one


# ---- products and quotients ----------------------------------------------


def test_product_examples(two, L2):
    B4 = product(two, two)
    assert B4.size == 4 and validate_algebra(B4.oplus, B4.neg).ok
    assert all(B4.oplus[x][x] == x for x in B4.elements)
    P = product(L2, L2)
    assert P.size == 9 and validate_algebra(P.oplus, P.neg).ok
    assert find_isomorphism(product(L2, trivial_algebra()), L2) is not None


def test_quotient_examples(L2, L2xL2, two):
    Q, h = quotient(L2, [0])
    assert find_isomorphism(Q, L2) is not None
    assert h.map == (0, 1, 2)
    # Ł2 × {0} = {(a, 0)}
    Q, _ = quotient(L2xL2, [0, 3, 6])
    assert find_isomorphism(Q, L2) is not None
    B4 = product(two, two)
    Q, _ = quotient(B4, [0, 2])
    assert Q.size == 2


def test_quotient_rejects_non_ideal(L2):
    with pytest.raises(NotAnIdealError):
        quotient(L2, [0, 2])


@given(st.sampled_from(ALGEBRAS))
def test_quotient_by_zero_is_iso(A):
    Q, _ = quotient(A, [0])
    assert find_isomorphism(A, Q) is not None


# ---- homomorphisms -------------------------------------------------------


def test_validate_hom_examples(L2, two):
    assert validate_hom(identity_hom(L2))
    Q, h = quotient(L2, [0])
    assert validate_hom(h)
    bad = validate_hom(MvHom(L2, two, (0, 0, 1)))
    assert not bad and bad.reason == "neg"


def test_surjection_validates(L2xL2):
    _, h = quotient(L2xL2, [0, 1, 2])
    assert validate_hom(h) and h.is_surjective()


# ---- size guard ----------------------------------------------------------


def test_size_guard(monkeypatch):
    monkeypatch.setenv("MVS_SIZE_GUARD", "4")
    with pytest.raises(SizeGuardError):
        lukasiewicz(5)
