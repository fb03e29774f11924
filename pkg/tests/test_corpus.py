import json

from mvspec.corpus import (
    CorpusSpec,
    all_distributive_lattices,
    all_mv_algebras,
    all_surjective_lattice_homs,
    chain_products,
    default_corpus,
    emit,
    product_shapes,
)
from mvspec.lattice import identity, validate_lattice
from mvspec.lgroups import lukasiewicz
from mvspec.mv import find_isomorphism, product, validate_algebra
from mvspec.verify import chain_counterexample


def test_small_algebra_counts():
    # one algebra per product of chains with the given carrier size
    assert [len(all_mv_algebras(n)) for n in range(1, 7)] == [1, 1, 1, 2, 1, 2]
    (L2,) = all_mv_algebras(3)
    assert find_isomorphism(L2, lukasiewicz(2)) is not None


def test_chain_products():
    L2, L1, L3 = lukasiewicz(2), lukasiewicz(1), lukasiewicz(3)
    assert find_isomorphism(chain_products((2, 2)), product(L2, L2)) is not None
    assert find_isomorphism(chain_products((1, 3)), product(L1, L3)) is not None
    assert find_isomorphism(chain_products((4,)), lukasiewicz(4)) is not None
    assert len(product_shapes(16)) == 30


def test_lattice_counts():
    assert [sum(L.size == n for L in all_distributive_lattices(6)) for n in range(1, 7)] == [
        1, 1, 1, 2, 3, 5]


def test_surjection_corpus():
    homs = all_surjective_lattice_homs(6)
    assert any(h.map == chain_counterexample().map and h.source.size == 4
               and h.target.size == 2 for h in homs)
    assert any(h == identity(h.source) for h in homs)


def test_members_validate(corpus):
    for _, A in corpus.algebras:
        assert validate_algebra(A.oplus, A.neg).ok
    for _, L in corpus.lattices:
        assert not validate_lattice(L)


def test_deterministic():
    a = default_corpus(CorpusSpec(max_product_size=8))
    default_corpus.cache_clear()
    b = default_corpus(CorpusSpec(max_product_size=8))
    assert [n for n, _ in a.algebras] == [n for n, _ in b.algebras]
    assert [h.map for _, h in a.homs] == [h.map for _, h in b.homs]


def test_emit(tmp_path):
    corpus = default_corpus(CorpusSpec(max_algebra_size=4, max_product_size=4, max_lattice_size=3))
    manifest = emit(corpus, tmp_path / "a")
    again = emit(corpus, tmp_path / "b")
    assert manifest == again
    on_disk = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert on_disk["files"] == manifest["files"]
    assert len(manifest["files"]) == len(corpus.algebras) + len(corpus.lattices) + len(corpus.homs)
