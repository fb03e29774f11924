"""Deterministic generation of the finite test corpus."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from pathlib import Path

from .errors import MvsError, SizeGuardError, check_size
from .lattice import (
    FiniteDistLattice,
    LatticeHom,
    downset_lattice,
    find_lattice_isomorphism,
    is_lattice_hom,
)
from .lgroups import lukasiewicz
from .mv import FiniteMvAlgebra, product, quotient, validate_algebra
from .spectra import maximals

MAX_ENUMERATED_ALGEBRA = 6
MAX_ENUMERATED_LATTICE = 6


@dataclass(frozen=True)
class CorpusSpec:
    max_algebra_size: int = 6
    max_product_size: int = 16
    max_lattice_size: int = 6
    shapes: tuple | None = None
    seed: int = 20240601

    def __post_init__(self):
        if self.max_algebra_size > MAX_ENUMERATED_ALGEBRA:
            raise SizeGuardError(f"algebra enumeration stops at size {MAX_ENUMERATED_ALGEBRA}")
        if self.max_lattice_size > MAX_ENUMERATED_LATTICE:
            raise SizeGuardError(f"lattice enumeration stops at size {MAX_ENUMERATED_LATTICE}")
        check_size(self.max_product_size)

    def as_dict(self) -> dict:
        return {"max_algebra_size": self.max_algebra_size,
                "max_product_size": self.max_product_size,
                "max_lattice_size": self.max_lattice_size,
                "shapes": None if self.shapes is None else [list(s) for s in self.shapes],
                "seed": self.seed}


# --------------------------------------------------------------------------
# MV-algebras by exhaustive table search


def _involutions(n: int):
    """Involutions of 0..n-1 swapping 0 and n-1."""
    inner = list(range(1, n - 1))

    def rec(rest, acc):
        if not rest:
            yield dict(acc)
            return
        x = rest[0]
        acc[x] = x
        yield from rec(rest[1:], acc)
        for y in rest[1:]:
            acc[x], acc[y] = y, x
            yield from rec([z for z in rest[1:] if z != y], acc)
            del acc[y]
        del acc[x]

    for m in rec(inner, {}):
        neg = [0] * n
        neg[0], neg[n - 1] = n - 1, 0
        for k, v in m.items():
            neg[k] = v
        yield tuple(neg)


def _consistent(t, neg, n) -> bool:
    """Associativity and the MV identity on every instance already decided."""
    r = range(n)
    for x in r:
        for y in r:
            xy = t[x][y]
            if xy is None:
                continue
            for z in r:
                yz = t[y][z]
                if yz is None:
                    continue
                a, b = t[xy][z], t[x][yz]
                if a is not None and b is not None and a != b:
                    return False
            nx, ny = neg[x], neg[y]
            u, v = t[nx][y], t[ny][x]
            if u is None or v is None:
                continue
            a, b = t[neg[u]][y], t[neg[v]][x]
            if a is not None and b is not None and a != b:
                return False
    return True


def _tables_of_size(n: int):
    if n == 1:
        yield ((0,),), (0,)
        return
    top = n - 1
    for neg in _involutions(n):
        t = [[None] * n for _ in range(n)]
        for x in range(n):
            t[x][0] = t[0][x] = x
            t[x][top] = t[top][x] = top
            # x ⊕ ¬x = 1 holds in every MV-algebra
            t[x][neg[x]] = t[neg[x]][x] = top
        cells = [(x, y) for x in range(1, top) for y in range(x, top) if t[x][y] is None]

        def rec(i):
            if i == len(cells):
                yield tuple(tuple(row) for row in t)
                return
            x, y = cells[i]
            for v in range(n):
                t[x][y] = t[y][x] = v
                if _consistent(t, neg, n):
                    yield from rec(i + 1)
            t[x][y] = t[y][x] = None

        if _consistent(t, neg, n):
            for table in rec(0):
                yield table, neg


def _canonical(oplus, neg) -> tuple:
    n = len(neg)
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm  # p[old] = new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        o = tuple(tuple(p[oplus[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        ng = tuple(p[neg[inv[i]]] for i in range(n))
        key = (ng, o)
        if best is None or key < best[0]:
            best = (key, o, ng)
    return best


@lru_cache(maxsize=None)
def all_mv_algebras(n: int) -> tuple:
    """Every MV-algebra with n elements, one per isomorphism class."""
    if not 1 <= n <= MAX_ENUMERATED_ALGEBRA:
        raise SizeGuardError(f"exhaustive enumeration covers sizes 1..{MAX_ENUMERATED_ALGEBRA}")
    found = {}
    for oplus, neg in _tables_of_size(n):
        if not validate_algebra(oplus, neg).ok:
            continue
        key, o, ng = _canonical(oplus, neg)
        found.setdefault(key, (o, ng))
    out = []
    for key in sorted(found):
        o, ng = found[key]
        A = FiniteMvAlgebra(n, o, ng)
        out.append(_labelled(A))
    return tuple(out)


def chain_shape(A: FiniteMvAlgebra) -> tuple:
    """Sorted m_i with A ≅ Ł_{m_1} × ... (finite algebras are such products)."""
    return tuple(sorted(quotient(A, M)[0].size - 1 for M in maximals(A)))


def shape_name(shape) -> str:
    return "x".join(f"L{m}" for m in shape) if shape else "trivial"


def _labelled(A: FiniteMvAlgebra) -> FiniteMvAlgebra:
    labels = A.labels if A.labels is not None else [str(i) for i in range(A.size)]
    return FiniteMvAlgebra(A.size, A.oplus, A.neg, labels)


def chain_products(shape) -> FiniteMvAlgebra:
    shape = tuple(shape)
    if not shape:
        raise MvsError("a chain product needs at least one factor")
    size = 1
    for m in shape:
        size *= m + 1
    check_size(size)
    A = lukasiewicz(shape[0])
    for m in shape[1:]:
        A = product(A, lukasiewicz(m))
    return A


def product_shapes(max_size: int) -> list[tuple]:
    """Non-increasing shapes (m_1 ≥ m_2 ≥ ...) with Π(m_i + 1) ≤ max_size."""
    out = []

    def rec(prefix, size, cap):
        if prefix:
            out.append(tuple(prefix))
        for m in range(cap, 0, -1):
            if size * (m + 1) <= max_size:
                rec(prefix + [m], size * (m + 1), m)

    rec([], 1, max_size - 1)
    return sorted(out, key=lambda s: (_size(s), s))


def _size(shape) -> int:
    out = 1
    for m in shape:
        out *= m + 1
    return out


# --------------------------------------------------------------------------
# distributive lattices and surjections


def _posets(n: int):
    """All partial orders on 0..n-1 extending the natural order (every
    finite poset has such a labelling), as order matrices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                leq[i][j] = True
        if all(not (leq[i][j] and leq[j][k]) or leq[i][k]
               for i in range(n) for j in range(n) for k in range(n)):
            yield leq


@lru_cache(maxsize=None)
def all_distributive_lattices(max_size: int) -> tuple:
    """Every bounded distributive lattice with at most max_size elements,
    up to isomorphism, as down-set lattices of finite posets."""
    if not 1 <= max_size <= MAX_ENUMERATED_LATTICE:
        raise SizeGuardError(f"lattice enumeration covers sizes 1..{MAX_ENUMERATED_LATTICE}")
    found: list[FiniteDistLattice] = []
    for n in range(0, max_size):
        for leq in _posets(n):
            L, masks = downset_lattice(n, leq)
            if L.size > max_size:
                continue
            if any(K.size == L.size and find_lattice_isomorphism(K, L) for K in found):
                continue
            found.append(L)
    found.sort(key=lambda L: (L.size, _lattice_key(L)))
    return tuple(_name_lattice(L, i) for i, L in enumerate(found))


def _lattice_key(L: FiniteDistLattice) -> tuple:
    return tuple(sorted(bin(m).count("1") for m in L.up_masks))


def _name_lattice(L: FiniteDistLattice, i: int) -> FiniteDistLattice:
    labels = [str(x) for x in range(L.size)]
    return FiniteDistLattice(L.size, L.join, L.meet, L.bottom, L.top, labels)


def surjective_homs(L: FiniteDistLattice, K: FiniteDistLattice) -> list[LatticeHom]:
    """All surjective bounded-lattice homomorphisms L → K."""
    if K.size > L.size:
        return []
    n = L.size
    order = sorted(range(n), key=lambda x: bin(L.down_masks[x]).count("1"))
    f = [None] * n
    out = []

    def ok(x):
        for y in range(n):
            fy = f[y]
            if fy is None:
                continue
            j, m = f[L.join[x][y]], f[L.meet[x][y]]
            if j is not None and j != K.join[f[x]][fy]:
                return False
            if m is not None and m != K.meet[f[x]][fy]:
                return False
        return True

    def rec(i):
        if i == n:
            h = LatticeHom(L, K, tuple(f))
            if h.is_surjective() and is_lattice_hom(h):
                out.append(h)
            return
        x = order[i]
        if f[x] is not None:
            rec(i + 1)
            return
        for v in range(K.size):
            f[x] = v
            if ok(x):
                rec(i + 1)
            f[x] = None

    f[L.bottom], f[L.top] = K.bottom, K.top
    if L.bottom == L.top and K.bottom != K.top:
        return []
    rec(0)
    return out


def all_surjective_lattice_homs(max_size: int = 6) -> list[LatticeHom]:
    lattices = all_distributive_lattices(max_size)
    out = []
    for L in lattices:
        for K in lattices:
            out.extend(surjective_homs(L, K))
    return out


# --------------------------------------------------------------------------
# the corpus


@dataclass
class Corpus:
    spec: CorpusSpec
    algebras: list = field(default_factory=list)  # (name, FiniteMvAlgebra)
    lattices: list = field(default_factory=list)  # (name, FiniteDistLattice)
    homs: list = field(default_factory=list)  # (name, LatticeHom)


@lru_cache(maxsize=8)
def default_corpus(spec: CorpusSpec | None = None) -> Corpus:
    spec = CorpusSpec() if spec is None else spec
    corpus = Corpus(spec)
    seen = set()
    for n in range(1, spec.max_algebra_size + 1):
        for A in all_mv_algebras(n):
            shape = chain_shape(A)
            seen.add(shape)
            corpus.algebras.append((f"mv{n}-{shape_name(shape)}", A))
    shapes = spec.shapes if spec.shapes is not None else product_shapes(spec.max_product_size)
    for shape in shapes:
        shape = tuple(sorted(shape, reverse=True))
        if tuple(sorted(shape)) in seen:
            continue
        seen.add(tuple(sorted(shape)))
        corpus.algebras.append((shape_name(shape), chain_products(shape)))
    lattices = all_distributive_lattices(spec.max_lattice_size)
    names = {}
    for i, L in enumerate(lattices):
        names[id(L)] = f"lat{L.size}-{i}"
        corpus.lattices.append((names[id(L)], L))
    for L in lattices:
        for K in lattices:
            for k, h in enumerate(surjective_homs(L, K)):
                corpus.homs.append((f"{names[id(L)]}--{names[id(K)]}#{k}", h))
    return corpus


def emit(corpus: Corpus, out_dir) -> dict:
    """Write every member as JSON plus a manifest of SHA-256 digests."""
    from .io import algebra_to_json, hom_to_json, lattice_to_json

    out = Path(out_dir)
    files = {}

    def put(rel, obj):
        text = json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
        path = out / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        files[rel] = hashlib.sha256(text.encode("utf-8")).hexdigest()

    for name, A in corpus.algebras:
        put(f"algebras/{name}.json", algebra_to_json(A))
    for name, L in corpus.lattices:
        put(f"lattices/{name}.json", lattice_to_json(L))
    for name, h in corpus.homs:
        put(f"homs/{name}.json", hom_to_json(h))
    manifest = {"spec": corpus.spec.as_dict(), "files": dict(sorted(files.items()))}
    text = json.dumps(manifest, indent=1, sort_keys=True) + "\n"
    (out / "manifest.json").write_text(text, encoding="utf-8")
    return manifest
