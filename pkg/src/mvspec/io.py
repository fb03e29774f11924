"""JSON reading and writing, and DOT output for Hasse diagrams."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import MalformedTableError, MvsError
from .lattice import FiniteDistLattice, LatticeHom
from .mcnaughton import NormalForm
from .mv import FiniteMvAlgebra, MvHom
from .spectra import SpecPoset


class InputError(MvsError, ValueError):
    """A JSON document does not match the expected format."""


def load_json(source):
    """Parse a path, a JSON string, or pass a dict through."""
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _require(data: dict, *keys):
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputError(f"missing field(s): {', '.join(missing)}")


# algebras ------------------------------------------------------------------


def algebra_from_json(source, validate: bool = True) -> FiniteMvAlgebra:
    data = load_json(source)
    _require(data, "oplus", "neg")
    size = data.get("size", len(data["neg"]))
    if size != len(data["neg"]) or size != len(data["oplus"]):
        raise MalformedTableError("size does not match the tables")
    return FiniteMvAlgebra.from_tables(data["oplus"], data["neg"], data.get("labels"), validate)


def algebra_to_json(A: FiniteMvAlgebra) -> dict:
    out = {"size": A.size, "oplus": [list(r) for r in A.oplus], "neg": list(A.neg)}
    if A.labels is not None:
        out["labels"] = list(A.labels)
    return out


def mv_hom_from_json(source) -> MvHom:
    data = load_json(source)
    _require(data, "source", "target", "map")
    base = _base_dir(source)
    A = algebra_from_json(_resolve(data["source"], base))
    B = algebra_from_json(_resolve(data["target"], base))
    return MvHom(A, B, tuple(data["map"]))


def _base_dir(source) -> Path:
    """Directory against which relative references in a document resolve."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        return Path(source).parent
    return Path(".")


def _resolve(ref, base: Path):
    if isinstance(ref, dict):
        return ref
    path = Path(ref)
    return path if path.is_absolute() or path.exists() else base / path


# lattices ------------------------------------------------------------------


def lattice_from_json(source, validate: bool = True) -> FiniteDistLattice:
    data = load_json(source)
    _require(data, "join", "meet")
    join, meet = data["join"], data["meet"]
    n = data.get("size", len(join))
    if n != len(join):
        raise MalformedTableError("size does not match the tables")
    bottom = data.get("bottom")
    top = data.get("top")
    if bottom is None or top is None:
        try:
            bottoms = [x for x in range(n) if all(join[x][y] == y for y in range(n))]
            tops = [x for x in range(n) if all(join[x][y] == x for y in range(n))]
        except (IndexError, TypeError):
            raise MalformedTableError("join table is malformed") from None
        if len(bottoms) != 1 or len(tops) != 1:
            raise InputError("lattice has no bottom or no top")
        bottom = bottoms[0] if bottom is None else bottom
        top = tops[0] if top is None else top
    return FiniteDistLattice.from_tables(join, meet, bottom, top, data.get("labels"), validate)


def lattice_to_json(L: FiniteDistLattice) -> dict:
    out = {"size": L.size, "join": [list(r) for r in L.join], "meet": [list(r) for r in L.meet],
           "bottom": L.bottom, "top": L.top}
    if L.labels is not None:
        out["labels"] = list(L.labels)
    return out


def lattice_hom_from_json(source) -> LatticeHom:
    data = load_json(source)
    _require(data, "source", "target", "map")
    base = _base_dir(source)
    L = lattice_from_json(_resolve(data["source"], base))
    K = lattice_from_json(_resolve(data["target"], base))
    return LatticeHom(L, K, tuple(data["map"]))


def hom_to_json(h) -> dict:
    if isinstance(h, LatticeHom):
        return {"source": lattice_to_json(h.source), "target": lattice_to_json(h.target),
                "map": list(h.map)}
    return {"source": algebra_to_json(h.source), "target": algebra_to_json(h.target),
            "map": list(h.map)}


# normal forms --------------------------------------------------------------


def normal_form_from_json(source) -> NormalForm:
    data = load_json(source)
    _require(data, "arity", "meets")
    try:
        return NormalForm.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed normal form: {exc}") from None


# posets and DOT ------------------------------------------------------------


def poset_to_json(S: SpecPoset) -> dict:
    points = []
    for i, p in enumerate(S.points):
        entry = {"label": S.label(i)}
        members = getattr(p, "members", None)
        if members is not None:
            entry["members"] = list(members)
        points.append(entry)
    return {"points": points, "hasse": [list(e) for e in S.hasse_edges()],
            "maximal": S.maximal_points()}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(obj, name: str = "hasse") -> str:
    """Hasse diagram, bottom to top, nodes in index order."""
    if isinstance(obj, SpecPoset):
        n, labels, edges = obj.size, [obj.label(i) for i in range(obj.size)], obj.hasse_edges()
    elif isinstance(obj, FiniteDistLattice):
        n = obj.size
        labels = [obj.label(i) for i in range(n)]
        edges = [(x, y) for x in range(n) for y in range(n)
                 if x != y and obj.leq(x, y) and not any(
                     z not in (x, y) and obj.leq(x, z) and obj.leq(z, y) for z in range(n))]
    else:
        raise MvsError("emit_dot needs a poset or a lattice")
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    lines += [f"  n{i} [label={_quote(labels[i])}];" for i in range(n)]
    lines += [f"  n{x} -> n{y};" for x, y in sorted(edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
