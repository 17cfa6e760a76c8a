"""JSON reading and writing for categories, functors, relations and friends.

Functor files carry only the two maps.  The categories they connect are
passed in by the caller, or named in optional ``"source"`` / ``"target"``
entries holding either an inline category or a path relative to the file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .congruence import DiagramInCat, RelationPair
from .errors import InvalidCategory, InvalidFunctor
from .fincat import FinCat, FinFunctor
from .model import LiftingSquare
from .simplicial import BoundedSSet, SimplicialComplex


class FormatError(InvalidCategory):
    """A file does not have the expected JSON shape."""


def _read(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc


def _require(data, keys, what):
    if not isinstance(data, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise FormatError(f"{what} is missing {', '.join(missing)}")


# -- categories ------------------------------------------------------------------


def category_from_dict(data) -> FinCat:
    _require(data, ("objects", "morphisms"), "category")
    try:
        morphisms = [(m["name"], m["src"], m["tgt"]) for m in data["morphisms"]]
        compose = [(c["first"], c["second"], c["result"]) for c in data.get("compose", [])]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed morphism or composition entry: {exc}") from exc
    return FinCat(data["objects"], morphisms, compose)


def category_to_dict(C: FinCat) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [{"name": m, "src": C.src(m), "tgt": C.tgt(m)} for m in C.morphisms],
        "compose": [{"first": a, "second": b, "result": c}
                    for (a, b), c in sorted(C.composition_table().items())],
    }


def load_category(path) -> FinCat:
    return category_from_dict(_read(path))


# -- functors ----------------------------------------------------------------------


def functor_from_dict(data, source: FinCat = None, target: FinCat = None,
                      base: Path = None) -> FinFunctor:
    _require(data, ("object_map",), "functor")

    def side(key, given):
        if given is not None:
            return given
        ref = data.get(key)
        if ref is None:
            raise InvalidFunctor(f"functor needs its {key} category")
        if isinstance(ref, str):
            return load_category((base or Path(".")) / ref)
        return category_from_dict(ref)

    return FinFunctor(side("source", source), side("target", target),
                      data["object_map"], data.get("morphism_map", {}))


def functor_to_dict(F: FinFunctor, with_categories: bool = False) -> dict:
    out = {
        "object_map": dict(F.object_map),
        "morphism_map": {m: F.mor(m) for m in F.source.morphisms},
    }
    if with_categories:
        out["source"] = category_to_dict(F.source)
        out["target"] = category_to_dict(F.target)
    return out


def load_functor(path, source: FinCat = None, target: FinCat = None) -> FinFunctor:
    path = Path(path)
    return functor_from_dict(_read(path), source, target, path.parent)


# -- relations, diagrams, squares ----------------------------------------------------


def relation_from_dict(data) -> RelationPair:
    if not isinstance(data, dict):
        raise FormatError("relation must be a JSON object")
    return RelationPair(data.get("object_pairs", []), data.get("sequence_pairs", []))


def relation_to_dict(R: RelationPair) -> dict:
    return {"object_pairs": sorted(list(p) for p in R.object_pairs),
            "sequence_pairs": sorted([list(u), list(v)] for u, v in R.sequence_pairs)}


def load_relation(path) -> RelationPair:
    return relation_from_dict(_read(path))


def load_diagram(path) -> DiagramInCat:
    """``{"index": path, "nodes": {obj: path}, "edges": {mor: path}}``, paths relative to the file."""
    path = Path(path)
    data = _read(path)
    _require(data, ("index", "nodes", "edges"), "diagram")
    base = path.parent
    index = load_category(base / data["index"])
    nodes = {x: load_category(base / p) for x, p in data["nodes"].items()}
    edges = {}
    for u, p in data["edges"].items():
        if not index.has_morphism(u) or index.is_identity(u):
            raise FormatError(f"diagram edge {u!r} is not a morphism of the index")
        edges[u] = load_functor(base / p, nodes[index.src(u)], nodes[index.tgt(u)])
    D = DiagramInCat(index, nodes, edges)
    D.validate()
    return D


def load_square(path) -> LiftingSquare:
    """``{"left", "right", "top", "bottom"}`` each naming a functor file.

    The functor files must name their own source and target categories.
    """
    path = Path(path)
    data = _read(path)
    _require(data, ("left", "right", "top", "bottom"), "square")
    f = {k: load_functor(path.parent / data[k]) for k in ("left", "right", "top", "bottom")}
    return LiftingSquare(f["left"], f["right"], f["top"], f["bottom"])


def load_chain(path) -> tuple:
    """``{"categories": [path], "functors": [path]}`` for a finite sequential diagram."""
    path = Path(path)
    data = _read(path)
    _require(data, ("categories", "functors"), "chain")
    cats = [load_category(path.parent / p) for p in data["categories"]]
    if len(data["functors"]) != len(cats) - 1:
        raise FormatError("a chain of n categories needs n - 1 functors")
    funs = [load_functor(path.parent / p, cats[k], cats[k + 1])
            for k, p in enumerate(data["functors"])]
    return cats, funs


# -- complexes and simplicial sets ----------------------------------------------------


def complex_from_dict(data) -> SimplicialComplex:
    _require(data, ("vertices", "simplices"), "complex")
    return SimplicialComplex(data["vertices"], data["simplices"])


def complex_to_dict(K: SimplicialComplex, maximal_only: bool = False) -> dict:
    simplices = K.maximal_simplices() if maximal_only else K.simplices
    return {"vertices": list(K.vertices), "simplices": [list(s) for s in simplices]}


def load_complex(path) -> SimplicialComplex:
    return complex_from_dict(_read(path))


def _simplex_name(X: BoundedSSet, s) -> str:
    if s in X.labels:
        return X.labels[s]
    if len(s) == 2 and isinstance(s[1], tuple):   # nerve chain (x0, morphisms)
        return s[0] + "|" + ",".join(s[1])
    return "{" + ",".join(s) + "}"


def sset_to_dict(X: BoundedSSet) -> dict:
    """Nondegenerate simplices per dimension with the labels of their faces.

    A degenerate face is written as its nondegenerate simplex followed by the
    surjection that degenerates it.
    """
    out = {"max_dim": X.max_dim, "complete": X.complete, "simplices": {}}
    for n, ss in sorted(X.simplices.items()):
        rows = []
        for s in ss:
            row = {"label": _simplex_name(X, s)}
            if n > 0:
                row["faces"] = [_simplex_name(X, t) if X.dims[t] == n - 1
                                else [_simplex_name(X, t), list(surj)]
                                for t, surj in X.faces[s]]
            rows.append(row)
        out["simplices"][str(n)] = rows
    return out


def load_any(path):
    """Guess the kind of a file from its keys: category, functor or complex."""
    data = _read(path)
    if isinstance(data, dict) and "morphisms" in data:
        return category_from_dict(data)
    if isinstance(data, dict) and "object_map" in data:
        return functor_from_dict(data, base=Path(path).parent)
    if isinstance(data, dict) and "simplices" in data:
        return complex_from_dict(data)
    raise FormatError(f"{path}: not a category, functor or complex file")


def dump(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")
