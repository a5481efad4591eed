"""Self-describing JSON file formats with canonical, bit-exact round-trips.

Every document carries a "kind" field; serialization sorts keys and list
entries so that load(dump(x)) reproduces dump(x) byte for byte.
"""

import json

import numpy as np

from .chaincof import ChainComplex, ChainDiagram, ChainMap, identity_chain_map
from .fincat import FinCategory, Morphism, MorphismClass
from .sset import TruncatedSSet


class FormatError(ValueError):
    pass


def dumps(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def save(path, doc):
    with open(path, "w") as fh:
        fh.write(dumps(doc))


def load(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc


def kind_of(doc):
    k = doc.get("kind")
    if not isinstance(k, str):
        raise FormatError("document lacks a 'kind' field")
    return k


# -- categories -------------------------------------------------------------

def category_doc(cat, weq=None):
    doc = {
        "kind": "category",
        "objects": sorted(cat.objects),
        "morphisms": sorted(
            [{"id": m.mid, "src": m.src, "tgt": m.tgt} for m in cat.morphisms],
            key=lambda m: m["id"]),
        "identities": {o: cat.identity[o] for o in sorted(cat.objects)},
        "compose": sorted([[g, f, gf]
                           for (g, f), gf in cat.compose_table.items()]),
    }
    if weq is not None:
        members = weq.members if isinstance(weq, MorphismClass) else weq
        doc["weq"] = sorted(members)
    return doc


def category_from_doc(doc):
    if kind_of(doc) != "category":
        raise FormatError("expected a category document")
    try:
        cat = FinCategory(
            doc["objects"],
            [Morphism(m["id"], m["src"], m["tgt"]) for m in doc["morphisms"]],
            doc["identities"],
            {(g, f): gf for g, f, gf in doc["compose"]},
        )
    except KeyError as exc:
        raise FormatError(f"category document missing field {exc}") from exc
    weq = None
    if "weq" in doc:
        weq = MorphismClass(cat, frozenset(doc["weq"]), tag="weq")
    return cat, weq


# -- simplicial sets --------------------------------------------------------

def sset_doc(k):
    return {
        "kind": "sset",
        "cap": k.cap,
        "simplices": [sorted(level) for level in k.simplices],
        "faces": sorted([[x, i, v] for (x, i), v in k.faces.items()]),
        "degeneracies": sorted([[x, i, v]
                                for (x, i), v in k.degeneracies.items()]),
    }


def sset_from_doc(doc):
    if kind_of(doc) != "sset":
        raise FormatError("expected an sset document")
    try:
        return TruncatedSSet(
            doc["cap"], doc["simplices"],
            {(x, i): v for x, i, v in doc["faces"]},
            {(x, i): v for x, i, v in doc["degeneracies"]},
        )
    except KeyError as exc:
        raise FormatError(f"sset document missing field {exc}") from exc


# -- chain complexes and maps ----------------------------------------------

def complex_doc(x):
    return {
        "kind": "complex",
        "prime": x.p,
        "lo": x.lo,
        "hi": x.hi,
        "dims": {str(n): x.dim(n) for n in sorted(x.dims)},
        "differentials": {str(n): [int(v) for v in x.d[n].ravel()]
                          for n in sorted(x.d)},
    }


def complex_from_doc(doc):
    if kind_of(doc) != "complex":
        raise FormatError("expected a complex document")
    p = doc["prime"]
    dims = {int(n): d for n, d in doc["dims"].items()}
    diffs = {}
    for n_str, flat in doc.get("differentials", {}).items():
        n = int(n_str)
        rows = dims.get(n - 1, 0)
        cols = dims.get(n, 0)
        diffs[n] = np.asarray(flat, dtype=np.int64).reshape(rows, cols)
    try:
        return ChainComplex(p, dims, diffs)
    except ValueError as exc:
        raise FormatError(f"invalid complex: {exc}") from exc


def chain_map_doc(f):
    return {
        "kind": "chain_map",
        "source": complex_doc(f.src),
        "target": complex_doc(f.tgt),
        "blocks": {str(n): [int(v) for v in f.blocks[n].ravel()]
                   for n in sorted(f.blocks)},
    }


def chain_map_from_doc(doc):
    if kind_of(doc) != "chain_map":
        raise FormatError("expected a chain_map document")
    src = complex_from_doc(doc["source"])
    tgt = complex_from_doc(doc["target"])
    blocks = {}
    for n_str, flat in doc.get("blocks", {}).items():
        n = int(n_str)
        blocks[n] = np.asarray(flat, dtype=np.int64).reshape(
            tgt.dim(n), src.dim(n))
    try:
        return ChainMap(src, tgt, blocks)
    except ValueError as exc:
        raise FormatError(f"invalid chain map: {exc}") from exc


# -- diagrams ----------------------------------------------------------------

def diagram_doc(x, weq=None):
    doc = {
        "kind": "diagram",
        "category": category_doc(x.index, weq=weq if weq is not None else x.weq),
        "objects": {o: complex_doc(x.at(o)) for o in sorted(x.index.objects)},
        "morphisms": {},
    }
    for m in sorted(x.index.morphisms, key=lambda m: m.mid):
        if x.index.is_identity(m.mid):
            continue
        f = x.on(m.mid)
        doc["morphisms"][m.mid] = {str(n): [int(v) for v in f.blocks[n].ravel()]
                                   for n in sorted(f.blocks)}
    return doc


def diagram_from_doc(doc):
    if kind_of(doc) != "diagram":
        raise FormatError("expected a diagram document")
    cat, weq = category_from_doc(doc["category"])
    complexes = {o: complex_from_doc(d) for o, d in doc["objects"].items()}
    maps = {}
    for m in cat.morphisms:
        if cat.is_identity(m.mid):
            maps[m.mid] = identity_chain_map(complexes[m.src])
            continue
        blocks_doc = doc["morphisms"].get(m.mid, {})
        src, tgt = complexes[m.src], complexes[m.tgt]
        blocks = {int(n): np.asarray(flat, dtype=np.int64).reshape(
            tgt.dim(int(n)), src.dim(int(n)))
            for n, flat in blocks_doc.items()}
        maps[m.mid] = ChainMap(src, tgt, blocks)
    try:
        return ChainDiagram(cat, complexes, maps, weq=weq)
    except ValueError as exc:
        raise FormatError(f"invalid diagram: {exc}") from exc


_DUMPERS = {
    "category": lambda obj, **kw: category_doc(obj, **kw),
    "sset": lambda obj, **kw: sset_doc(obj),
    "complex": lambda obj, **kw: complex_doc(obj),
    "chain_map": lambda obj, **kw: chain_map_doc(obj),
    "diagram": lambda obj, **kw: diagram_doc(obj, **kw),
}

_LOADERS = {
    "category": category_from_doc,
    "sset": sset_from_doc,
    "complex": complex_from_doc,
    "chain_map": chain_map_from_doc,
    "diagram": diagram_from_doc,
}


def load_any(path):
    doc = load(path)
    k = kind_of(doc)
    if k not in _LOADERS:
        raise FormatError(f"unknown document kind {k!r}")
    return k, _LOADERS[k](doc)
