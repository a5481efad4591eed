import json

import pytest

from framecat import fincat, io, rand, sset


def roundtrip_exact(doc, loader, dumper):
    s1 = io.dumps(doc)
    obj = loader(json.loads(s1))
    s2 = io.dumps(dumper(obj))
    assert s1 == s2


def test_category_roundtrip():
    cat = fincat.zigzag_category()
    weq = frozenset({"w"} | set(cat.identity.values()))
    doc = io.category_doc(cat, weq=weq)
    roundtrip_exact(doc, lambda d: io.category_from_doc(d),
                    lambda pair: io.category_doc(pair[0], weq=pair[1]))


def test_sset_roundtrip():
    k = sset.nerve(fincat.poset_category(2), 2)
    roundtrip_exact(io.sset_doc(k), io.sset_from_doc, io.sset_doc)
    k2 = io.sset_from_doc(json.loads(io.dumps(io.sset_doc(k))))
    assert sset.validate_sset(k2).passed
    assert k2.counts() == k.counts()


def test_complex_roundtrip():
    x = rand.random_complex(rand.rng_for(1, 0), 5)
    roundtrip_exact(io.complex_doc(x), io.complex_from_doc, io.complex_doc)
    back = io.complex_from_doc(json.loads(io.dumps(io.complex_doc(x))))
    assert back == x


def test_chain_map_roundtrip():
    rng = rand.rng_for(2, 0)
    x, y = rand.random_complex(rng, 3), rand.random_complex(rng, 3)
    f = rand.random_chain_map(rng, x, y)
    back = io.chain_map_from_doc(json.loads(io.dumps(io.chain_map_doc(f))))
    assert back == f
    roundtrip_exact(io.chain_map_doc(f), io.chain_map_from_doc,
                    io.chain_map_doc)


def test_diagram_roundtrip():
    rng = rand.rng_for(3, 0)
    index = rand.random_direct_category(rng, max_objects=3)
    x = rand.random_reedy_cofibrant_diagram(rng, index, 2, max_dim=1,
                                            max_degree=1, total_budget=4)
    doc = io.diagram_doc(x)
    back = io.diagram_from_doc(json.loads(io.dumps(doc)))
    assert back == x
    roundtrip_exact(doc, io.diagram_from_doc, io.diagram_doc)


def test_invalid_kind_rejected():
    with pytest.raises(io.FormatError):
        io.category_from_doc({"kind": "sset"})
    with pytest.raises(io.FormatError):
        io.kind_of({})


def test_invalid_complex_rejected():
    doc = {"kind": "complex", "prime": 3, "lo": 0, "hi": 1,
           "dims": {"0": 1, "1": 1, "2": 1},
           "differentials": {"1": [1], "2": [1]}}
    with pytest.raises(io.FormatError):
        io.complex_from_doc(doc)


def test_load_any(tmp_path):
    cat = fincat.poset_category(1)
    path = tmp_path / "c.json"
    io.save(path, io.category_doc(cat))
    kind, (loaded, weq) = io.load_any(path)
    assert kind == "category"
    assert fincat.validate_category(loaded).passed
    assert weq is None
