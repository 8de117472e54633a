from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.cluster import explore, weyl
from skeinlab.exactalg import LaurentPoly, RationalFunc, as_laurent, default_names, is_positive, parse_laurent, substitute
from skeinlab.skein import (
    ArcRef,
    CatalogueEntry,
    CertificateError,
    LoopRef,
    LoopWord,
    MiscataloguedError,
    SkeinElement,
    SkeinModel,
    TaggedCurveSystem,
    WordError,
    annulus_cores,
    catalogue_path,
    insert_backtrack,
    load_catalogue,
    model_for,
    nu_system,
    peripheral_word,
    reduce_word,
    verify_entry,
    verify_puncture_skein,
)
from skeinlab.surface import NOTCHED, PLAIN, SurfaceSpec

CATALOGUE = load_catalogue()
LOOP_REFS = sorted(
    {
        (e.surface.g, e.surface.p, r.path, str(r.word))
        for e in CATALOGUE
        if e.kind != "framing"
        for v in e.refs.values()
        for r in (v if isinstance(v, list) else [v])
        if isinstance(r, LoopRef)
    }
)


def torus():
    return model_for(1, 1)


def lp(text, n=3, p=0):
    return parse_laurent(text, default_names(n + p, p))


def test_nu_arc_examples():
    m = torus()
    assert m.nu_arc((), 1).value == lp("A2")
    assert m.nu_arc((0,), 0).value == lp("A1^-1*A2^2 + A1^-1*A3^2")


def test_torus_loop_matches_kauffman_oracle():
    m = torus()
    x, y, w = annulus_cores(m.s0.triangulation)[0]
    loop = m.nu_loop(w)
    assert loop.value == lp("A1*A2^-1 + A1^-1*A2 + A1^-1*A2^-1*A3^2")
    oracle = m.kauffman_oracle(m.nu_arc((), x), m.nu_arc((), y), m.nu_arc((y,), y))
    assert oracle == loop
    assert is_positive(loop.value)


def test_framing_values():
    m = torus()
    T = m.s0.triangulation
    assert m.nu_loop(LoopWord(())).value == LaurentPoly.constant(3, -2)
    assert m.nu_loop(peripheral_word(T, 0)).value == LaurentPoly.constant(3, 2)
    slots = T.ideal.slots(0)
    from skeinlab.skein import word_from_cycle

    back = word_from_cycle(T, [slots[0], slots[1]])
    assert not back.is_reduced()
    with pytest.raises(WordError):
        m.nu_loop(back)
    assert reduce_word(T, back) == LoopWord(())


def test_word_parsing():
    w = LoopWord.parse("[(1,R),(2,L)]")
    assert w.crossings == ((0, "R"), (1, "L"))
    assert str(w) == "[(1,R),(2,L)]"
    for bad in ["(1,R)", "[(1,X)]", "[(0,R)]", "[(1,R) junk]"]:
        with pytest.raises(WordError):
            LoopWord.parse(bad)


def test_inconsistent_word_rejected():
    with pytest.raises(WordError):
        torus().nu_loop(LoopWord(((0, "R"), (0, "L"))))


@pytest.mark.parametrize("g,p,path,word", LOOP_REFS)
def test_trace_contract(g, p, path, word):
    m = model_for(g, p)
    s = m.seed(path)
    w = LoopWord.parse(word)
    base = m.nu_loop(w, s)
    assert is_positive(base.value)
    for r in range(len(w.crossings)):
        assert m.nu_loop(w.rotate(r), s) == base
    for i in range(len(w.crossings)):
        for turn in "LR":
            w2 = insert_backtrack(s.triangulation, w, i, turn)
            assert not w2.is_reduced()
            assert m.nu_loop(reduce_word(s.triangulation, w2), s) == base
    two = m.bracelet(w, 2, s)
    assert two == base * base + SkeinElement(LaurentPoly.constant(m.n, -2))
    assert m.bracelet(w, 1, s) == base


def test_bracelet_positive_in_charts():
    m = torus()
    _, _, w = annulus_cores(m.s0.triangulation)[0]
    graph = explore(m.s0, 4)
    from skeinlab.cluster import chart_transport

    for k in range(1, 5):
        br = RationalFunc(m.bracelet(w, k).value)
        for expr in chart_transport(graph, br).values():
            assert is_positive(expr)


def test_notched_relation_torus():
    m = torus()
    v = m.potential(0)
    for j in range(3):
        assert m.notched_relation((), j, (PLAIN, PLAIN)).value == m.nu_arc((), j).extend(1).value
        pure = m.notched_relation((), j, (NOTCHED, NOTCHED), pure=True)
        assert pure == v**2 * RationalFunc.variable(3, j)
        assert pure == weyl(m.s0, 0)[j]


def test_notched_relation_matches_flip_search():
    m = model_for(1, 2)
    graph = explore(m.s0, 3)
    sig = [weyl(m.s0, q) for q in range(2)]
    found = 0
    for s in graph.nodes.values():
        for i, x in enumerate(s.vars):
            arc = s.triangulation.tagged_arc(i)
            if arc.tags.count(NOTCHED) != 1:
                continue
            q = arc.ends[arc.tags.index(NOTCHED)]
            if arc.ends.count(q) != 1:
                continue
            plain = substitute(x, sig[q])
            assert x == m.potential(q) * plain
            found += 1
    assert found > 0


def test_ry_adjoin():
    m = model_for(1, 2)
    a1 = RationalFunc.variable(m.n, 0)
    assert m.ry_adjoin(a1).value == SkeinElement(lp("A1", 6)).extend(2).value
    e = m.ry_adjoin(m.potential(0) * a1)
    assert e.value == lp("V1*A1", 6, 2)
    assert m.substitute_potentials(e) == m.potential(0) * a1
    inv = m.ry_adjoin(m.potential(0).inverse())
    assert inv.value == lp("V1^-1", 6, 2)
    assert as_laurent(m.substitute_potentials(inv)) is None


def test_nu_system():
    m = model_for(0, 4)
    assert nu_system(m, TaggedCurveSystem((), (), "empty")).value == LaurentPoly.one(6)
    one = nu_system(m, TaggedCurveSystem((ArcRef((), 2),), (), "single"))
    assert one == m.nu_arc((), 2)
    with pytest.raises(CertificateError):
        nu_system(m, TaggedCurveSystem((ArcRef((), 2),), ()))
    w = LoopWord(((0, "L"), (1, "R")))
    with pytest.raises(ValueError):
        TaggedCurveSystem((), (LoopRef((), w), LoopRef((), w)), "parallel")


def test_catalogue_coverage():
    kinds = {}
    for e in CATALOGUE:
        kinds.setdefault((e.kind, e.surface.g, e.surface.p), []).append(e)
    assert len(kinds[("kauffman-once", 1, 1)]) >= 3
    assert len(kinds[("kauffman-once", 1, 2)]) >= 2
    assert len(kinds[("kauffman-once", 0, 4)]) >= 2
    assert kinds[("puncture-skein", 1, 2)] and kinds[("digon", 1, 2)]
    assert kinds[("disjoint-union", 0, 4)]
    cuts = json.load(open(catalogue_path()))["cuts"]
    assert len(cuts) >= 3


@pytest.mark.parametrize("entry", CATALOGUE, ids=lambda e: e.id)
def test_catalogue_entry_verifies(entry):
    if entry.kind == "framing":
        m = model_for(entry.surface.g, entry.surface.p)
        ref = entry.refs["loop"]
        s = m.seed(ref.path)
        val = m.nu_loop(reduce_word(s.triangulation, ref.word), s)
        assert val.value == LaurentPoly.constant(m.n, entry.expected)
    else:
        assert verify_entry(entry).ok


def test_puncture_skein_by_id_and_negative_control():
    ids = [e.id for e in CATALOGUE if e.kind == "puncture-skein"]
    assert ids and all(verify_puncture_skein(i, CATALOGUE) for i in ids)
    e = next(e for e in CATALOGUE if e.kind == "puncture-skein")
    wrong = CatalogueEntry("wrong", e.surface, e.kind, dict(e.refs, res2=e.refs["res1"]))
    assert not verify_entry(wrong).ok


def test_miscatalogued_kauffman_detected():
    e = next(e for e in CATALOGUE if e.kind == "kauffman-once" and e.surface == SurfaceSpec(1, 1))
    bad = CatalogueEntry("bad", e.surface, e.kind, dict(e.refs, res2=e.refs["delta"]))
    res = verify_entry(bad)
    assert not res.ok
    with pytest.raises(MiscataloguedError):
        m = torus()
        m.kauffman_oracle(SkeinElement(lp("A1 + A2")), SkeinElement(lp("A1")), SkeinElement(lp("A3")))


def test_catalogue_env_override(tmp_path, monkeypatch):
    data = json.load(open(catalogue_path()))
    data["entries"] = data["entries"][:1]
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv("SKEINLAB_CATALOGUE", str(p))
    assert len(load_catalogue()) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3))
def test_peripheral_loops_are_two(q):
    m = model_for(0, 4)
    assert m.nu_loop(peripheral_word(m.s0.triangulation, q)).value == LaurentPoly.constant(6, 2)
