import pytest
from hypothesis import given, settings

import oracles
from strategies import closed_frames
from tlk import formulas as fm
from tlk.catalog import chain, garland, hoop, named_frames
from tlk.formulas import And, Dia, Imp, PDia, Var
from tlk.jankov import JankovSpec, jankov, jankov_refuted, refuted_semantically
from tlk.semantics import BudgetExceeded, Model, satisfies


def test_single_point_formula():
    p0 = Var(0)
    want = And(And(p0, fm.nabla(1, p0)), And(Imp(p0, Dia(p0)), Imp(p0, PDia(p0))))
    assert jankov(chain(1), "0", 1) is want


def test_enumeration_is_breadth_first():
    assert JankovSpec.of(hoop(3), "0", 2).enumeration == ("0", "1", "3", "2")
    assert JankovSpec.of(garland(3), "1", 1).enumeration == ("1", "0", "2")
    with pytest.raises(ValueError):
        JankovSpec.of(chain(1), "0", 0)


@pytest.mark.parametrize("name", sorted(named_frames()))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_shape(name, k):
    G = named_frames()[name]
    for y in G.points:
        n = len(G.names(G.ball_mask(G.index(y), k)))
        phi = jankov(G, y, k)
        assert fm.variables(phi) == list(range(n))
        assert fm.modal_degree(phi) == k


@pytest.mark.parametrize("name", ["c1", "c2", "c3", "G2", "G3", "H3"])
def test_canonical_valuation_satisfies(name):
    G = named_frames()[name]
    for y in G.points:
        for k in (1, 2):
            spec = JankovSpec.of(G, y, k)
            M = Model(G, {i: [p] for i, p in enumerate(spec.enumeration)})
            assert satisfies(M, y, jankov(G, y, k))


def test_examples():
    assert jankov_refuted(chain(2), "1", chain(1), "0", 1)
    assert not jankov_refuted(chain(1), "0", chain(2), "1", 1)
    for G in (garland(3), hoop(3)):
        for y in G.points:
            assert jankov_refuted(G, y, G, y, 2)


@settings(max_examples=25)
@given(closed_frames(max_points=3), closed_frames(max_points=3))
def test_refutation_iff_local_morphism(F, G):
    for x in F.points:
        for y in G.points:
            for k in (1, 2):
                sem = refuted_semantically(F, x, G, y, k, budget=9)
                assert sem == oracles.k_t_morphism_exists(F, x, G, y, k)


def test_budget_fallback():
    F, G = hoop(3), garland(3)
    with pytest.raises(BudgetExceeded):
        jankov_refuted(F, "0", G, "0", 4, budget=0, fallback=False)
    assert jankov_refuted(F, "0", G, "0", 1, budget=0) == jankov_refuted(F, "0", G, "0", 1, budget=30)
    assert not jankov_refuted(F, "0", G, "0", 4, budget=0)
