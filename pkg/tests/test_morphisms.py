import random

import pytest
from hypothesis import given, settings

import oracles
from strategies import closed_frames
from tlk import formulas as fm
from tlk.catalog import (
    chain,
    co_garland,
    figure_irreducible,
    figure_reducible,
    garland,
    hoop,
    named_frames,
)
from tlk.frames import FrameError, disjoint_union, generated_subframe, induced_subframe, metrics
from tlk.morphisms import (
    PartialMorphism,
    Violation,
    check_k_t_morphism,
    check_tmorphism,
    enumerate_images,
    find_k_t_morphism,
    find_tmorphism_onto,
    is_full,
    is_sufficient,
    is_tmorphism,
    isomorphic,
)
from tlk.semantics import valid_at

REFLECT = {"0": "0", "1": "1", "2": "2", "3": "1", "4": "0"}


def test_check_examples():
    assert check_tmorphism(garland(4), garland(2), REFLECT) is None
    F = figure_reducible()
    assert check_tmorphism(F, F, {p: p for p in F.points}) is None
    collapse = {"r": "r", "c": "c", "c'": "c'", "x1": "x", "x2": "x"}
    assert check_tmorphism(F, figure_irreducible(), collapse) is None


def test_check_reports_first_violation():
    bad = {"0": "0", "1": "1", "2": "0"}
    assert check_tmorphism(garland(2), garland(2), bad) == Violation("1", "forth")
    v = check_tmorphism(chain(2), chain(2), {"0": "0", "1": "0"})
    assert v == Violation("0", "back")
    with pytest.raises(FrameError):
        check_tmorphism(chain(2), chain(2), {"0": "0"})


def test_onto_examples():
    f = find_tmorphism_onto(garland(4), garland(2))
    assert f is not None and is_tmorphism(garland(4), garland(2), f)
    assert find_tmorphism_onto(garland(3), garland(2)) is None
    H = hoop(3)
    assert find_tmorphism_onto(H, H) is not None


@settings(max_examples=40)
@given(closed_frames(max_points=4), closed_frames(max_points=3))
def test_onto_matches_exhaustive(F, G):
    f = find_tmorphism_onto(F, G)
    assert (f is not None) == oracles.onto_exists(F, G)
    if f is not None:
        assert oracles.is_tmorphism(F, G, f) and set(f.values()) == set(G.points)


@given(closed_frames(max_points=4), closed_frames(max_points=4))
def test_isomorphism_matches_permutations(F, G):
    f = isomorphic(F, G)
    assert (f is not None) == oracles.iso_exists(F, G)
    if f is not None:
        assert {(f[a], f[b]) for a, b in F.edges()} == set(G.edges())


def test_isomorphism_examples():
    assert isomorphic(garland(1), co_garland(1)) is not None
    assert isomorphic(garland(2), co_garland(2)) is None
    assert isomorphic(hoop(3), garland(3)) is None


def test_images_examples():
    assert len(enumerate_images(chain(1))) == 1
    imgs = [G for G, _ in enumerate_images(chain(2))]
    assert len(imgs) == 2
    assert any(isomorphic(G, chain(1)) for G in imgs)
    sizes = sorted(len(G) for G, _ in enumerate_images(figure_irreducible()))
    assert sizes == [1, 2, 3, 4]
    with pytest.raises(FrameError):
        enumerate_images(garland(12))


@settings(max_examples=30)
@given(closed_frames(max_points=4))
def test_images_are_exactly_the_surjective_targets(F):
    imgs = enumerate_images(F)
    for G, q in imgs:
        assert is_tmorphism(F, G, q)
    for i, (A, _) in enumerate(imgs):
        for B, _ in imgs[i + 1:]:
            assert isomorphic(A, B) is None
    for G in named_frames().values():
        if len(G) <= len(F):
            hit = find_tmorphism_onto(F, G) is not None
            assert hit == any(isomorphic(G, A) is not None for A, _ in imgs)


def test_k_t_examples():
    f = find_k_t_morphism(chain(2), "1", chain(1), "0", 1)
    assert f is not None and f.mapping == {"1": "0", "0": "0"}
    assert find_k_t_morphism(chain(1), "0", chain(2), "1", 1) is None
    G = garland(3)
    for k in (1, 2, 3):
        f = find_k_t_morphism(G, "1", G, "1", k)
        assert f is not None
        assert check_k_t_morphism(G, "1", G, "1", k, f.mapping)
    with pytest.raises(ValueError):
        find_k_t_morphism(G, "1", G, "1", 0)


@settings(max_examples=40)
@given(closed_frames(max_points=3), closed_frames(max_points=3))
def test_k_t_matches_exhaustive(F, G):
    for x in F.points:
        for y in G.points:
            for k in (1, 2):
                f = find_k_t_morphism(F, x, G, y, k)
                assert (f is not None) == oracles.k_t_morphism_exists(F, x, G, y, k)
                if f is not None:
                    assert set(f.mapping) == set(F.names(F.ball_mask(F.index(x), k)))
                    assert check_k_t_morphism(F, x, G, y, k, f.mapping)


def test_local_to_global_when_ball_covers():
    # k-1 ball covering a rooted frame turns local morphisms into surjections
    seen = 0
    for F in (garland(2), garland(3), hoop(3), figure_reducible()):
        per = metrics(F).per_point
        for G in (chain(1), chain(2), garland(2), figure_irreducible()):
            for x in F.points:
                k = per[x]["zdg"] + 1
                for y in G.points:
                    if find_k_t_morphism(F, x, G, y, k) is not None:
                        seen += 1
                        assert find_tmorphism_onto(F, G) is not None
    assert seen > 0


def test_local_morphisms_transfer_truth():
    rng = random.Random(2)
    frames = list(named_frames().items())
    for _, F in frames[:6]:
        for _, G in frames[:6]:
            for x in F.points:
                for y in G.points:
                    f = find_k_t_morphism(F, x, G, y, 2)
                    if f is None:
                        continue
                    for _ in range(3):
                        phi = fm.random_formula(rng, nvars=1, max_md=2, max_depth=4)
                        if valid_at(F, x, phi):
                            assert valid_at(G, y, phi)


def test_sufficiency_examples():
    F = garland(2)
    total = PartialMorphism(F, F, {p: p for p in F.points}, "1", 2)
    assert is_sufficient(F, "1", 2, total, F.points)
    f = find_k_t_morphism(chain(2), "1", chain(1), "0", 1)
    f2 = find_k_t_morphism(chain(2), "1", chain(1), "0", 2)
    assert is_sufficient(chain(2), "1", 2, f2, ["0", "1"])
    assert is_full(f2) and is_full(f)
    with pytest.raises(ValueError):
        is_sufficient(chain(2), "1", 1, f, [])
    G3 = garland(3)
    g = find_k_t_morphism(G3, "0", G3, "0", 1)
    assert not is_sufficient(G3, "0", 1, g, ["0"])
    with pytest.raises(ValueError):
        is_sufficient(G3, "0", 1, g, ["2"])


def test_sufficient_implies_full():
    pts = list(named_frames().values())
    checked = 0
    for F in pts:
        for G in pts:
            for x in F.points:
                for y in G.points:
                    f = find_k_t_morphism(F, x, G, y, 2)
                    if f is None:
                        continue
                    inner = F.names(F.ball_mask(F.index(x), 1))
                    if is_sufficient(F, x, 2, f, inner):
                        checked += 1
                        assert is_full(f)
    assert checked > 0


def test_injective_tmorphism_is_iso_onto_image():
    U = disjoint_union([garland(2), chain(1)])
    left = [p for p in U.points if p.startswith("0:")]
    F = induced_subframe(U, left)
    inclusion = {p: p for p in F.points}
    # including a component is an injective, non-surjective t-morphism
    assert is_tmorphism(F, U, inclusion)
    assert isomorphic(F, induced_subframe(U, list(inclusion.values()))) is not None
    assert generated_subframe(U, left[0]) == F
