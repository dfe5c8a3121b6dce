"""Jankov formulas of degree k and their local-morphism reading."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import formulas as fm
from .frames import Frame, _bits
from .morphisms import find_k_t_morphism
from .semantics import BudgetExceeded, check_at


@dataclass(frozen=True)
class JankovSpec:
    frame: Frame
    root: str
    degree: int
    enumeration: tuple

    @classmethod
    def of(cls, G, y, k):
        if not isinstance(k, int) or k < 1:
            raise ValueError("Jankov formulas need a positive degree")
        yi = G.index(y)
        dist = {}
        for d, mask in enumerate(G.ball_masks(yi)[: k + 1]):
            for i in _bits(mask):
                dist.setdefault(i, d)
        order = sorted(dist, key=lambda i: (dist[i], i))
        return cls(G, G.points[yi], k, tuple(G.points[i] for i in order))


def jankov_formula(spec):
    G, k = spec.frame, spec.degree
    xs = spec.enumeration
    n = len(xs)
    p = [fm.Var(i) for i in range(n)]
    parts = [fm.And(p[0], fm.nabla(k, fm.disj(p)))]
    for i in range(n):
        for j in range(n):
            if i != j:
                parts.append(fm.nabla(k, fm.Imp(p[i], fm.Not(p[j]))))
    for i in range(n):
        for j in range(n):
            if G.related(xs[i], xs[j]):
                body = fm.And(fm.Imp(p[i], fm.Dia(p[j])), fm.Imp(p[j], fm.PDia(p[i])))
            else:
                body = fm.And(
                    fm.Imp(p[i], fm.Not(fm.Dia(p[j]))),
                    fm.Imp(p[j], fm.Not(fm.PDia(p[i]))),
                )
            parts.append(fm.nabla(k - 1, body))
    return fm.conj(parts)


@lru_cache(maxsize=512)
def jankov(G, y, k):
    return jankov_formula(JankovSpec.of(G, y, k))


def refuted_semantically(F, x, G, y, k, budget=None):
    """Whether F, x fails to validate the negated Jankov formula."""
    return not check_at(F, x, fm.Not(jankov(G, y, k)), budget).holds


def jankov_refuted(F, x, G, y, k, budget=None, fallback=True):
    """F, x refutes the negated Jankov formula of (G, y, k).

    Decided semantically; if the valuation budget is too small and
    ``fallback`` is set, decided through the local-morphism search instead.
    """
    try:
        return refuted_semantically(F, x, G, y, k, budget)
    except BudgetExceeded:
        if not fallback:
            raise
        return find_k_t_morphism(F, x, G, y, k) is not None
