"""Umbrella frames: blocks of 11 or 13 points chained along a bit sequence."""
from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from .frames import Frame, FrameError, build_frame, induced_subframe, is_rooted, is_skeleton, metrics
from .semantics import BudgetExceeded, valid_at
from .sequences import BitSeq


def block_roles(kind):
    """Point roles of one block and its generating edges."""
    top = 3 if kind == 0 else 4  # number of a-pairs
    roles = [f"a{r}" for r in range(2 * top)] + ["b0", "b1", "c0", "c1", "c2"]
    gens = [(f"a{2 * i}", f"a{2 * i + 1}") for i in range(top)]
    gens += [(f"a{2 * i + 2}", f"a{2 * i + 1}") for i in range(top - 1)]
    gens += [("b0", "b1"), ("b0", "a1"), ("c0", "c1"), ("c2", "c1"), ("c0", "a3")]
    return roles, gens


def terminal(kind):
    return "a5" if kind == 0 else "a7"


@dataclass(frozen=True)
class UmbrellaFrame:
    frame: Frame
    alpha: BitSeq | None
    block_index: dict
    block_type: dict
    role: dict

    def points_of(self, i, j=None):
        j = i if j is None else j
        return [p for p in self.frame.points if i <= self.block_index[p] <= j]


def _name(role, i):
    return f"{role}.{i}"


def umbrella(alpha):
    if isinstance(alpha, str):
        alpha = BitSeq.parse(alpha)
    if not len(alpha):
        raise ValueError("umbrellas need a nonempty sequence")
    points, edges = [], []
    bidx, btype, role = {}, {}, {}
    for i, kind in alpha.items():
        roles, gens = block_roles(kind)
        btype[i] = kind
        for r in roles:
            p = _name(r, i)
            points.append(p)
            bidx[p] = i
            role[p] = r
        edges += [(_name(a, i), _name(b, i)) for a, b in gens]
        if i > alpha.anchor:
            edges.append((_name("a0", i), _name(terminal(btype[i - 1]), i - 1)))
    F = build_frame(points, edges)
    return UmbrellaFrame(F, alpha, bidx, btype, role)


def cross_edges(Z):
    F = Z.frame
    return [
        (a, b)
        for a, b in F.edges()
        if Z.block_index[a] != Z.block_index[b]
    ]


def block_interval_subframe(Z, i, j):
    lo, hi = min(Z.block_type), max(Z.block_type)
    if i > j or i < lo or j > hi:
        raise FrameError(f"block interval [{i}, {j}] outside [{lo}, {hi}]")
    return induced_subframe(Z.frame, Z.points_of(i, j))


CELL = (("bd", 2), ("bw+", 2), ("bw-", 3))


def umbrella_check(Z, semantic=True, budget=None):
    """Structural and semantic well-formedness report for an umbrella."""
    F = Z.frame if isinstance(Z, UmbrellaFrame) else Z
    m = metrics(F)
    checks = {
        "rooted": is_rooted(F),
        "antisymmetric": is_skeleton(F),
        "dep<=2": m.dep <= 2,
        "widF<=2": m.widF <= 2,
        "widB<=3": m.widB <= 3,
    }
    report = {
        "checks": checks,
        "metrics": {"dep": m.dep, "widF": m.widF, "widB": m.widB, "zdg": m.zdg, "gir": m.gir},
    }
    if semantic:
        sem = {}
        for name, n in CELL:
            phi = fm.schema(name, n)
            try:
                sem[f"{name}{n}"] = all(valid_at(F, x, phi, budget) for x in F.points)
            except BudgetExceeded:
                sem[f"{name}{n}"] = None
        report["semantic"] = sem
        checks.update({k: v for k, v in sem.items() if v is not None})
    report["ok"] = all(checks.values())
    return report
