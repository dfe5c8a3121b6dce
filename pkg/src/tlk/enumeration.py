"""Small frames up to isomorphism, via canonical adjacency codes."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .frames import CLOSED, NONE, Frame, FrameError, _bits, is_rooted, metrics

MAX_ENUM = 5
MAX_PLAIN = 3


def _invariants(F, root=None):
    return [
        (
            0 if root is None or i != root else -1,
            bin(F.succ[i]).count("1"),
            bin(F.pred[i]).count("1"),
            F.succ[i] >> i & 1,
        )
        for i in range(len(F))
    ]


def canonical_form(F, root=None):
    """Least relabelled adjacency code over invariant-respecting orders.

    Returns (code, order) where ``order[k]`` is the original index placed at
    position k.  Two frames (optionally pointed) are isomorphic iff their
    codes agree.
    """
    n = len(F)
    ri = None if root is None else F.index(root)
    inv = _invariants(F, ri)
    classes = {}
    for i in range(n):
        classes.setdefault(inv[i], []).append(i)
    keys = sorted(classes)
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        order = [i for block in choice for i in block]
        pos = [0] * n
        for k, i in enumerate(order):
            pos[i] = k
        code = []
        for i in order:
            m = 0
            for j in _bits(F.succ[i]):
                m |= 1 << pos[j]
            code.append(m)
        code = (tuple(keys), tuple(len(classes[k]) for k in keys), tuple(code))
        if best is None or code < best[0]:
            best = (code, order)
    return best


def canonical_key(F, root=None):
    return canonical_form(F, root)[0]


def canonical_frame(F):
    _, order = canonical_form(F)
    pos = {i: k for k, i in enumerate(order)}
    succ = []
    for i in order:
        m = 0
        for j in _bits(F.succ[i]):
            m |= 1 << pos[j]
        succ.append(m)
    return Frame([str(k) for k in range(len(F))], succ, F.closure)


def _extensions(F):
    """All closed frames obtained by adding one point to the closed frame F."""
    n = len(F)
    full = (1 << n) - 1
    for down in range(full + 1):
        # what the new point sees must be closed under R
        if any(F.succ[i] & ~down for i in _bits(down)):
            continue
        for up in range(full + 1):
            if any(F.pred[i] & ~up for i in _bits(up)):
                continue
            if any(F.succ[u] & down != down for u in _bits(up)):
                continue
            z = 1 << n
            succ = [s | (z if up >> i & 1 else 0) for i, s in enumerate(F.succ)]
            succ.append(down | z)
            yield Frame([str(k) for k in range(n + 1)], succ, CLOSED)


def _closed_levels(max_points):
    level = {canonical_key(_point(True)): canonical_frame(_point(True))}
    yield 1, level
    for size in range(2, max_points + 1):
        nxt = {}
        for F in level.values():
            for G in _extensions(F):
                key = canonical_key(G)
                if key not in nxt:
                    nxt[key] = canonical_frame(G)
        level = nxt
        yield size, level


def _point(reflexive):
    return Frame(["0"], [1 if reflexive else 0], CLOSED if reflexive else NONE)


def _plain_levels(max_points):
    for size in range(1, max_points + 1):
        seen = {}
        pairs = [(i, j) for i in range(size) for j in range(size)]
        for bits in range(1 << len(pairs)):
            succ = [0] * size
            for k, (i, j) in enumerate(pairs):
                if bits >> k & 1:
                    succ[i] |= 1 << j
            F = Frame([str(i) for i in range(size)], succ, NONE)
            key = canonical_key(F)
            if key not in seen:
                seen[key] = canonical_frame(F)
        yield size, seen


@dataclass
class EnumSpec:
    max_points: int
    bounds: dict = field(default_factory=dict)  # keys dep, widF, widB, zdg, gir
    rooted_only: bool = False
    closure: str = CLOSED

    def __post_init__(self):
        for k, v in self.bounds.items():
            if k not in ("dep", "widF", "widB", "zdg", "gir"):
                raise ValueError(f"unknown bound {k!r}")
            if v < 0:
                raise ValueError(f"bound {k} must be non-negative")
        cap = MAX_ENUM if self.closure == CLOSED else MAX_PLAIN
        if self.max_points > cap:
            raise FrameError(f"enumeration is capped at {cap} points")
        if self.max_points < 1:
            raise ValueError("max_points must be positive")


def _keep(F, spec):
    if spec.rooted_only and not is_rooted(F):
        return False
    if not spec.bounds:
        return True
    if spec.closure != CLOSED:
        raise FrameError("metric bounds need closed frames")
    m = metrics(F)
    return all(getattr(m, k) <= v for k, v in spec.bounds.items())


def enumerate_frames(spec):
    """Frames up to isomorphism, by size and then canonical code."""
    levels = _closed_levels if spec.closure == CLOSED else _plain_levels
    for _, level in levels(spec.max_points):
        for key in sorted(level):
            F = level[key]
            if _keep(F, spec):
                yield F


def closed_frames(max_points=MAX_ENUM, **kw):
    return list(enumerate_frames(EnumSpec(max_points, **kw)))


def random_frame(rng, max_points=4, density=0.35):
    """A seeded random closed frame with 1..max_points points."""
    from .frames import build_frame

    n = rng.randint(1, max_points)
    pts = [str(i) for i in range(n)]
    edges = [(a, b) for a in pts for b in pts if a != b and rng.random() < density]
    return build_frame(pts, edges)
