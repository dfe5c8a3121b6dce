"""t-morphisms, isomorphisms, images and local (k-) t-morphisms."""
from __future__ import annotations

from dataclasses import dataclass, field

from .frames import Frame, FrameError, _bits

IMAGE_CAP = 12


def _img(f, mask):
    out = 0
    for i in _bits(mask):
        out |= 1 << f[i]
    return out


def _popcount(m):
    return bin(m).count("1")


@dataclass(frozen=True)
class Violation:
    point: str
    side: str  # "forth" or "back"


def check_tmorphism(F, G, mapping):
    """None when ``mapping`` is a t-morphism F -> G, else the first Violation."""
    missing = [p for p in F.points if p not in mapping]
    if missing:
        raise FrameError(f"map is not total: no image for {missing[0]!r}")
    f = [G.index(mapping[p]) for p in F.points]
    for i, p in enumerate(F.points):
        if _img(f, F.succ[i]) != G.succ[f[i]]:
            return Violation(p, "forth")
        if _img(f, F.pred[i]) != G.pred[f[i]]:
            return Violation(p, "back")
    return None


def is_tmorphism(F, G, mapping):
    return check_tmorphism(F, G, mapping) is None


def _degree_order(F):
    deg = [_popcount(F.succ[i] | F.pred[i]) for i in range(len(F))]
    return sorted(range(len(F)), key=lambda i: (-deg[i], i))


def find_tmorphism_onto(F, G):
    """Some surjective t-morphism F ->> G as a dict, or None (exhaustive)."""
    n, m = len(F), len(G)
    if n < m:
        return None
    order = _degree_order(F)
    f = [-1] * n
    cands = []
    for i in range(n):
        out_n, in_n = _popcount(F.succ[i]), _popcount(F.pred[i])
        refl = F.succ[i] >> i & 1
        cands.append([
            j for j in range(m)
            if _popcount(G.succ[j]) <= out_n
            and _popcount(G.pred[j]) <= in_n
            and (G.succ[j] >> j & 1) == refl
        ])
    assigned = 0

    def consistent(i):
        for z in _bits((F.succ[i] | F.pred[i] | 1 << i) & assigned):
            fz = f[z]
            s, p = F.succ[z], F.pred[z]
            im_s, im_p = _img(f, s & assigned), _img(f, p & assigned)
            if im_s & ~G.succ[fz] or im_p & ~G.pred[fz]:
                return False
            if s & ~assigned == 0 and im_s != G.succ[fz]:
                return False
            if p & ~assigned == 0 and im_p != G.pred[fz]:
                return False
        return True

    def search(k, covered):
        nonlocal assigned
        if k == n:
            return covered == G.full
        if n - k < m - _popcount(covered):
            return False
        i = order[k]
        for j in cands[i]:
            f[i] = j
            assigned |= 1 << i
            if consistent(i) and search(k + 1, covered | 1 << j):
                return True
            assigned &= ~(1 << i)
            f[i] = -1
        return False

    if search(0, 0):
        return {F.points[i]: G.points[f[i]] for i in range(n)}
    return None


# isomorphism

def _colours(frames, rounds=4):
    """Joint colour refinement so colours are comparable across frames."""
    cols = []
    for F in frames:
        cols.append([
            (_popcount(F.succ[i]), _popcount(F.pred[i]), F.succ[i] >> i & 1,
             _popcount(F.succ[i] & F.pred[i]))
            for i in range(len(F))
        ])
    for _ in range(rounds):
        table = {}
        new = []
        for F, c in zip(frames, cols):
            sig = [
                (c[i],
                 tuple(sorted(c[j] for j in _bits(F.succ[i]))),
                 tuple(sorted(c[j] for j in _bits(F.pred[i]))))
                for i in range(len(F))
            ]
            new.append([table.setdefault(s, len(table)) for s in sig])
        cols = new
    return cols


def isomorphic(F, G):
    """A relation-preserving bijection F -> G as a dict, or None."""
    n = len(F)
    if n != len(G) or sum(map(_popcount, F.succ)) != sum(map(_popcount, G.succ)):
        return None
    cf, cg = _colours([F, G])
    if sorted(cf) != sorted(cg):
        return None
    # connected-first order, rare colours first
    freq = {}
    for c in cf:
        freq[c] = freq.get(c, 0) + 1
    order, placed = [], 0
    adj = [F.succ[i] | F.pred[i] for i in range(n)]
    while len(order) < n:
        rest = [i for i in range(n) if not placed >> i & 1]
        i = min(rest, key=lambda i: (-_popcount(adj[i] & placed), freq[cf[i]], i))
        order.append(i)
        placed |= 1 << i
    f = [-1] * n
    used = 0
    done = 0

    def search(k):
        nonlocal used, done
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used >> j & 1 or cg[j] != cf[i]:
                continue
            ok = True
            for z in _bits(done):
                fz = f[z]
                if (F.succ[i] >> z & 1) != (G.succ[j] >> fz & 1) or (
                    F.succ[z] >> i & 1
                ) != (G.succ[fz] >> j & 1):
                    ok = False
                    break
            if not ok:
                continue
            f[i] = j
            used |= 1 << j
            done |= 1 << i
            if search(k + 1):
                return True
            used &= ~(1 << j)
            done &= ~(1 << i)
        return False

    if search(0):
        return {F.points[i]: G.points[f[i]] for i in range(n)}
    return None


# images through kernel partitions

def _partitions(n):
    block = [0] * n

    def rec(i, nblocks):
        if i == n:
            yield list(block), nblocks
            return
        for b in range(nblocks + 1):
            block[i] = b
            yield from rec(i + 1, max(nblocks, b + 1))

    if n:
        block[0] = 0
        yield from rec(1, 1)


def quotient(F, block):
    """Image frame of the partition ``block`` (list: point index -> block id)."""
    k = max(block) + 1
    reps = [None] * k
    for i, b in enumerate(block):
        if reps[b] is None:
            reps[b] = i
    succ = [0] * k
    for i, s in enumerate(F.succ):
        for j in _bits(s):
            succ[block[i]] |= 1 << block[j]
    return Frame([F.points[r] for r in reps], succ, F.closure)


def is_stable(F, block):
    """Whether the quotient map of ``block`` is a t-morphism."""
    seen = {}
    for i in range(len(F)):
        key = (_img(block, F.succ[i]), _img(block, F.pred[i]))
        b = block[i]
        if seen.setdefault(b, key) != key:
            return False
    return True


def enumerate_images(F, cap=IMAGE_CAP):
    """All t-morphic images of F up to isomorphism, with their quotient maps.

    Returned as a list of (image, map) pairs in partition order.
    """
    if len(F) > cap:
        raise FrameError(f"image enumeration is capped at {cap} points, frame has {len(F)}")
    found = []
    for block, _ in _partitions(len(F)):
        if not is_stable(F, block):
            continue
        Q = quotient(F, block)
        if any(isomorphic(Q, R) for R, _ in found):
            continue
        qmap = {F.points[i]: Q.points[block[i]] for i in range(len(F))}
        found.append((Q, qmap))
    return found


# local morphisms

@dataclass
class PartialMorphism:
    source: Frame
    target: Frame
    mapping: dict
    root: str | None = None
    k: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for a, b in self.mapping.items():
            self.source.index(a)
            self.target.index(b)

    @property
    def dom(self):
        return set(self.mapping)

    @property
    def ran(self):
        return set(self.mapping.values())

    def image(self, pts):
        return {self.mapping[p] for p in pts}


def _ball_order(F, x, k):
    """Points of the k-ball sorted by distance from x, then declared order."""
    dist = {}
    for d, mask in enumerate(F.ball_masks(x)[: k + 1]):
        for i in _bits(mask):
            dist.setdefault(i, d)
    return sorted(dist, key=lambda i: (dist[i], i))


def check_k_t_morphism(F, x, G, y, k, mapping):
    """Whether ``mapping`` is a k-t-morphism (F, x) -> (G, y)."""
    if k < 1:
        raise ValueError("k must be positive")
    xi = F.index(x)
    if mapping.get(x) != y:
        return False
    f = {F.index(a): G.index(b) for a, b in mapping.items()}
    if F.ball_mask(xi, k) & ~sum(1 << i for i in f):
        return False
    inner = F.ball_mask(xi, k - 1)
    for z in _bits(inner):
        if _img(f, F.succ[z]) != G.succ[f[z]] or _img(f, F.pred[z]) != G.pred[f[z]]:
            return False
    return True


def find_k_t_morphism(F, x, G, y, k):
    """A k-t-morphism (F, x) -> (G, y) defined exactly on the k-ball, or None."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    xi, yi = F.index(x), G.index(y)
    order = _ball_order(F, xi, k)
    inner = F.ball_mask(xi, k - 1)
    n, m = len(order), len(G)
    f = [-1] * len(F)
    assigned = 0

    def allowed(i, j):
        if inner >> i & 1:
            if _popcount(G.succ[j]) > _popcount(F.succ[i]):
                return False
            if _popcount(G.pred[j]) > _popcount(F.pred[i]):
                return False
        return True

    def consistent(i):
        for z in _bits((F.succ[i] | F.pred[i] | 1 << i) & assigned & inner):
            fz = f[z]
            s, p = F.succ[z], F.pred[z]
            im_s, im_p = _img(f, s & assigned), _img(f, p & assigned)
            if im_s & ~G.succ[fz] or im_p & ~G.pred[fz]:
                return False
            if s & ~assigned == 0 and im_s != G.succ[fz]:
                return False
            if p & ~assigned == 0 and im_p != G.pred[fz]:
                return False
        return True

    def search(t):
        nonlocal assigned
        if t == n:
            return True
        i = order[t]
        targets = [yi] if t == 0 else range(m)
        for j in targets:
            if not allowed(i, j):
                continue
            f[i] = j
            assigned |= 1 << i
            if consistent(i) and search(t + 1):
                return True
            assigned &= ~(1 << i)
            f[i] = -1
        return False

    if not search(0):
        return None
    mapping = {F.points[i]: G.points[f[i]] for i in order}
    return PartialMorphism(F, G, mapping, x, k)


def is_sufficient(F, x, k, f, Y):
    """Y is sufficient for f when f[R#[y]] is inside f[Y] for every y in Y."""
    Y = list(Y)
    if not Y:
        raise ValueError("sufficient sets are nonempty")
    inner = F.ball_mask(F.index(x), k - 1)
    outside = [p for p in Y if not inner >> F.index(p) & 1]
    if outside:
        raise ValueError(f"{outside[0]!r} lies outside the (k-1)-ball of {x!r}")
    fY = f.image(Y)
    for p in Y:
        near = F.names(F.ball_mask(F.index(p), 1))
        if not f.image(near) <= fY:
            return False
    return True


def is_full(f):
    """ran(f) covers the whole connected part of the target around f(root)."""
    G = f.target
    y = f.mapping[f.root]
    comp = set(G.names(G.ball_mask(G.index(y), "omega")))
    return comp <= f.ran
