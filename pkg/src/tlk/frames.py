"""Finite Kripke frames: relations as bitmasks over declared point order."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

MAX_POINTS = 64
CLOSED = "reflexive-transitive"
NONE = "none"
OMEGA = "omega"


class FrameError(ValueError):
    pass


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _close(n, succ):
    succ = [s | (1 << i) for i, s in enumerate(succ)]
    # Warshall on bitmasks
    for k in range(n):
        bk = 1 << k
        sk = succ[k]
        for i in range(n):
            if succ[i] & bk:
                succ[i] |= sk
    return succ


class Frame:
    """A finite frame (X, R).

    ``succ[i]`` is the bitmask of R[i]; ``pred[i]`` that of the converse.
    Instances are treated as immutable.
    """

    def __init__(self, points, succ, closure=CLOSED, root=None):
        self.points = tuple(points)
        self.succ = tuple(succ)
        n = len(self.points)
        pred = [0] * n
        for i, s in enumerate(self.succ):
            for j in _bits(s):
                pred[j] |= 1 << i
        self.pred = tuple(pred)
        self.closure = closure
        self.root = root
        self._index = {p: i for i, p in enumerate(self.points)}

    # basic access

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"Frame({list(self.points)}, edges={self.edges()})"

    def __eq__(self, other):
        return (
            isinstance(other, Frame)
            and self.points == other.points
            and self.succ == other.succ
        )

    def __hash__(self):
        return hash((self.points, self.succ))

    def index(self, p):
        try:
            return self._index[p]
        except KeyError:
            raise FrameError(f"unknown point {p!r}") from None

    def mask(self, pts):
        m = 0
        for p in pts:
            m |= 1 << self.index(p)
        return m

    def names(self, mask):
        return [self.points[i] for i in _bits(mask)]

    def edges(self):
        return [
            (self.points[i], self.points[j])
            for i, s in enumerate(self.succ)
            for j in _bits(s)
        ]

    def related(self, a, b):
        return bool(self.succ[self.index(a)] >> self.index(b) & 1)

    def successors(self, p):
        return self.names(self.succ[self.index(p)])

    def predecessors(self, p):
        return self.names(self.pred[self.index(p)])

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    @property
    def is_closed(self):
        n = len(self.points)
        return all(self.succ[i] >> i & 1 for i in range(n)) and all(
            _image(self.succ, s) == s for s in self.succ
        )

    # zigzag balls

    def ball_mask(self, i, n):
        ball = 1 << i
        steps = 0
        while n == OMEGA or steps < n:
            grown = ball | _image(self.succ, ball) | _image(self.pred, ball)
            if grown == ball:
                break
            ball = grown
            steps += 1
        return ball

    def ball_masks(self, i):
        """Successive distinct balls R#^0[i], R#^1[i], ... up to the fixpoint."""
        out = [1 << i]
        while True:
            b = out[-1]
            grown = b | _image(self.succ, b) | _image(self.pred, b)
            if grown == b:
                return out
            out.append(grown)

    @cached_property
    def cluster_masks(self):
        return tuple(s & p for s, p in zip(self.succ, self.pred))


def _image(rel, mask):
    out = 0
    for i in _bits(mask):
        out |= rel[i]
    return out


def build_frame(points, edges, closure=CLOSED, root=None):
    points = [str(p) for p in points]
    if len(set(points)) != len(points):
        seen = set()
        dup = next(p for p in points if p in seen or seen.add(p))
        raise FrameError(f"duplicate point id {dup!r}")
    if not points:
        raise FrameError("a frame needs at least one point")
    if len(points) > MAX_POINTS:
        raise FrameError(f"{len(points)} points exceeds the cap of {MAX_POINTS}")
    if closure not in (CLOSED, NONE):
        raise FrameError(f"unknown closure mode {closure!r}")
    index = {p: i for i, p in enumerate(points)}
    succ = [0] * len(points)
    for e in edges:
        a, b = (str(v) for v in e)
        for v in (a, b):
            if v not in index:
                raise FrameError(f"edge ({a!r}, {b!r}) uses undeclared point {v!r}")
        succ[index[a]] |= 1 << index[b]
    if closure == CLOSED:
        succ = _close(len(points), succ)
    if root is not None and str(root) not in index:
        raise FrameError(f"root {root!r} is not a declared point")
    return Frame(points, succ, closure, None if root is None else str(root))


def close(F):
    if F.closure == CLOSED and F.is_closed:
        return F
    return Frame(F.points, _close(len(F), F.succ), CLOSED, F.root)


# balls, clusters, skeleton


def zigzag_ball(F, x, n):
    if n != OMEGA and n < 0:
        raise FrameError("ball radius must be non-negative")
    return set(F.names(F.ball_mask(F.index(x), n)))


@dataclass(frozen=True)
class ClusterPartition:
    blocks: tuple
    index: dict

    def block_of(self, p):
        return self.blocks[self.index[p]]


def _require_closed(F):
    if not F.is_closed:
        raise FrameError("operation needs a reflexive-transitive frame")


def clusters(F):
    _require_closed(F)
    blocks, index = [], {}
    for i, p in enumerate(F.points):
        if p in index:
            continue
        block = tuple(F.names(F.cluster_masks[i]))
        for q in block:
            index[q] = len(blocks)
        blocks.append(block)
    return ClusterPartition(tuple(blocks), index)


def skeleton(F):
    """Quotient by clusters, named by each cluster's first declared point."""
    part = clusters(F)
    reps = [b[0] for b in part.blocks]
    qmap = {p: reps[part.index[p]] for p in F.points}
    edges = {(qmap[a], qmap[b]) for a, b in F.edges()}
    G = build_frame(reps, sorted(edges, key=lambda e: (reps.index(e[0]), reps.index(e[1]))))
    return G, qmap


def is_skeleton(F):
    return F.is_closed and all(c & (c - 1) == 0 for c in F.cluster_masks)


# metrics


def _max_antichain(F, mask):
    """Exact largest antichain inside ``mask`` (branch and bound)."""
    comp = [F.succ[i] | F.pred[i] for i in range(len(F))]
    best = 0

    def grow(cand, size):
        nonlocal best
        if size > best:
            best = size
        if size + bin(cand).count("1") <= best:
            return
        while cand:
            i = (cand & -cand).bit_length() - 1
            cand &= ~(1 << i)
            grow(cand & ~comp[i], size + 1)
            if size + bin(cand).count("1") <= best:
                return

    grow(mask, 0)
    return best


def depth_at(F, i, _memo=None):
    memo = {} if _memo is None else _memo

    def height(j):
        if j not in memo:
            strict = F.succ[j] & ~F.pred[j]
            memo[j] = 1 + max((height(k) for k in _bits(strict)), default=0)
        return memo[j]

    return height(i)


def zdg_at(F, i):
    return len(F.ball_masks(i)) - 1


@dataclass(frozen=True)
class FrameMetrics:
    per_point: dict
    dep: int
    widF: int
    widB: int
    zdg: int
    gir: int

    def as_dict(self):
        return {
            "dep": self.dep,
            "widF": self.widF,
            "widB": self.widB,
            "zdg": self.zdg,
            "gir": self.gir,
            "per_point": self.per_point,
        }


def metrics(F):
    _require_closed(F)
    memo = {}
    per = {}
    for i, p in enumerate(F.points):
        per[p] = {
            "dep": depth_at(F, i, memo),
            "widF": _max_antichain(F, F.succ[i]),
            "widB": _max_antichain(F, F.pred[i]),
            "zdg": zdg_at(F, i),
        }
    top = lambda k: max(v[k] for v in per.values())
    gir = max(bin(c).count("1") for c in F.cluster_masks)
    return FrameMetrics(per, top("dep"), top("widF"), top("widB"), top("zdg"), gir)


# subframes and constructions


def induced_subframe(F, Y):
    Y = list(Y)
    if not Y:
        raise FrameError("induced subframe needs a nonempty point set")
    keep = F.mask(Y)
    order = [i for i in range(len(F)) if keep >> i & 1]
    pos = {i: k for k, i in enumerate(order)}
    succ = []
    for i in order:
        m = 0
        for j in _bits(F.succ[i] & keep):
            m |= 1 << pos[j]
        succ.append(m)
    return Frame([F.points[i] for i in order], succ, F.closure)


def generated_subframe(F, x):
    return induced_subframe(F, zigzag_ball(F, x, OMEGA))


def is_rooted(F):
    return F.ball_mask(0, OMEGA) == F.full


def disjoint_union(frames):
    frames = list(frames)
    if not frames:
        raise FrameError("disjoint union of an empty list")
    points, succ, off = [], [], 0
    for k, F in enumerate(frames):
        points += [f"{k}:{p}" for p in F.points]
        succ += [s << off for s in F.succ]
        off += len(F)
    closure = CLOSED if all(F.closure == CLOSED for F in frames) else NONE
    if len(points) > MAX_POINTS:
        raise FrameError(f"{len(points)} points exceeds the cap of {MAX_POINTS}")
    return Frame(points, succ, closure)


def inverse(F):
    return Frame(F.points, F.pred, F.closure, F.root)


def relabel(F, names):
    """Rename points; ``names`` maps old id to new id."""
    new = [names.get(p, p) for p in F.points]
    if len(set(new)) != len(new):
        raise FrameError("relabelling is not injective")
    return Frame(new, F.succ, F.closure, names.get(F.root, F.root))


# I/O


def frame_to_dict(F):
    d = {"points": list(F.points), "edges": [list(e) for e in F.edges()], "closure": F.closure}
    if F.root is not None:
        d["root"] = F.root
    return d


def frame_from_dict(d):
    if not isinstance(d, dict) or "points" not in d:
        raise FrameError("frame JSON needs a 'points' list")
    edges = d.get("edges", [])
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise FrameError(f"malformed edge {e!r}")
    return build_frame(d["points"], edges, d.get("closure", CLOSED), d.get("root"))


def dumps(F):
    return json.dumps(frame_to_dict(F))


def loads(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FrameError(f"malformed frame JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return frame_from_dict(d)


def read_frame(path):
    with open(path) as fh:
        return loads(fh.read())


def write_frame(F, path):
    with open(path, "w") as fh:
        fh.write(json.dumps(frame_to_dict(F), indent=1))
        fh.write("\n")


def hasse_edges(F):
    """Non-loop edges with no intermediate point outside both endpoint clusters."""
    closed = F.is_closed
    cl = F.cluster_masks if closed else None
    out = []
    for i, s in enumerate(F.succ):
        for j in _bits(s & ~(1 << i)):
            # without transitivity every edge is essential
            if not closed or not F.succ[i] & F.pred[j] & ~cl[i] & ~cl[j]:
                out.append((F.points[i], F.points[j]))
    return out


def to_dot(F, name="F"):
    """DOT text of the transitive reduction; reflexive loops are left implicit."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for p in F.points:
        lines.append(f'  "{p}";')
    for a, b in hasse_edges(F):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
