"""Concrete frame families, pre-skeletons and the classification procedures."""
from __future__ import annotations

from dataclasses import dataclass, field

from .frames import (
    Frame,
    FrameError,
    build_frame,
    clusters,
    inverse,
    is_rooted,
    is_skeleton,
    metrics,
    skeleton,
)
from .morphisms import enumerate_images, find_tmorphism_onto, isomorphic

OMEGA = "omega"
CT_TYPES = ("o", "+", "-", "+-")
_CT_BASE = {"o": (1, "0"), "+": (2, "1"), "-": (2, "0"), "+-": (3, "1")}
# (|strict successors|, |strict predecessors|) of the proper cluster
CT_FINGERPRINT = {"o": (0, 0), "+": (1, 0), "-": (0, 1), "+-": (1, 1)}


def chain(n):
    """The n-chain (n, >=): point i sees every j <= i."""
    if n < 1:
        raise FrameError("chains need at least one point")
    pts = [str(i) for i in range(n)]
    return build_frame(pts, [(str(i), str(i - 1)) for i in range(1, n)])


def garland_window(i, j):
    """The zigzag line on the integers restricted to [i, j]: odd points see both neighbours."""
    if j < i:
        raise FrameError("empty garland window")
    pts = list(range(i, j + 1))
    edges = []
    for a in pts:
        if a % 2:
            edges += [(a, b) for b in (a - 1, a + 1) if i <= b <= j]
    return build_frame(pts, edges)


def garland(n):
    if n < 0:
        raise FrameError("garland index must be non-negative")
    return garland_window(0, n)


def co_garland(n):
    return inverse(garland(n))


def hoop(n):
    if n < 1 or n % 2 == 0:
        raise FrameError(f"hoops need an odd index, got {n}")
    G = garland(n)
    return build_frame(G.points, G.edges() + [(str(n), "0")])


def figure_reducible():
    """Root r seeing a two-point cluster {c, c'} and two further tops x1, x2."""
    return build_frame(
        ["r", "c", "c'", "x1", "x2"],
        [("r", "c"), ("c", "c'"), ("c'", "c"), ("r", "x1"), ("r", "x2")],
    )


def figure_irreducible():
    """Root r seeing a two-point cluster {c, c'} and one further top x."""
    return build_frame(
        ["r", "c", "c'", "x"],
        [("r", "c"), ("c", "c'"), ("c'", "c"), ("r", "x")],
    )


def _fresh(F, base, k):
    name = f"{base}_{k}"
    while name in F._index:
        name += "'"
    return name


def preskeleton(F, x, lam):
    """Replace x by a (1 + lam)-cluster inheriting all of x's edges."""
    if not is_skeleton(F):
        raise FrameError("pre-skeletons are built from skeletons (every cluster a singleton)")
    if lam == OMEGA:
        raise FrameError("omega pre-skeletons are not materialised; use semantics.omega_valid")
    if not isinstance(lam, int) or lam < 1:
        raise FrameError("cluster fattening needs lambda >= 1")
    xi = F.index(x)
    new = [_fresh(F, x, k) for k in range(1, lam + 1)]
    points = list(F.points[: xi + 1]) + new + list(F.points[xi + 1 :])
    pos = {p: k for k, p in enumerate(points)}
    cluster = [x] + new
    edges = list(F.edges())
    out = F.names(F.succ[xi])
    inn = F.names(F.pred[xi])
    for c in new:
        edges += [(c, y) for y in out] + [(y, c) for y in inn]
    edges += [(a, b) for a in cluster for b in cluster]
    edges.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
    return build_frame(points, edges)


@dataclass(frozen=True)
class PreSkeleton:
    skeleton: Frame
    marked: str
    lam: object  # int or OMEGA

    def materialise(self):
        return preskeleton(self.skeleton, self.marked, self.lam)


def recognize_preskeleton(F):
    if not F.is_closed:
        raise FrameError("recognition needs a reflexive-transitive frame")
    part = clusters(F)
    proper = [b for b in part.blocks if len(b) > 1]
    if len(proper) != 1:
        return None
    S, _ = skeleton(F)
    block = proper[0]
    return PreSkeleton(S, block[0], len(block) - 1)


def make(kind, *params):
    """Build a catalog frame by tag, e.g. make("garland", 3) or make("Ct", "+", 2)."""
    if kind == "chain":
        return chain(*params)
    if kind == "cluster":
        (lam,) = params
        return preskeleton(chain(1), "0", lam)
    if kind == "Ct":
        t, lam = params
        if t not in _CT_BASE:
            raise FrameError(f"unknown C-type {t!r}; expected one of {CT_TYPES}")
        n, x = _CT_BASE[t]
        return preskeleton(chain(n), x, lam)
    if kind == "garland":
        return garland(*params)
    if kind in ("co_garland", "cogarland"):
        return co_garland(*params)
    if kind == "hoop":
        return hoop(*params)
    if kind in ("garland_window", "window"):
        return garland_window(*params)
    if kind == "F1":
        return figure_reducible()
    if kind == "F2":
        return figure_irreducible()
    raise FrameError(f"unknown catalog kind {kind!r}")


KINDS = ("chain", "cluster", "Ct", "garland", "co_garland", "hoop", "garland_window", "F1", "F2")


# c-irreducibility


@dataclass
class Irreducibility:
    answer: bool
    witness: Frame | None
    offending: list = field(default_factory=list)
    images: int = 0


def _require_rooted_skeleton(F):
    if not is_skeleton(F):
        raise FrameError("expected a skeleton (reflexive, transitive, antisymmetric)")
    if not is_rooted(F):
        raise FrameError("expected a rooted frame")


def is_c_irreducible(F, x):
    """Decide c-irreducibility of the pre-skeleton F^x_1 (hence of F^x_omega)."""
    _require_rooted_skeleton(F)
    P = preskeleton(F, x, 1)
    imgs = enumerate_images(P)
    bad = []
    for I, _ in imgs:
        if isomorphic(I, P) is not None:
            continue
        if find_tmorphism_onto(F, I) is not None:
            continue
        bad.append(I)
    return Irreducibility(not bad, bad[0] if bad else None, bad, len(imgs))


def pretabularity_report(F, x):
    rooted = is_rooted(F)
    skel = is_skeleton(F)
    report = {"rooted": rooted, "skeleton": skel}
    if skel:
        m = metrics(F)
        report["bounds"] = {"dep": m.dep, "widF": m.widF, "widB": m.widB, "zdg": m.zdg}
    if not (rooted and skel):
        report["c_irreducible"] = None
        report["verdict"] = "not applicable"
        return report
    res = is_c_irreducible(F, x)
    report["c_irreducible"] = res.answer
    report["images"] = res.images
    if res.answer:
        report["verdict"] = "pretabular within bounded-parameter ambient"
    else:
        report["verdict"] = "not pretabular (c-reducible)"
        report["witness"] = res.witness
    return report


# classifiers


@dataclass(frozen=True)
class Classification:
    family: str | None  # "garland", "co_garland", "hoop", "chain", "Ct" or None
    param: object = None
    reason: str | None = None
    matches: tuple = ()

    @property
    def applicable(self):
        return self.family is not None

    def __str__(self):
        if self.family is None:
            return f"NotApplicable({self.reason})"
        return f"{self.family} {self.param}"


def _bound_violation(F, bounds):
    if not is_rooted(F):
        return "not rooted"
    if not is_skeleton(F):
        gir = max(bin(c).count("1") for c in F.cluster_masks)
        return f"gir {gir} > 1"
    m = metrics(F)
    for key, lim in bounds:
        val = getattr(m, key)
        if val > lim:
            return f"{key} {val} > {lim}"
    return None


def classify_bs222(F):
    if not F.is_closed:
        raise FrameError("classification needs a reflexive-transitive frame")
    why = _bound_violation(F, (("dep", 2), ("widF", 2), ("widB", 2)))
    if why:
        return Classification(None, reason=why)
    n = len(F) - 1
    cands = [("garland", garland(n)), ("co_garland", co_garland(n))]
    if n % 2:
        cands.append(("hoop", hoop(n)))
    matches = tuple(name for name, G in cands if isomorphic(F, G) is not None)
    if not matches:
        return Classification(None, reason="no garland, co-garland or hoop matches")
    return Classification(matches[0], n, matches=matches)


def fingerprint(F, x):
    """Numbers of strict successors and strict predecessors of x's cluster."""
    i = F.index(x)
    c = F.cluster_masks[i]
    return bin(F.succ[i] & ~c).count("1"), bin(F.pred[i] & ~c).count("1")


def classify_s43(F):
    if not F.is_closed:
        raise FrameError("classification needs a reflexive-transitive frame")
    if not is_rooted(F):
        return Classification(None, reason="not rooted")
    m = metrics(F)
    if m.widF > 1:
        return Classification(None, reason=f"widF {m.widF} > 1")
    if m.widB > 1:
        return Classification(None, reason=f"widB {m.widB} > 1")
    if is_skeleton(F):
        return Classification("chain", len(F))
    d = recognize_preskeleton(F)
    if d is None:
        return Classification(None, reason="more than one proper cluster")
    fp = fingerprint(F, d.marked)
    for t, want in CT_FINGERPRINT.items():
        if fp == want:
            return Classification("Ct", t)
    return Classification(None, reason=f"fingerprint {fp} outside {{0,1}}^2")


def named_frames():
    """The small named frames used across checks."""
    return {
        "c1": chain(1),
        "c2": chain(2),
        "c3": chain(3),
        "G2": garland(2),
        "G3": garland(3),
        "H3": hoop(3),
        "F1": figure_reducible(),
        "F2": figure_irreducible(),
    }
