"""Naive reference implementations, written straight from the definitions.

Frames here are (points, edges) with edges a set of pairs; nothing is shared
with the bitmask code under test.
"""
from itertools import combinations, permutations, product

from tlk.formulas import AND, BOT, BOX, IMP, NOT, OR, PBOX, PDIA, TOP, VAR, DIA


def plain(F):
    return list(F.points), set(F.edges())


def closure(points, edges):
    rel = {(a, a) for a in points} | set(edges)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def truth(points, edges, val, phi):
    """Set of points where phi holds; val maps variable index to a set."""
    op, args = phi.op, phi.args
    if op == VAR:
        return set(val[args[0]])
    if op == BOT:
        return set()
    if op == TOP:
        return set(points)
    if op == NOT:
        return set(points) - truth(points, edges, val, args[0])
    if op in (AND, OR, IMP):
        a = truth(points, edges, val, args[0])
        b = truth(points, edges, val, args[1])
        if op == AND:
            return a & b
        if op == OR:
            return a | b
        return (set(points) - a) | b
    inner = truth(points, edges, val, args[0])
    if op == BOX:
        return {x for x in points if all(y in inner for (u, y) in edges if u == x)}
    if op == DIA:
        return {x for x in points if any(y in inner for (u, y) in edges if u == x)}
    if op == PBOX:
        return {x for x in points if all(y in inner for (y, u) in edges if u == x)}
    if op == PDIA:
        return {x for x in points if any(y in inner for (y, u) in edges if u == x)}
    raise ValueError(op)


def _subsets(points):
    for r in range(len(points) + 1):
        yield from combinations(points, r)


def valid_at(F, x, phi, variables):
    points, edges = plain(F)
    for choice in product(list(_subsets(points)), repeat=len(variables)):
        val = dict(zip(variables, map(set, choice)))
        if x not in truth(points, edges, val, phi):
            return False
    return True


def ball(F, x, n):
    points, edges = plain(F)
    seen = {x}
    frontier = {x}
    steps = 0
    while n == "omega" or steps < n:
        nxt = {b for a, b in edges if a in frontier} | {a for a, b in edges if b in frontier}
        nxt -= seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
        steps += 1
    return seen


def zdg(F, x):
    n = 0
    while ball(F, x, n) != ball(F, x, n + 1):
        n += 1
    return n


def strict(edges):
    return {(a, b) for a, b in edges if (b, a) not in edges}


def depth(F, x):
    """Number of points on the longest strict chain starting at x."""
    _, edges = plain(F)
    st = strict(edges)
    best = 1
    for a, b in st:
        if a == x:
            best = max(best, 1 + depth(F, b))
    return best


def max_antichain(F, pts):
    _, edges = plain(F)
    pts = list(pts)
    for r in range(len(pts), 0, -1):
        for c in combinations(pts, r):
            if all((a, b) not in edges and (b, a) not in edges for a, b in combinations(c, 2)):
                return r
    return 0


def width_forward(F, x):
    _, edges = plain(F)
    return max_antichain(F, {b for a, b in edges if a == x})


def width_backward(F, x):
    _, edges = plain(F)
    return max_antichain(F, {a for a, b in edges if b == x})


def is_tmorphism(F, G, f):
    """Forth and back for both directions, checked pointwise from the definition."""
    _, ef = plain(F)
    _, eg = plain(G)
    for x in F.points:
        fwd = {f[b] for a, b in ef if a == x}
        bwd = {f[a] for a, b in ef if b == x}
        if fwd != {b for a, b in eg if a == f[x]}:
            return False
        if bwd != {a for a, b in eg if b == f[x]}:
            return False
    return True


def surjections(F, G):
    for img in product(G.points, repeat=len(F)):
        if set(img) == set(G.points):
            yield dict(zip(F.points, img))


def onto_exists(F, G):
    return any(is_tmorphism(F, G, f) for f in surjections(F, G))


def iso_exists(F, G):
    if len(F) != len(G):
        return False
    ef, eg = set(F.edges()), set(G.edges())
    for perm in permutations(G.points):
        f = dict(zip(F.points, perm))
        if {(f[a], f[b]) for a, b in ef} == eg:
            return True
    return False


def k_t_morphism_exists(F, x, G, y, k):
    """Maps on the k-ball with f(x)=y, forth/back exact on the (k-1)-ball."""
    _, ef = plain(F)
    _, eg = plain(G)
    dom = sorted(ball(F, x, k))
    inner = ball(F, x, k - 1)
    for img in product(G.points, repeat=len(dom)):
        f = dict(zip(dom, img))
        if f[x] != y:
            continue
        ok = True
        for z in inner:
            if {f[b] for a, b in ef if a == z} != {b for a, b in eg if a == f[z]}:
                ok = False
                break
            if {f[a] for a, b in ef if b == z} != {a for a, b in eg if b == f[z]}:
                ok = False
                break
        if ok:
            return True
    return False
