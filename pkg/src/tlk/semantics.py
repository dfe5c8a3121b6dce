"""Kripke semantics: satisfaction in a model and validity by valuation sweep.

Validity is decided exhaustively.  Valuations of the relevant points are
numbered 0 .. 2^B - 1 (bit ``t*m + j`` says whether variable j holds at the
t-th relevant point) and swept in blocks, 64 valuations per machine word.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import formulas as fm
from .frames import FrameError, _bits, is_skeleton

DEFAULT_BUDGET = 24
CHUNK_BITS = 18
_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)
_LOW = [
    0xAAAAAAAAAAAAAAAA,
    0xCCCCCCCCCCCCCCCC,
    0xF0F0F0F0F0F0F0F0,
    0xFF00FF00FF00FF00,
    0xFFFF0000FFFF0000,
    0xFFFFFFFF00000000,
]


class BudgetExceeded(RuntimeError):
    pass


def budget_from_env():
    raw = os.environ.get("TLK_BUDGET")
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"TLK_BUDGET must be an integer, got {raw!r}") from None
    if val < 0:
        raise ValueError("TLK_BUDGET must be non-negative")
    return val


@dataclass
class Model:
    frame: object
    valuation: dict

    def __post_init__(self):
        F = self.frame
        clean = {}
        for var, pts in self.valuation.items():
            idx = var if isinstance(var, int) else _var_index(var)
            clean[idx] = F.mask(pts)
        self._masks = clean


def _var_index(name):
    if isinstance(name, str) and name.startswith("p") and name[1:].isdigit():
        return int(name[1:])
    raise ValueError(f"bad variable name {name!r}")


def truth_set(M, phi):
    """Bitmask of the points of M where phi holds (set-based evaluation)."""
    F = M.frame
    full = F.full
    memo = {}

    def go(f):
        r = memo.get(f)
        if r is not None:
            return r
        op = f.op
        if op == fm.VAR:
            i = f.args[0]
            if i not in M._masks:
                raise KeyError(f"valuation has no entry for p{i}")
            r = M._masks[i]
        elif op == fm.BOT:
            r = 0
        elif op == fm.IMP:
            r = (~go(f.args[0]) | go(f.args[1])) & full
        elif op == fm.BOX:
            a = go(f.args[0])
            r = 0
            for x, s in enumerate(F.succ):
                if s & ~a == 0:
                    r |= 1 << x
        else:  # PDIA: some predecessor satisfies a, i.e. R[V(a)]
            a = go(f.args[0])
            r = 0
            for y in _bits(a):
                r |= F.succ[y]
        memo[f] = r
        return r

    return go(fm.expand(phi))


def satisfies(M, x, phi):
    i = M.frame.index(x)
    return bool(truth_set(M, phi) >> i & 1)


# valuation sweep


def support(F, phi, rows):
    """Points whose valuation can influence phi at the points of ``rows``."""
    e = fm.expand(phi)
    memo = {}
    out = 0

    def image(rel, mask):
        r = 0
        for i in _bits(mask):
            r |= rel[i]
        return r

    stack = [(e, rows)]
    while stack:
        f, S = stack.pop()
        if not S or (f, S) in memo:
            continue
        memo[(f, S)] = True
        if f.op == fm.VAR:
            out |= S
        elif f.op == fm.IMP:
            stack.append((f.args[0], S))
            stack.append((f.args[1], S))
        elif f.op == fm.BOX:
            stack.append((f.args[0], image(F.succ, S)))
        elif f.op == fm.PDIA:
            stack.append((f.args[0], image(F.pred, S)))
    return out


def _goals(e, want=False):
    """Split 'e has value ``want``' into conjunctive goals (node, want)."""
    if e.op == fm.IMP:
        a, b = e.args
        if not want:
            return _goals(a, True) + _goals(b, False)
        if b.op == fm.BOT:
            return _goals(a, False)
    if e.op == fm.BOT:
        return [] if not want else [(e, True)]
    return [(e, want)]


class _Gather:
    """Row reductions over R[x] (or its converse) for every x at once."""

    def __init__(self, rel):
        groups = [list(_bits(s)) for s in rel]
        self.flat = np.array([j for g in groups for j in g], dtype=np.intp)
        self.starts = np.array(
            np.cumsum([0] + [len(g) for g in groups[:-1]]), dtype=np.intp
        )
        self.empty = [x for x, g in enumerate(groups) if not g]

    def apply(self, ufunc, a, unit):
        if not self.empty:
            return ufunc.reduceat(a[self.flat], self.starts, axis=0)
        out = np.empty_like(a)
        for x in range(a.shape[0]):
            if x in self.empty:
                out[x] = unit
            else:
                lo = self.starts[x]
                hi = self.starts[x + 1] if x + 1 < a.shape[0] else len(self.flat)
                out[x] = ufunc.reduce(a[self.flat[lo:hi]], axis=0)
        return out


_goal_cache = {}


def _ordered_goals(e):
    hit = _goal_cache.get(e)
    if hit is None:
        hit = sorted(_goals(e), key=lambda g: fm.size(g[0]))
        if len(_goal_cache) > 256:
            _goal_cache.clear()
        _goal_cache[e] = hit
    return hit


class _Sweep:
    def __init__(self, F, e, rows, budget):
        self.F = F
        self.e = e
        self.vars = fm.variables(e)
        self.m = len(self.vars)
        sup = support(F, e, rows)
        self.points = list(_bits(sup))
        self.B = self.m * len(self.points)
        if self.B > budget:
            raise BudgetExceeded(
                f"{self.m} variables x {len(self.points)} relevant points = {self.B} "
                f"valuation bits exceeds budget {budget}"
            )
        self.rows = list(_bits(rows))
        self.c = min(self.B, CHUNK_BITS)
        self.W = max(1, (1 << self.c) // 64)
        if self.c < 6:
            self.valid = np.uint64((1 << (1 << self.c)) - 1)
        else:
            self.valid = _ONES
        self.box = _Gather(F.succ)
        self.pdia = _Gather(F.pred)
        self.var_pos = {v: k for k, v in enumerate(self.vars)}
        words = np.arange(self.W, dtype=np.uint64)
        self.low = []
        for b in range(self.c):
            if b < 6:
                row = np.full(self.W, np.uint64(_LOW[b]), dtype=np.uint64)
            else:
                on = (words >> np.uint64(b - 6)) & np.uint64(1)
                row = np.where(on.astype(bool), _ONES, np.uint64(0)).astype(np.uint64)
            self.low.append(row & self.valid)
        self.goals = _ordered_goals(e)
        self.n = len(F)

    # ``cols`` holds the word indices still under consideration in this chunk
    def _atom(self, j, h, cols):
        out = np.zeros((self.n, len(cols)), dtype=np.uint64)
        k = self.var_pos[j]
        for t, x in enumerate(self.points):
            b = t * self.m + k
            if b < self.c:
                out[x] = self.low[b][cols]
            elif h >> (b - self.c) & 1:
                out[x] = self.valid
        return out

    def _eval(self, f, h, cols, memo):
        r = memo.get(f)
        if r is not None:
            return r
        op = f.op
        if op == fm.VAR:
            r = self._atom(f.args[0], h, cols)
        elif op == fm.BOT:
            r = np.zeros((self.n, len(cols)), dtype=np.uint64)
        elif op == fm.IMP:
            a = self._eval(f.args[0], h, cols, memo)
            b = self._eval(f.args[1], h, cols, memo)
            r = ~a | b
            if self.c < 6:
                r &= self.valid
        elif op == fm.BOX:
            r = self.box.apply(np.bitwise_and, self._eval(f.args[0], h, cols, memo), self.valid)
        else:
            r = self.pdia.apply(np.bitwise_or, self._eval(f.args[0], h, cols, memo), 0)
        memo[f] = r
        return r

    def first_failure(self):
        """Least valuation index falsifying e at some row, or None."""
        rows = self.rows
        every = np.arange(self.W)
        for h in range(1 << (self.B - self.c)):
            memo = {}
            cols = every
            alive = np.full((len(rows), self.W), self.valid, dtype=np.uint64)
            for node, want in self.goals:
                val = self._eval(node, h, cols, memo)[rows]
                alive &= val if want else ~val
                live = np.flatnonzero(np.bitwise_or.reduce(alive, axis=0))
                if not len(live):
                    break
                if 4 * len(live) <= len(cols):
                    # drop dead words from the rest of this chunk
                    cols = cols[live]
                    alive = alive[:, live]
                    memo = {k: v[:, live] for k, v in memo.items()}
            else:
                merged = np.bitwise_or.reduce(alive, axis=0)
                w = int(np.flatnonzero(merged)[0])
                word = int(merged[w])
                bit = (word & -word).bit_length() - 1
                return (h << self.c) | (int(cols[w]) << 6) | bit
        return None

    def decode(self, v):
        val = {}
        for k, j in enumerate(self.vars):
            pts = [
                self.F.points[x]
                for t, x in enumerate(self.points)
                if v >> (t * self.m + k) & 1
            ]
            val[f"p{j}"] = pts
        return val


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counter: dict | None = None

    def __bool__(self):
        return self.holds


def _check(F, phi, rows, budget):
    if budget is None:
        budget = budget_from_env()
    sweep = _Sweep(F, fm.expand(phi), rows, budget)
    v = sweep.first_failure()
    if v is None:
        return Verdict(True)
    return Verdict(False, sweep.decode(v))


def check_at(F, x, phi, budget=None):
    """Validity of phi at x with the least counter-valuation on failure."""
    return _check(F, phi, 1 << F.index(x), budget)


def check_valid(F, phi, budget=None):
    return _check(F, phi, F.full, budget)


def valid_at(F, x, phi, budget=None):
    return check_at(F, x, phi, budget).holds


def valid(F, phi, budget=None):
    return check_valid(F, phi, budget).holds


def omega_lambda(m):
    """Cluster fattening that decides validity on the omega pre-skeleton.

    Cluster-mates with the same atoms are bisimilar, so any refuting model
    collapses onto a cluster of at most 2^m points.
    """
    return max(1, (1 << m) - 1)


def check_omega(F, x, phi, budget=None, lam=None):
    from .catalog import preskeleton

    if not is_skeleton(F):
        raise FrameError("omega validity needs a skeleton (all clusters trivial)")
    F.index(x)
    if lam is None:
        lam = omega_lambda(len(fm.variables(phi)))
    return check_valid(preskeleton(F, x, lam), phi, budget)


def omega_valid(F, x, phi, budget=None, lam=None):
    return check_omega(F, x, phi, budget, lam).holds
