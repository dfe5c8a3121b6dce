"""Anchored binary sequences and generalized Thue-Morse stages."""
from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class BitSeq:
    """Bits placed on the integer interval [anchor, anchor + len - 1]."""

    anchor: int
    bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def of(cls, text, anchor=0):
        return cls(anchor, tuple(int(c) for c in text))

    @classmethod
    def parse(cls, text):
        """``0110`` or ``0110@-3``."""
        m = re.fullmatch(r"\s*([01]*)\s*(?:@\s*(-?\d+))?\s*", text)
        if not m:
            raise ValueError(f"bad sequence {text!r}; expected bits[@anchor]")
        return cls.of(m.group(1), int(m.group(2) or 0))

    def __len__(self):
        return len(self.bits)

    @property
    def end(self):
        return self.anchor + len(self.bits) - 1

    def __getitem__(self, i):
        if not self.anchor <= i <= self.end:
            raise IndexError(i)
        return self.bits[i - self.anchor]

    def domain(self):
        return range(self.anchor, self.anchor + len(self.bits))

    def items(self):
        return zip(self.domain(), self.bits)

    def text(self):
        return "".join(map(str, self.bits))

    def __str__(self):
        return f"{self.text()}@{self.anchor}"

    def shifted(self, anchor):
        return BitSeq(anchor, self.bits)

    def restrict(self, i, j):
        lo, hi = max(i, self.anchor), min(j, self.end)
        return BitSeq(lo, self.bits[lo - self.anchor : hi - self.anchor + 1])

    def is_subfunction(self, other):
        """self is contained in other as an anchored partial function."""
        return all(other.anchor <= i <= other.end and other[i] == b for i, b in self.items())


EMPTY = BitSeq(0, ())


def complement(a):
    return BitSeq(a.anchor, tuple(1 - b for b in a.bits))


def concat(parts, dagger=None):
    """Concatenate; with ``dagger = k`` part k keeps its own domain."""
    parts = list(parts)
    bits = tuple(b for p in parts for b in p.bits)
    if dagger is None:
        return BitSeq(0, bits)
    if not isinstance(dagger, int) or not 0 <= dagger < len(parts):
        raise ValueError("dagger must index one of the parts")
    before = sum(len(p) for p in parts[:dagger])
    return BitSeq(parts[dagger].anchor - before, bits)


def concat_marked(parts):
    """``parts`` is a list of (seq, marked) pairs; at most one may be marked."""
    marks = [k for k, (_, d) in enumerate(parts) if d]
    if len(marks) > 1:
        raise ValueError("at most one part may carry the dagger")
    return concat([p for p, _ in parts], marks[0] if marks else None)


def embeds(gamma, beta):
    """Least shift t with gamma(i) = beta(i + t) on gamma's domain, or None."""
    if not gamma.bits:
        return 0
    g, b = gamma.bits, beta.bits
    for k in range(len(b) - len(g) + 1):
        if b[k : k + len(g)] == g:
            return beta.anchor + k - gamma.anchor
    return None


def all_embeddings(gamma, beta):
    g, b = gamma.bits, beta.bits
    return [
        beta.anchor + k - gamma.anchor
        for k in range(len(b) - len(g) + 1)
        if b[k : k + len(g)] == g
    ]


CHI0 = BitSeq(0, (0, 0, 1))


def gtm(fbits, stage):
    """The stage-``stage`` generalized Thue-Morse block for control bits fbits."""
    fbits = tuple(int(b) for b in fbits)
    if stage < 0:
        raise ValueError("stage must be non-negative")
    if stage > len(fbits):
        raise ValueError(f"stage {stage} needs {stage} control bits, got {len(fbits)}")
    chi = CHI0
    for i in range(stage):
        mid = BitSeq(0, (fbits[i],))
        if i % 2 == 0:
            chi = concat([chi, mid, complement(chi)], dagger=0)
        else:
            chi = concat([complement(chi), mid, chi], dagger=2)
    return chi


def gtm_stages(fbits, stage):
    return [gtm(fbits, i) for i in range(stage + 1)]


@dataclass(frozen=True)
class Dissimilarity:
    index: int
    witness: BitSeq
    window: BitSeq
    verified: bool


def dissimilarity_witness(fbits, gbits, depth=None):
    fbits = tuple(int(b) for b in fbits)
    gbits = tuple(int(b) for b in gbits)
    depth = min(len(fbits), len(gbits)) if depth is None else depth
    diff = next((i for i in range(min(depth, len(fbits), len(gbits))) if fbits[i] != gbits[i]), None)
    if diff is None:
        raise ValueError(f"control bits agree on the first {depth} positions")
    w = gtm(fbits, diff + 2)
    window = gtm(gbits, diff + 4)
    return Dissimilarity(diff, w, window, embeds(w, window) is None)


def block_decomposition(chi, j, fbits):
    """Split a stage j+2 block into four stage-j blocks joined by single bits.

    Returns the list of (block_is_complement, separator) pairs, or None.
    """
    base = gtm(fbits, j)
    L = len(base)
    bits = chi.bits
    if len(bits) != 4 * L + 3:
        return None
    out = []
    for k in range(4):
        piece = bits[k * (L + 1) : k * (L + 1) + L]
        if piece == base.bits:
            kind = False
        elif piece == complement(base).bits:
            kind = True
        else:
            return None
        sep = bits[k * (L + 1) + L] if k < 3 else None
        out.append((kind, sep))
    return out
