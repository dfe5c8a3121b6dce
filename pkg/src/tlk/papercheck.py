"""Verification suites: each case recomputes a finite claim by brute force."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import formulas as fm
from .catalog import (
    CT_FINGERPRINT,
    chain,
    classify_bs222,
    co_garland,
    figure_irreducible,
    figure_reducible,
    fingerprint,
    garland,
    hoop,
    is_c_irreducible,
    make,
    named_frames,
    preskeleton,
)
from .enumeration import canonical_key, closed_frames, random_frame
from .frames import is_rooted, is_skeleton, metrics, skeleton
from .jankov import jankov, refuted_semantically
from .morphisms import (
    check_k_t_morphism,
    find_k_t_morphism,
    find_tmorphism_onto,
    isomorphic,
)
from .semantics import valid, valid_at
from .sequences import (
    BitSeq,
    all_embeddings,
    complement,
    concat,
    embeds,
    gtm,
)
from .umbrella import block_interval_subframe, umbrella

DEFAULT_SEED = 20240601


@dataclass
class Case:
    id: int
    name: str
    claim: str
    passed: bool = False
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self):
        return {
            "id": self.id,
            "name": self.name,
            "claim": self.claim,
            "status": "pass" if self.passed else "fail",
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


CASES = {}


def case(cid, name, claim):
    def wrap(fn):
        CASES[cid] = (name, claim, fn)
        return fn

    return wrap


def run_case(cid, seed=DEFAULT_SEED):
    name, claim, fn = CASES[cid]
    c = Case(cid, name, claim)
    t = time.perf_counter()
    c.passed, c.detail = fn(seed)
    c.seconds = time.perf_counter() - t
    return c


def population(seed=DEFAULT_SEED, randoms=50):
    rng = random.Random(seed)
    frames = dict(named_frames())
    for k in range(randoms):
        frames[f"rand{k}"] = random_frame(rng, 4)
    return frames


def _pointed(frames):
    return [(name, F, x) for name, F in frames.items() for x in F.points]


@case(1, "jankov correspondence",
      "F,x refutes the negated degree-k Jankov formula of (G,y) iff a k-t-morphism (F,x) -> (G,y) exists")
def _jankov_correspondence(seed, degrees=(1, 2)):
    pts = _pointed(population(seed))
    keys = {(n, x): canonical_key(F, x) for n, F, x in pts}
    # the semantic side is invariant under pointed isomorphism, so it is
    # computed once per pair of isomorphism types
    # the largest k-ball has 5 points and F contributes at most 5 support points
    budget = max(len(F) for _, F, _ in pts) ** 2
    sem_cache = {}
    mismatches, unsound, checked, refuted = [], [], 0, 0
    for k in degrees:
        for nf, F, x in pts:
            for ng, G, y in pts:
                f = find_k_t_morphism(F, x, G, y, k)
                if f is not None and not check_k_t_morphism(F, x, G, y, k, f.mapping):
                    unsound.append((nf, x, ng, y, k))
                key = (keys[nf, x], keys[ng, y], k)
                if key not in sem_cache:
                    sem_cache[key] = refuted_semantically(F, x, G, y, k, budget=budget)
                sem = sem_cache[key]
                checked += 1
                refuted += sem
                if sem != (f is not None):
                    mismatches.append((nf, x, ng, y, k, sem))
    detail = {
        "tuples": checked,
        "refuted": refuted,
        "semantic_sweeps": len(sem_cache),
        "mismatches": mismatches[:10],
        "unsound_witnesses": unsound[:10],
    }
    return not mismatches and not unsound, detail


def _all_pointed_closed(max_points=5):
    return [(F, x) for F in closed_frames(max_points) for x in F.points]


@case(2, "tab correspondence",
      "valid_at(F,x,tab_n) iff the n-ball around x has at most n points (closed frames <= 5 points, n <= 3)")
def _tab(seed):
    bad, count = [], 0
    tabs = {n: fm.schema("tab", n) for n in (1, 2, 3)}
    for F, x in _all_pointed_closed():
        for n, phi in tabs.items():
            lhs = valid_at(F, x, phi)
            rhs = len(F.names(F.ball_mask(F.index(x), n))) <= n
            count += 1
            if lhs != rhs:
                bad.append((F.edges(), x, n, lhs))
    return not bad, {"checks": count, "mismatches": bad[:10]}


@case(3, "bounded-parameter correspondences",
      "bd_n / bz_n / bw+_n / bw-_n hold at x iff dep / zdg / widF / widB at x is at most n (n <= 2)")
def _bounds(seed):
    bad, count = [], 0
    pairs = [("bd", "dep"), ("bz", "zdg"), ("bw+", "widF"), ("bw-", "widB")]
    phis = {(s, n): fm.schema(s, n) for s, _ in pairs for n in (1, 2)}
    for F in closed_frames(5):
        per = metrics(F).per_point
        for x in F.points:
            for s, key in pairs:
                for n in (1, 2):
                    lhs = valid_at(F, x, phis[s, n])
                    rhs = per[x][key] <= n
                    count += 1
                    if lhs != rhs:
                        bad.append((F.edges(), x, s, n, lhs))
    return not bad, {"checks": count, "mismatches": bad[:10]}


@case(4, "figure frames",
      "the five-point figure frame is c-reducible with a witness isomorphic to the four-point one, which is c-irreducible")
def _figure(seed):
    F1, F2 = figure_reducible(), figure_irreducible()
    S1, q1 = skeleton(F1)
    S2, q2 = skeleton(F2)
    r1 = is_c_irreducible(S1, q1["c"])
    r2 = is_c_irreducible(S2, q2["c"])
    witness_ok = r1.witness is not None and isomorphic(r1.witness, F2) is not None
    ok = (not r1.answer) and witness_ok and r2.answer
    return ok, {
        "F1_irreducible": r1.answer,
        "F1_witness": r1.witness.edges() if r1.witness else None,
        "witness_iso_F2": witness_ok,
        "F2_irreducible": r2.answer,
    }


@case(5, "garland irreducibility",
      "(G_n)^m_1 and its inverse-family analogue are c-irreducible iff 2m != n (1 <= n <= 6, m <= ceil(n/2))")
def _garlands(seed):
    rows, bad = [], []
    for n in range(1, 7):
        for m in range(0, -(-n // 2) + 1):
            want = 2 * m != n
            for fam, F in (("garland", garland(n)), ("co_garland", co_garland(n))):
                got = is_c_irreducible(F, str(m)).answer
                rows.append((fam, n, m, got))
                if got != want:
                    bad.append((fam, n, m, got))
    return not bad, {"cases": len(rows), "mismatches": bad}


@case(6, "hoop reducibility",
      "(H_n)^m_1 is c-reducible for n in {1,3,5}, with a witness outside IM((H_n)^m_1) and TM(H_n)")
def _hoops(seed):
    bad, rows = [], []
    for n in (1, 3, 5):
        H = hoop(n)
        for m in range(n + 1):
            r = is_c_irreducible(H, str(m))
            ok = not r.answer
            if ok:
                P = preskeleton(H, str(m), 1)
                ok = (
                    isomorphic(r.witness, P) is None
                    and find_tmorphism_onto(H, r.witness) is None
                )
            rows.append((n, m, r.answer))
            if not ok:
                bad.append({"n": n, "m": m, "irreducible": r.answer, "images": r.images})
    return not bad, {"cases": len(rows), "failures": bad}


@case(7, "linear pre-skeleton types",
      "among rooted linear skeletons <= 4 points, the c-irreducible marked points are exactly the four fingerprint classes, "
      "matching the four C-type frames, which are pairwise non-isomorphic and non-surjectable")
def _s43(seed):
    bad, seen = [], {}
    for F in closed_frames(4, rooted_only=True, bounds={"gir": 1, "widF": 1, "widB": 1}):
        for x in F.points:
            fp = fingerprint(F, x)
            irr = is_c_irreducible(F, x).answer
            typed = [t for t, want in CT_FINGERPRINT.items() if want == fp]
            if irr != bool(typed):
                bad.append((len(F), x, fp, irr))
                continue
            if typed:
                P = preskeleton(F, x, 1)
                if isomorphic(P, make("Ct", typed[0], 1)) is None:
                    bad.append((len(F), x, fp, "not iso to its C-type"))
                seen[typed[0]] = seen.get(typed[0], 0) + 1
    cts = {t: make("Ct", t, 1) for t in CT_FINGERPRINT}
    for s, t in product(cts, repeat=2):
        if s == t:
            continue
        if isomorphic(cts[s], cts[t]) is not None:
            bad.append(("iso", s, t))
        if find_tmorphism_onto(cts[s], cts[t]) is not None:
            bad.append(("onto", s, t))
    ok = not bad and set(seen) == set(CT_FINGERPRINT)
    return ok, {"types_found": seen, "failures": bad}


@case(8, "width-two depth-two shapes",
      "every rooted skeleton <= 5 points with dep, widF, widB <= 2 is a garland, co-garland or hoop")
def _bs222(seed):
    frames = closed_frames(5, rooted_only=True, bounds={"gir": 1, "dep": 2, "widF": 2, "widB": 2})
    tally, bad, overlaps = {}, [], []
    for F in frames:
        c = classify_bs222(F)
        if not c.applicable:
            bad.append((F.edges(), c.reason))
            continue
        tally[f"{c.family} {c.param}"] = tally.get(f"{c.family} {c.param}", 0) + 1
        if len(c.matches) > 1:
            overlaps.append((c.param, c.matches))
    return not bad, {"frames": len(frames), "classified": tally, "unclassified": bad,
                     "coinciding_families": overlaps}


@case(9, "hoop versus garlands",
      "H_3 is no garland G_n (n <= 4), validates tab_4 and the negated degree-4 Jankov formula of (G_3, 0), and refutes tab_3")
def _h3(seed):
    H, G3 = hoop(3), garland(3)
    not_garland = all(isomorphic(H, garland(n)) is None for n in range(5))
    tab4 = valid(H, fm.schema("tab", 4))
    tab3 = valid(H, fm.schema("tab", 3))
    neg = fm.Not(jankov(G3, "0", 4))
    sem = valid(H, neg)
    morph = all(find_k_t_morphism(H, x, G3, "0", 4) is None for x in H.points)
    ok = not_garland and tab4 and not tab3 and sem and morph
    return ok, {"non_iso_garlands": not_garland, "tab4_valid": tab4, "tab3_valid": tab3,
                "neg_jankov_valid": sem, "no_4_t_morphism": morph}


@case(10, "generalized Thue-Morse tables",
      "stage blocks reproduce 0011110, 110100100010110, 110000110011110; lengths 2^(i+2)-1 and in-place nesting for i <= 10")
def _gtm(seed):
    rng = random.Random(seed)
    table = {
        "g1": gtm("1", 1).text() == "0011110",
        "f2": gtm("00", 2).text() == "110100100010110",
        "g2": gtm("11", 2).text() == "110000110011110",
    }
    growth = []
    for fbits in ["0" * 10, "1" * 10, "".join(rng.choice("01") for _ in range(10))]:
        stages = [gtm(fbits, i) for i in range(11)]
        lengths = all(len(s) == 2 ** (i + 2) - 1 for i, s in enumerate(stages))
        nested = all(stages[i].is_subfunction(stages[i + 1]) for i in range(10))
        growth.append({"f": fbits, "lengths": lengths, "nested": nested})
    ok = all(table.values()) and all(g["lengths"] and g["nested"] for g in growth)
    return ok, {"table": table, "growth": growth}


@case(11, "dissimilarity witness",
      "for f = 0..., g = 1..., stage-2 block of f does not embed in stage 4 of g and vice versa")
def _dissimilar(seed):
    f, g = "0000", "1111"
    a = embeds(gtm(f, 2), gtm(g, 4))
    b = embeds(gtm(g, 2), gtm(f, 4))
    return a is None and b is None, {"f2_in_g4": a, "g2_in_f4": b}


@case(12, "embedding anchors",
      "every embedding of chi_i into chi_i x complement(chi_i) is left-aligned, and into its complement right-aligned (i in {1,2})")
def _anchors(seed):
    bad, count = [], 0
    for i in (1, 2):
        for fb in product("01", repeat=2):
            alpha = gtm("".join(fb), i)
            for x in (0, 1):
                mid = BitSeq(0, (x,))
                beta = concat([alpha, mid, complement(alpha)])
                left = all_embeddings(alpha, beta)
                if left != [beta.anchor - alpha.anchor]:
                    bad.append((i, "".join(fb), x, "left", left))
                dual = concat([complement(alpha), mid, alpha])
                right = all_embeddings(alpha, dual)
                if right != [dual.end - alpha.end]:
                    bad.append((i, "".join(fb), x, "right", right))
                count += 2
    return not bad, {"checks": count, "failures": bad}


@case(13, "umbrella frames",
      "umbrellas for 1 <= |a| <= 3 are rooted, antisymmetric, dep 2, widF 2, widB 3, and block intervals match sequence embeddings")
def _umbrellas(seed):
    bad, count = [], 0
    for L in (1, 2, 3):
        for bits in product("01", repeat=L):
            alpha = BitSeq.of("".join(bits))
            Z = umbrella(alpha)
            m = metrics(Z.frame)
            shape = (is_rooted(Z.frame), is_skeleton(Z.frame), m.dep, m.widF, m.widB)
            if shape != (True, True, 2, 2, 3):
                bad.append((alpha.text(), "shape", shape))
            intervals = [
                block_interval_subframe(Z, i, j)
                for i in alpha.domain()
                for j in alpha.domain()
                if i <= j
            ]
            for l in range(1, L + 1):
                for gb in product("01", repeat=l):
                    gamma = BitSeq.of("".join(gb))
                    U = umbrella(gamma).frame
                    lhs = any(isomorphic(I, U) is not None for I in intervals)
                    rhs = embeds(gamma, alpha) is not None
                    count += 1
                    if lhs != rhs:
                        bad.append((alpha.text(), gamma.text(), lhs, rhs))
    return not bad, {"pairs": count, "failures": bad}


@case(14, "pre-skeleton transfer",
      "validity agrees on F^x_3, F^x_4, F^x_5 for 200 random one-variable formulas of md <= 3, "
      "and F^x_2 ->> G^y_1 extends to F^x_k ->> G^y_l for all l <= k <= 3")
def _preskel(seed):
    rng = random.Random(seed)
    phis = [fm.random_formula(rng, nvars=1, max_md=3) for _ in range(200)]
    bad, count = [], 0
    for F in (chain(1), chain(2)):
        for x in F.points:
            fats = [preskeleton(F, x, lam) for lam in (3, 4, 5)]
            for phi in phis:
                vals = [valid(P, phi) for P in fats]
                count += 1
                if len(set(vals)) != 1:
                    bad.append((len(F), x, fm.render(phi), vals))
    transfers = []
    for F, G in product((chain(1), chain(2)), repeat=2):
        for x, y in product(F.points, G.points):
            if find_tmorphism_onto(preskeleton(F, x, 2), preskeleton(G, y, 1)) is None:
                continue
            for k in (1, 2, 3):
                for l in range(1, k + 1):
                    ok = find_tmorphism_onto(preskeleton(F, x, k), preskeleton(G, y, l)) is not None
                    transfers.append(ok)
                    if not ok:
                        bad.append(("transfer", len(F), x, len(G), y, k, l))
    ok = not bad and transfers
    return bool(ok), {"formula_checks": count, "transfer_checks": len(transfers), "failures": bad[:10]}


SUITES = {
    "jankov": [1],
    "bounds": [2, 3, 14],
    "s43": [7],
    "bs222": [4, 5, 6, 8, 9],
    "sequences": [10, 11, 12],
    "umbrella": [13],
}
SUITES["all"] = sorted(c for ids in SUITES.values() for c in ids)


def run_suite(name, seed=DEFAULT_SEED, workers=1):
    """Run a suite; with workers > 1 cases run in separate processes."""
    if name not in SUITES:
        raise KeyError(name)
    ids = SUITES[name]
    if workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(min(workers, len(ids))) as pool:
            cases = list(pool.map(run_case, ids, [seed] * len(ids)))
    else:
        cases = [run_case(c, seed) for c in ids]
    return {
        "suite": name,
        "seed": seed,
        "cases": [c.as_dict() for c in cases],
        "totals": {
            "cases": len(cases),
            "passed": sum(c.passed for c in cases),
            "failed": sum(not c.passed for c in cases),
        },
    }
