"""Tense formulas over p0, p1, ..., with primitives bot, ->, [] and <p>.

Nodes are interned, so structurally equal formulas are the same object and
can be used as cheap dictionary keys.
"""
from __future__ import annotations

import re
import weakref
from functools import reduce

# primitive ops
VAR, BOT, IMP, BOX, PDIA = "var", "bot", "imp", "box", "pdia"
# sugar
TOP, NOT, AND, OR, DIA, PBOX = "top", "not", "and", "or", "dia", "pbox"

PRIMITIVE = {VAR, BOT, IMP, BOX, PDIA}
UNARY = {NOT: "~", BOX: "[]", DIA: "<>", PBOX: "[p]", PDIA: "<p>"}
BINARY = {AND: "&", OR: "|", IMP: "->"}


class Formula:
    __slots__ = ("op", "args", "__weakref__")

    def __repr__(self):
        return f"Formula({render(self)!r})"

    def __str__(self):
        return render(self)

    def __reduce__(self):
        return (_mk, (self.op,) + self.args)


_table = weakref.WeakValueDictionary()


def _mk(op, *args):
    key = (op,) + tuple(a if isinstance(a, int) else id(a) for a in args)
    node = _table.get(key)
    if node is None or node.args != args:
        node = Formula()
        node.op, node.args = op, args
        _table[key] = node
    return node


def Var(i):
    if i < 0:
        raise ValueError("variable index must be non-negative")
    return _mk(VAR, int(i))


def Bot():
    return _mk(BOT)


def Top():
    return _mk(TOP)


def Not(a):
    return _mk(NOT, a)


def And(a, b):
    return _mk(AND, a, b)


def Or(a, b):
    return _mk(OR, a, b)


def Imp(a, b):
    return _mk(IMP, a, b)


def Box(a):
    return _mk(BOX, a)


def Dia(a):
    return _mk(DIA, a)


def PBox(a):
    return _mk(PBOX, a)


def PDia(a):
    return _mk(PDIA, a)


def conj(parts):
    parts = list(parts)
    return reduce(And, parts) if parts else Top()


def disj(parts):
    parts = list(parts)
    return reduce(Or, parts) if parts else Bot()


# text syntax

class FormulaSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(\[\]|<>|\[p\]|<p>|->|~|&|\||\(|\)|T|F|p\d+)")


def _tokens(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("", len(text)))
    return out


_PREFIX = {"~": Not, "[]": Box, "<>": Dia, "[p]": PBox, "<p>": PDia}


def parse(text):
    toks = _tokens(text)
    k = 0

    def peek():
        return toks[k][0]

    def take(expected=None):
        nonlocal k
        tok, pos = toks[k]
        if expected is not None and tok != expected:
            where = "end of input" if tok == "" else repr(tok)
            raise FormulaSyntaxError(f"expected {expected!r}, found {where}", pos)
        k += 1
        return tok

    def imp():
        left = orr()
        if peek() == "->":
            take()
            return Imp(left, imp())
        return left

    def orr():
        left = andd()
        while peek() == "|":
            take()
            left = Or(left, andd())
        return left

    def andd():
        left = unary()
        while peek() == "&":
            take()
            left = And(left, unary())
        return left

    def unary():
        tok, pos = toks[k]
        if tok in _PREFIX:
            take()
            return _PREFIX[tok](unary())
        if tok == "(":
            take()
            inner = imp()
            take(")")
            return inner
        if tok == "T":
            take()
            return Top()
        if tok == "F":
            take()
            return Bot()
        if tok.startswith("p") and tok[1:].isdigit():
            take()
            return Var(int(tok[1:]))
        where = "end of input" if tok == "" else repr(tok)
        raise FormulaSyntaxError(f"unexpected {where}", pos)

    phi = imp()
    if peek() != "":
        raise FormulaSyntaxError(f"trailing input {peek()!r}", toks[k][1])
    return phi


def render(phi):
    op = phi.op
    if op == VAR:
        return f"p{phi.args[0]}"
    if op == BOT:
        return "F"
    if op == TOP:
        return "T"
    if op in UNARY:
        return UNARY[op] + render(phi.args[0])
    a, b = phi.args
    return f"({render(a)} {BINARY[op]} {render(b)})"


# primitive expansion and measures

_expand_cache = weakref.WeakKeyDictionary()


def expand(phi):
    """Rewrite into the primitive language {bot, ->, [], <p>}."""
    hit = _expand_cache.get(phi)
    if hit is not None:
        return hit
    op, args = phi.op, phi.args
    if op in (VAR, BOT):
        out = phi
    elif op == TOP:
        out = Imp(Bot(), Bot())
    elif op == IMP:
        out = Imp(expand(args[0]), expand(args[1]))
    elif op == BOX:
        out = Box(expand(args[0]))
    elif op == PDIA:
        out = PDia(expand(args[0]))
    elif op == NOT:
        out = Imp(expand(args[0]), Bot())
    elif op == AND:
        a, b = expand(args[0]), expand(args[1])
        out = Imp(Imp(a, Imp(b, Bot())), Bot())
    elif op == OR:
        a, b = expand(args[0]), expand(args[1])
        out = Imp(Imp(a, Bot()), b)
    elif op == DIA:
        out = Imp(Box(Imp(expand(args[0]), Bot())), Bot())
    elif op == PBOX:
        out = Imp(PDia(Imp(expand(args[0]), Bot())), Bot())
    else:
        raise ValueError(f"unknown operator {op}")
    _expand_cache[phi] = out
    return out


def _fold(phi, leaf, imp, modal):
    memo = {}

    def go(f):
        r = memo.get(f)
        if r is None:
            if f.op in (VAR, BOT):
                r = leaf(f)
            elif f.op == IMP:
                r = imp(go(f.args[0]), go(f.args[1]))
            else:
                r = modal(go(f.args[0]))
            memo[f] = r
        return r

    return go(expand(phi))


def complexity(phi):
    return _fold(phi, lambda f: 0, lambda a, b: max(a, b) + 1, lambda a: a + 1)


def modal_degree(phi):
    return _fold(phi, lambda f: 0, max, lambda a: a + 1)


def variables(phi):
    """Sorted variable indices occurring in phi."""
    seen, out, stack = set(), set(), [phi]
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        if f.op == VAR:
            out.add(f.args[0])
        else:
            stack.extend(a for a in f.args if isinstance(a, Formula))
    return sorted(out)


def subformulas(phi):
    """Sub(phi) of the primitive expansion."""
    seen, stack = set(), [expand(phi)]
    while stack:
        f = stack.pop()
        if f not in seen:
            seen.add(f)
            stack.extend(a for a in f.args if isinstance(a, Formula))
    return seen


def size(phi):
    """Number of nodes counted with sharing (DAG size)."""
    return len(subformulas(phi))


def analyze(phi):
    return {
        "complexity": complexity(phi),
        "modal_degree": modal_degree(phi),
        "variables": [f"p{i}" for i in variables(phi)],
        "subformulas": subformulas(phi),
    }


def substitute(phi, s):
    """Homomorphic replacement; ``s`` maps variable indices to formulas."""
    memo = {}

    def go(f):
        r = memo.get(f)
        if r is None:
            if f.op == VAR:
                r = s.get(f.args[0], f)
            elif f.op in (BOT, TOP):
                r = f
            else:
                r = _mk(f.op, *(go(a) for a in f.args))
            memo[f] = r
        return r

    return go(phi)


# schemas

OMEGA = "omega"


def _words(n):
    """Modal prefixes over (<>, <p>) of length <= n, by length then <> first."""
    out = [()]
    layer = [()]
    for _ in range(n):
        layer = [w + (m,) for w in layer for m in (Dia, PDia)]
        out += layer
    return out


def _apply(word, phi):
    for m in reversed(word):
        phi = m(phi)
    return phi


def delta(n, phi):
    if n == OMEGA:
        raise ValueError("delta needs a finite radius")
    if n < 0:
        raise ValueError("delta radius must be non-negative")
    return disj(_apply(w, phi) for w in _words(n))


def nabla(n, phi):
    """Dual of delta; the radius-0 case is phi itself."""
    if n == 0:
        return phi
    return Not(delta(n, Not(phi)))


def _positive(name, n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"{name} needs a positive integer parameter, got {n!r}")


def tab(n):
    _positive("tab", n)
    p = [Var(i) for i in range(n + 1)]
    psi = [conj([Not(p[j]) for j in range(i)] + [p[i]]) for i in range(n + 1)]
    return Not(conj(delta(n, s) for s in psi))


def bd(n):
    _positive("bd", n)
    phi = Imp(Dia(Box(Var(0))), Var(0))
    for k in range(1, n):
        phi = Imp(Dia(And(Box(Var(k)), Not(phi))), Var(k))
    return phi


def bz(n):
    _positive("bz", n)
    return Imp(delta(n + 1, Var(0)), delta(n, Var(0)))


def _bw(n, dia):
    _positive("bw", n)
    p = [Var(i) for i in range(n + 1)]
    lhs = conj(dia(q) for q in p)
    rhs = disj(
        dia(And(p[i], Or(p[j], dia(p[j]))))
        for i in range(n + 1)
        for j in range(n + 1)
        if i != j
    )
    return Imp(lhs, rhs)


def _alt(n, box):
    _positive("alt", n)
    p = [Var(i) for i in range(n + 1)]
    parts = [box(p[0])] + [Imp(conj(p[:k]), p[k]) for k in range(1, n + 1)]
    return disj([parts[0]] + [box(f) for f in parts[1:]])


def grz():
    p = Var(0)
    return Imp(Box(Imp(Box(Imp(p, Box(p))), p)), p)


def _fixed(phi):
    return lambda: phi


SCHEMAS = {
    "tab": tab,
    "bd": bd,
    "bz": bz,
    "bw+": lambda n: _bw(n, Dia),
    "bw-": lambda n: _bw(n, PDia),
    "alt+": lambda n: _alt(n, Box),
    "alt-": lambda n: _alt(n, PBox),
}

CONSTANT = {
    "grz": grz,
    "T": lambda: Imp(Box(Var(0)), Var(0)),
    "4": lambda: Imp(Box(Var(0)), Box(Box(Var(0)))),
    "s5": lambda: Imp(Dia(Var(0)), Box(Dia(Var(0)))),
    "lin+": lambda: Imp(Box(Dia(Var(0))), Dia(Box(Var(0)))),
    "lin-": lambda: Imp(PBox(PDia(Var(0))), PDia(PBox(Var(0)))),
}

NAMES = sorted(["delta", "nabla", *SCHEMAS, *CONSTANT])


def schema(name, *params):
    """Build a named schema; an ``"omega"`` parameter gives T."""
    if name in ("delta", "nabla"):
        if len(params) != 2:
            raise ValueError(f"{name} takes a radius and a formula")
        n, phi = params
        if n == OMEGA:
            return Top()
        return (delta if name == "delta" else nabla)(n, phi)
    if name in SCHEMAS:
        if len(params) != 1:
            raise ValueError(f"{name} takes one parameter")
        if params[0] == OMEGA:
            return Top()
        return SCHEMAS[name](params[0])
    if name in CONSTANT:
        if params:
            raise ValueError(f"{name} takes no parameters")
        return CONSTANT[name]()
    raise ValueError(f"unknown schema {name!r}; known: {', '.join(NAMES)}")


def random_formula(rng, nvars=2, max_md=3, max_depth=6):
    """A seeded random formula over p0..p(nvars-1) with md at most max_md."""
    modal = (Box, Dia, PBox, PDia)
    binary = (And, Or, Imp)

    def gen(depth, md):
        if depth == 0 or rng.random() < 0.2:
            r = rng.random()
            if nvars and r < 0.85:
                return Var(rng.randrange(nvars))
            return Top() if r < 0.93 else Bot()
        r = rng.random()
        if md > 0 and r < 0.45:
            return rng.choice(modal)(gen(depth - 1, md - 1))
        if r < 0.6:
            return Not(gen(depth - 1, md))
        return rng.choice(binary)(gen(depth - 1, md), gen(depth - 1, md))

    return gen(max_depth, max_md)
