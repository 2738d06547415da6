"""Typed decorated planar binary trees.

A tree is either the leaf (``None``) or a ``Node`` carrying a decoration,
two subtrees and the types of the two edges below its vertex.  An edge
type is ``None`` (the sentinel, exactly when the child is a leaf), a
single value, or a pair of values; all non-sentinel types in one tree
share the same flavor.

Textual grammar: leaf = ``_``; node = ``(dec LT RT LEFT RIGHT)``;
edge types: ``.`` sentinel, ``3`` single, ``1:0`` pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParseError, ResourceBoundError

Leaf = None

# Edge type values are opaque to this module: concrete runs use ints and
# int pairs, symbolic runs substitute expression objects.  Only two shape
# questions are ever asked: "is it the sentinel?" (is None) and "is it a
# pair?" (isinstance tuple).


def flavor(edge_type) -> str | None:
    if edge_type is None:
        return None
    return "pair" if isinstance(edge_type, tuple) else "single"


@dataclass(frozen=True)
class Node:
    dec: str
    lt: object
    left: "Node | None"
    rt: object
    right: "Node | None"

    def __post_init__(self):
        if (self.lt is None) != (self.left is None):
            raise ValueError("left edge type must be the sentinel exactly when "
                             "the left child is a leaf")
        if (self.rt is None) != (self.right is None):
            raise ValueError("right edge type must be the sentinel exactly when "
                             "the right child is a leaf")
        flavors = {flavor(self.lt), flavor(self.rt),
                   tree_flavor(self.left), tree_flavor(self.right)}
        flavors.discard(None)
        if len(flavors) > 1:
            raise ValueError("mixed single and pair edge types in one tree")


Tree = Node | None


def tree_flavor(t: Tree) -> str | None:
    """The shared edge-type flavor of a tree, or None if it has no typed edge."""
    if t is None:
        return None
    for et in (t.lt, t.rt):
        f = flavor(et)
        if f is not None:
            return f
    return tree_flavor(t.left) or tree_flavor(t.right)


def graft(t1: Tree, dec: str, a, b, t2: Tree) -> Node:
    """Join two trees under a new root decorated by ``dec``.

    ``a`` types the edge to ``t1`` and ``b`` the edge to ``t2``; each must
    be the sentinel exactly when the corresponding tree is a leaf.
    """
    return Node(dec, a, t1, b, t2)


def vertices(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + vertices(t.left) + vertices(t.right)


def leaves(t: Tree) -> int:
    return vertices(t) + 1


def depth(t: Tree) -> int:
    """Maximal number of vertices on a root-to-leaf chain."""
    if t is None:
        return 0
    return 1 + max(depth(t.left), depth(t.right))


@dataclass(frozen=True)
class TreeStats:
    internal_vertices: int
    leaves: int
    depth: int


def stats(t: Tree) -> TreeStats:
    return TreeStats(vertices(t), leaves(t), depth(t))


# ---------------------------------------------------------------------------
# Enumeration


def catalan(k: int) -> int:
    """Catalan numbers indexed so that catalan(1) = catalan(2) = 1."""
    if k < 1:
        raise ValueError("index must be >= 1")
    return math.comb(2 * k - 2, k - 1) // k


def expected_tree_count(n: int, x_size: int, w: int, flavor: str) -> int:
    """Closed count of n-vertex trees: shapes * decorations * edge types."""
    if n == 0:
        return 1
    k = 1 if flavor == "single" else 2
    return catalan(n + 1) * x_size ** n * w ** (k * (n - 1))


def dec_labels(x_size: int) -> list[str]:
    return [f"x{i}" for i in range(x_size)]


def enumerate_trees(n: int, x_size: int, w: int, flavor: str = "single") -> list[Tree]:
    """All trees with ``n`` internal vertices, decorations from a canonical
    ``x_size``-element set and non-sentinel edge types over ``{0..w-1}``
    (or pairs thereof), in canonical (serialization) order."""
    if flavor not in ("single", "pair"):
        raise ValueError("flavor must be 'single' or 'pair'")
    if n < 0 or x_size < 1 or w < 1:
        raise ValueError("n >= 0, x_size >= 1 and w >= 1 required")
    if n > 6 or expected_tree_count(n, x_size, w, flavor) > 500_000:
        raise ResourceBoundError("tree enumeration bound exceeded")
    if flavor == "single":
        types = list(range(w))
    else:
        types = [(a, b) for a in range(w) for b in range(w)]
    decs = dec_labels(x_size)

    def gen(k: int) -> list[Tree]:
        if k == 0:
            return [Leaf]
        out = []
        for i in range(k):
            for left in gen(i):
                for right in gen(k - 1 - i):
                    lts = [None] if left is None else types
                    rts = [None] if right is None else types
                    for dec in decs:
                        for lt in lts:
                            for rt in rts:
                                out.append(Node(dec, lt, left, rt, right))
        return out

    return sorted(gen(n), key=serialize)


# ---------------------------------------------------------------------------
# Codec


def _type_text(et) -> str:
    if et is None:
        return "."
    if isinstance(et, tuple):
        return f"{et[0]}:{et[1]}"
    return str(et)


def serialize(t: Tree) -> str:
    """Canonical text form; ``parse`` inverts it."""
    if t is None:
        return "_"
    return (f"({t.dec} {_type_text(t.lt)} {_type_text(t.rt)} "
            f"{serialize(t.left)} {serialize(t.right)})")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append((ch, i))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()":
            j += 1
        tokens.append((text[i:j], i))
        i = j
    return tokens


def _parse_type(token: str, pos: int):
    if token == ".":
        return None
    if ":" in token:
        a, _, b = token.partition(":")
        try:
            return (int(a), int(b))
        except ValueError:
            raise ParseError(f"bad pair type {token!r}", pos) from None
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad edge type {token!r}", pos) from None


def parse(text: str) -> Tree:
    """Parse the textual grammar; raises ParseError with a position."""
    tokens = _tokenize(text)
    k = 0

    def need(what: str):
        if k >= len(tokens):
            raise ParseError(f"expected {what}, got end of input", len(text))
        return tokens[k]

    def node() -> Tree:
        nonlocal k
        tok, pos = need("a tree")
        if tok == "_":
            k += 1
            return Leaf
        if tok != "(":
            raise ParseError(f"expected '(' or '_', got {tok!r}", pos)
        k += 1
        dec, dpos = need("a decoration")
        if dec in "()._":
            raise ParseError(f"bad decoration {dec!r}", dpos)
        k += 1
        lt_tok, lt_pos = need("a left edge type")
        k += 1
        rt_tok, rt_pos = need("a right edge type")
        k += 1
        left = node()
        right = node()
        close, cpos = need("')'")
        if close != ")":
            raise ParseError(f"expected ')', got {close!r}", cpos)
        k += 1
        lt = _parse_type(lt_tok, lt_pos)
        rt = _parse_type(rt_tok, rt_pos)
        try:
            return Node(dec, lt, left, rt, right)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None

    result = node()
    if k != len(tokens):
        raise ParseError(f"trailing input {tokens[k][0]!r}", tokens[k][1])
    return result


def to_json(t: Tree):
    """JSON mirror: null subtrees and null sentinel types; pair types as
    two-element arrays."""
    if t is None:
        return None

    def jt(et):
        return list(et) if isinstance(et, tuple) else et

    return {"dec": t.dec, "lt": jt(t.lt), "rt": jt(t.rt),
            "left": to_json(t.left), "right": to_json(t.right)}


def from_json(data) -> Tree:
    if data is None:
        return Leaf

    def jt(v):
        return tuple(v) if isinstance(v, list) else v

    return Node(data["dec"], jt(data["lt"]), from_json(data["left"]),
                jt(data["rt"]), from_json(data["right"]))
