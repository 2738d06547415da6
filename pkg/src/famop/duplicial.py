"""Family products on typed trees and their exhaustive axiom checkers.

Two-parameter products act on pair-typed trees: the left operand keeps
first components and has second components updated by the second
parameter, the grafted operand has first components updated by the first
parameter, and the new edge carries the parameter pair.  One-parameter
products act on single-typed trees by the right/left-spine recursion
driven by the four tables of an extended duplicial semigroup.

The checkers quantify over every tree triple up to a vertex bound and
every parameter tuple.  They run the product code once per decorated
shape with opaque symbolic edge types, then verify the resulting
per-edge type equations over all table assignments, so coverage is the
full concrete quantification at a fraction of the cost.  Every reported
witness is re-verified on concrete trees.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import trees
from .errors import PreconditionError
from .omega import OmegaStructure, passes
from .report import LawReport
from .trees import Node, serialize


# ---------------------------------------------------------------------------
# Type expressions (used by the symbolic runs of the product code)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    a: object
    b: object


class SymbolicOps:
    """Operation provider that builds expressions instead of table lookups."""

    @staticmethod
    def la(a, b):
        return App("la", a, b)

    @staticmethod
    def ra(a, b):
        return App("ra", a, b)

    @staticmethod
    def lt(a, b):
        return App("lt", a, b)

    @staticmethod
    def rt(a, b):
        return App("rt", a, b)


_SYM = SymbolicOps()
_OP_INDEX = {"la": 0, "ra": 1, "lt": 2, "rt": 3}


def _expr_vars(e, acc: list):
    if isinstance(e, Var):
        if e.name not in acc:
            acc.append(e.name)
    elif isinstance(e, App):
        _expr_vars(e.a, acc)
        _expr_vars(e.b, acc)


def _compile(e, index: dict):
    if isinstance(e, Var):
        i = index[e.name]
        return lambda tabs, env: env[i]
    if isinstance(e, App):
        fa = _compile(e.a, index)
        fb = _compile(e.b, index)
        k = _OP_INDEX[e.op]
        return lambda tabs, env: tabs[k][fa(tabs, env)][fb(tabs, env)]
    return lambda tabs, env: e


def _rename(e, mapping: dict):
    if isinstance(e, Var):
        if e.name not in mapping:
            mapping[e.name] = f"v{len(mapping)}"
        return Var(mapping[e.name])
    if isinstance(e, App):
        return App(e.op, _rename(e.a, mapping), _rename(e.b, mapping))
    return e


# ---------------------------------------------------------------------------
# Raw products, generic over the operation provider


def _retype(t, fn):
    if t is None:
        return None
    return Node(t.dec,
                None if t.lt is None else fn(t.lt), _retype(t.left, fn),
                None if t.rt is None else fn(t.rt), _retype(t.right, fn))


def _attach_rightmost(s: Node, edge_type, t: Node) -> Node:
    if s.right is None:
        return Node(s.dec, s.lt, s.left, edge_type, t)
    return Node(s.dec, s.lt, s.left, s.rt, _attach_rightmost(s.right, edge_type, t))


def _attach_leftmost(t: Node, edge_type, s: Node) -> Node:
    if t.left is None:
        return Node(t.dec, edge_type, s, t.rt, t.right)
    return Node(t.dec, t.lt, _attach_leftmost(t.left, edge_type, s), t.rt, t.right)


def _prec2_raw(s: Node, t: Node, a, b, ops) -> Node:
    s2 = _retype(s, lambda p: (p[0], ops.la(p[1], b)))
    t2 = _retype(t, lambda p: (ops.la(a, p[0]), p[1]))
    return _attach_rightmost(s2, (a, b), t2)


def _succ2_raw(s: Node, t: Node, a, b, ops) -> Node:
    s2 = _retype(s, lambda p: (p[0], ops.ra(p[1], b)))
    t2 = _retype(t, lambda p: (ops.ra(a, p[0]), p[1]))
    return _attach_leftmost(t2, (a, b), s2)


def _prec1_raw(t, w, u, ops):
    if t is None:
        return u
    if u is None:
        return t
    if t.right is None:
        return Node(t.dec, t.lt, t.left, w, u)
    return Node(t.dec, t.lt, t.left, ops.la(t.rt, w),
                _prec1_raw(t.right, ops.lt(t.rt, w), u, ops))


def _succ1_raw(t, w, u, ops):
    if u is None:
        return t
    if t is None:
        return u
    if u.left is None:
        return Node(u.dec, w, t, u.rt, u.right)
    return Node(u.dec, ops.ra(w, u.lt),
                _succ1_raw(t, ops.rt(w, u.lt), u.left, ops), u.rt, u.right)


# ---------------------------------------------------------------------------
# Public products


def _require_nonleaf(*ts):
    for t in ts:
        if t is None:
            raise PreconditionError("products are defined on non-leaf trees only")


def _require_duplicial(o: OmegaStructure):
    if not passes(o, "duplicial"):
        raise PreconditionError("parameter structure must satisfy the duplicial laws")


def _require_edus(o: OmegaStructure):
    if not o.has_triangles:
        raise PreconditionError("structure with triangle tables required")
    if not passes(o, "edus"):
        raise PreconditionError("parameter structure must satisfy the extended "
                                "duplicial laws")


def prec2(s: Node, t: Node, alpha: int, beta: int, o: OmegaStructure) -> Node:
    """Graft t at the rightmost leaf of s; new edge typed (alpha, beta),
    s edges (w, u) -> (w, u <- beta), t edges (w, u) -> (alpha <- w, u)."""
    _require_nonleaf(s, t)
    _require_duplicial(o)
    return _prec2_raw(s, t, alpha, beta, o)


def succ2(s: Node, t: Node, alpha: int, beta: int, o: OmegaStructure) -> Node:
    """Graft s at the leftmost leaf of t; new edge typed (alpha, beta),
    t edges (w, u) -> (alpha -> w, u), s edges (w, u) -> (w, u -> beta)."""
    _require_nonleaf(s, t)
    _require_duplicial(o)
    return _succ2_raw(s, t, alpha, beta, o)


def prec1(t: Node, u: Node, omega: int, e: OmegaStructure) -> Node:
    """One-parameter left product on single-typed trees over an extended
    duplicial semigroup."""
    _require_nonleaf(t, u)
    _require_edus(e)
    return _prec1_raw(t, omega, u, e)


def succ1(t: Node, u: Node, omega: int, e: OmegaStructure) -> Node:
    """One-parameter right product on single-typed trees."""
    _require_nonleaf(t, u)
    _require_edus(e)
    return _succ1_raw(t, omega, u, e)


# ---------------------------------------------------------------------------
# Law tables for the checkers


def _law_tp1(s, t, u, a, b, c, ops):
    lhs = _prec2_raw(_prec2_raw(s, t, a, b, ops), u, ops.la(a, b), c, ops)
    rhs = _prec2_raw(s, _prec2_raw(t, u, b, c, ops), a, ops.la(b, c), ops)
    return lhs, rhs


def _law_tp2(s, t, u, a, b, c, ops):
    lhs = _prec2_raw(_succ2_raw(s, t, a, b, ops), u, ops.ra(a, b), c, ops)
    rhs = _succ2_raw(s, _prec2_raw(t, u, b, c, ops), a, ops.la(b, c), ops)
    return lhs, rhs


def _law_tp3(s, t, u, a, b, c, ops):
    lhs = _succ2_raw(s, _succ2_raw(t, u, b, c, ops), a, ops.ra(b, c), ops)
    rhs = _succ2_raw(_succ2_raw(s, t, a, b, ops), u, ops.ra(a, b), c, ops)
    return lhs, rhs


def _law_op1(s, t, u, a, b, c, ops):
    del c
    lhs = _prec1_raw(_prec1_raw(s, a, t, ops), b, u, ops)
    rhs = _prec1_raw(s, ops.la(a, b), _prec1_raw(t, ops.lt(a, b), u, ops), ops)
    return lhs, rhs


def _law_op2(s, t, u, a, b, c, ops):
    del c
    lhs = _succ1_raw(s, a, _prec1_raw(t, b, u, ops), ops)
    rhs = _prec1_raw(_succ1_raw(s, a, t, ops), b, u, ops)
    return lhs, rhs


def _law_op3(s, t, u, a, b, c, ops):
    del c
    lhs = _succ1_raw(s, a, _succ1_raw(t, b, u, ops), ops)
    rhs = _succ1_raw(_succ1_raw(s, ops.rt(a, b), t, ops), ops.ra(a, b), u, ops)
    return lhs, rhs


_MODE_LAWS = {
    "two_param": (("TP1", _law_tp1), ("TP2", _law_tp2), ("TP3", _law_tp3)),
    "one_param": (("OP1", _law_op1), ("OP2", _law_op2), ("OP3", _law_op3)),
}
_MODE_PARAMS = {"two_param": 3, "one_param": 2}


# ---------------------------------------------------------------------------
# Symbolic obligations


@dataclass
class _Obligation:
    law_id: str
    lhs: object
    rhs: object
    var_names: tuple
    f_lhs: object
    f_rhs: object
    origin: tuple  # (s_sym, t_sym, u_sym, param names)


def _fresh_types(t, prefix: str, counter: list, pair: bool):
    if t is None:
        return None

    def fresh():
        k = counter[0]
        counter[0] += 1
        if pair:
            return (Var(f"{prefix}{k}f"), Var(f"{prefix}{k}s"))
        return Var(f"{prefix}{k}")

    lt = None if t.lt is None else fresh()
    left = _fresh_types(t.left, prefix, counter, pair)
    rt = None if t.rt is None else fresh()
    right = _fresh_types(t.right, prefix, counter, pair)
    return Node(t.dec, lt, left, rt, right)


def _collect_type_pairs(l, r, out: list):
    if (l is None) != (r is None):
        raise AssertionError("shape mismatch in symbolic law evaluation")
    if l is None:
        return
    if l.dec != r.dec:
        raise AssertionError("decoration mismatch in symbolic law evaluation")
    for el, er in ((l.lt, r.lt), (l.rt, r.rt)):
        if (el is None) != (er is None):
            raise AssertionError("sentinel mismatch in symbolic law evaluation")
        if el is None:
            continue
        if isinstance(el, tuple):
            out.append((el[0], er[0]))
            out.append((el[1], er[1]))
        else:
            out.append((el, er))
    _collect_type_pairs(l.left, r.left, out)
    _collect_type_pairs(l.right, r.right, out)


_OBLIGATION_CACHE: dict = {}


def _obligations(mode: str, max_vertices: int, x_size: int) -> list[_Obligation]:
    key = (mode, max_vertices, x_size)
    if key in _OBLIGATION_CACHE:
        return _OBLIGATION_CACHE[key]
    pair = mode == "two_param"
    flavor = "pair" if pair else "single"
    shapes = []
    for n in range(1, max_vertices + 1):
        shapes.extend(trees.enumerate_trees(n, x_size, 1, flavor))
    params = [Var("pa"), Var("pb"), Var("pc")]
    seen = set()
    out = []
    for s0 in shapes:
        s = _fresh_types(s0, "s", [0], pair)
        for t0 in shapes:
            t = _fresh_types(t0, "t", [0], pair)
            for u0 in shapes:
                u = _fresh_types(u0, "u", [0], pair)
                for law_id, law in _MODE_LAWS[mode]:
                    lhs, rhs = law(s, t, u, *params, _SYM)
                    pairs: list = []
                    _collect_type_pairs(lhs, rhs, pairs)
                    for e1, e2 in pairs:
                        if e1 == e2:
                            continue
                        mapping: dict = {}
                        ck = (_rename(e1, mapping), _rename(e2, mapping))
                        if ck in seen:
                            continue
                        seen.add(ck)
                        names: list = []
                        _expr_vars(e1, names)
                        _expr_vars(e2, names)
                        index = {nm: i for i, nm in enumerate(names)}
                        out.append(_Obligation(
                            law_id, e1, e2, tuple(names),
                            _compile(e1, index), _compile(e2, index),
                            (s, t, u, ("pa", "pb", "pc"))))
    _OBLIGATION_CACHE[key] = out
    return out


def _instantiate(t, env: dict):
    if t is None:
        return None

    def val(e):
        if isinstance(e, Var):
            return env.get(e.name, 0)
        if isinstance(e, tuple):
            return (val(e[0]), val(e[1]))
        return e

    lt = None if t.lt is None else val(t.lt)
    rt = None if t.rt is None else val(t.rt)
    return Node(t.dec, lt, _instantiate(t.left, env), rt, _instantiate(t.right, env))


def _concrete_witness(mode: str, ob: _Obligation, env: dict, o: OmegaStructure):
    s_sym, t_sym, u_sym, pnames = ob.origin
    s = _instantiate(s_sym, env)
    t = _instantiate(t_sym, env)
    u = _instantiate(u_sym, env)
    ps = tuple(env.get(p, 0) for p in pnames)
    law = dict(_MODE_LAWS[mode])[ob.law_id]
    lhs, rhs = law(s, t, u, *ps, o)
    if lhs == rhs:
        raise AssertionError("symbolic failure did not reproduce concretely")
    n_params = _MODE_PARAMS[mode]
    return (serialize(s), serialize(t), serialize(u)) + ps[:n_params]


def _check_factored(mode: str, o: OmegaStructure, x_size: int, max_vertices: int,
                    first_witness_only: bool) -> LawReport:
    report = LawReport(kind=mode)
    obligations = _obligations(mode, max_vertices, x_size)
    tabs = (o.left_arrow, o.right_arrow, o.left_tri, o.right_tri)
    w = o.size
    for ob in obligations:
        f1, f2 = ob.f_lhs, ob.f_rhs
        for env_vals in itertools.product(range(w), repeat=len(ob.var_names)):
            if f1(tabs, env_vals) != f2(tabs, env_vals):
                env = dict(zip(ob.var_names, env_vals))
                report.add(ob.law_id, _concrete_witness(mode, ob, env, o))
                if first_witness_only:
                    report.details["obligations"] = len(obligations)
                    return report
                break  # one witness per obligation is enough for a report
    report.details["obligations"] = len(obligations)
    report.details["max_vertices"] = max_vertices
    return report


# ---------------------------------------------------------------------------
# Graded elements and the graded checker


@dataclass(frozen=True)
class GradedElement:
    """A tree together with a color of the parameter set."""

    tree: Node
    color: int


def graded_prec(x: GradedElement, y: GradedElement, e: OmegaStructure) -> GradedElement:
    return GradedElement(_prec1_raw(x.tree, e.lt(x.color, y.color), y.tree, e),
                         e.la(x.color, y.color))


def graded_succ(x: GradedElement, y: GradedElement, e: OmegaStructure) -> GradedElement:
    return GradedElement(_succ1_raw(x.tree, e.rt(x.color, y.color), y.tree, e),
                         e.ra(x.color, y.color))


def _check_graded(o: OmegaStructure, x_size: int, max_vertices: int,
                  first_witness_only: bool) -> LawReport:
    report = LawReport(kind="graded")
    elements = []
    for n in range(1, max_vertices + 1):
        for t in trees.enumerate_trees(n, x_size, o.size, "single"):
            for c in range(o.size):
                elements.append(GradedElement(t, c))
    cache: dict = {}

    def prod(op, x, y):
        key = (op, x, y)
        got = cache.get(key)
        if got is None:
            got = graded_prec(x, y, o) if op == 0 else graded_succ(x, y, o)
            cache[key] = got
        return got

    n_checked = 0
    for x, y, z in itertools.product(elements, repeat=3):
        checks = (
            ("G1", prod(0, prod(0, x, y), z), prod(0, x, prod(0, y, z))),
            ("G2", prod(0, prod(1, x, y), z), prod(1, x, prod(0, y, z))),
            ("G3", prod(1, x, prod(1, y, z)), prod(1, prod(1, x, y), z)),
        )
        n_checked += 3
        for law_id, lhs, rhs in checks:
            if lhs != rhs:
                report.add(law_id, (serialize(x.tree), x.color,
                                    serialize(y.tree), y.color,
                                    serialize(z.tree), z.color))
                if first_witness_only:
                    report.details["instances"] = n_checked
                    return report
    report.details["instances"] = n_checked
    report.details["max_vertices"] = max_vertices
    return report


def check_axioms(mode: str, o: OmegaStructure, x_size: int = 1,
                 max_vertices: int = 3,
                 first_witness_only: bool = False) -> LawReport:
    """Exhaustively check the defining equations of the given mode over all
    tree triples with at most ``max_vertices`` vertices each and all
    parameter tuples.

    ``two_param`` checks the three two-parameter laws on pair-typed trees,
    ``one_param`` the three one-parameter laws on single-typed trees, and
    ``graded`` the classical duplicial laws on tree-color pairs with the
    triangle-indexed products and arrow-composed colors.  The structure
    only needs the tables the mode reads; it may well fail its own laws,
    which is what the report then exhibits.
    """
    if not isinstance(o, OmegaStructure):
        raise PreconditionError("an OmegaStructure is required")
    if mode in ("one_param", "graded") and not o.has_triangles:
        raise PreconditionError(f"mode {mode!r} requires triangle tables")
    if mode == "graded":
        return _check_graded(o, x_size, max_vertices, first_witness_only)
    if mode not in _MODE_LAWS:
        raise ValueError(f"unknown mode {mode!r}")
    return _check_factored(mode, o, x_size, max_vertices, first_witness_only)


# ---------------------------------------------------------------------------
# Universal morphism out of the free algebra


class FreeAlgebraTarget:
    """The tree algebra itself as a target of the universal morphism."""

    def __init__(self, e: OmegaStructure):
        _require_edus(e)
        self.structure = e

    def prec(self, x, omega, y):
        return _prec1_raw(x, omega, y, self.structure)

    def succ(self, x, omega, y):
        return _succ1_raw(x, omega, y, self.structure)


def tree_generator(dec: str) -> Node:
    """The single-vertex tree on a decoration; the canonical embedding."""
    return Node(dec, None, None, None, None)


def free_morphism_eval(f, target, t: Node):
    """Evaluate the induced morphism on a tree by structural recursion:
    a single vertex maps to f(dec), and a vertex with subtrees maps to
    (f(T1) succ_a f(x)) prec_b f(T2) with the missing sides skipped."""
    if t is None:
        raise PreconditionError("the morphism is defined on non-leaf trees")
    fx = f if callable(f) else f.__getitem__

    def go(node: Node):
        left, right = node.left, node.right
        if left is None and right is None:
            return fx(node.dec)
        if left is None:
            return target.prec(fx(node.dec), node.rt, go(right))
        if right is None:
            return target.succ(go(left), node.lt, fx(node.dec))
        return target.prec(target.succ(go(left), node.lt, fx(node.dec)),
                           node.rt, go(right))

    return go(t)


def free_morphism_eval_alt(f, target, t: Node):
    """Same map computed with the other bracketing of the two-sided case,
    f(T1) succ_a (f(x) prec_b f(T2)); the two agree in any target whose
    middle law holds, which pins the uniqueness of the morphism."""
    if t is None:
        raise PreconditionError("the morphism is defined on non-leaf trees")
    fx = f if callable(f) else f.__getitem__

    def go(node: Node):
        left, right = node.left, node.right
        if left is None and right is None:
            return fx(node.dec)
        if left is None:
            return target.prec(fx(node.dec), node.rt, go(right))
        if right is None:
            return target.succ(go(left), node.lt, fx(node.dec))
        return target.succ(go(left), node.lt,
                           target.prec(fx(node.dec), node.rt, go(right)))

    return go(t)
