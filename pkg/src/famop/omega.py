"""Finite parameter structures and their defining laws.

A parameter structure is a finite set ``{0..w-1}`` carrying binary
operation tables: two arrows (``la``/``ra``, written ``<-``/``->``) for
diassociative and duplicial semigroups, optionally two triangles
(``lt``/``rt``) for extended duplicial semigroups, or a single table for
plain magmas (associative, twist-associative, NAP+NAP', perm).

Everything is exact and exhaustive: law checks scan all triples of the
carrier, enumeration scans the full table space.  Two symbolic infinite
models are provided as well: twisted monomials and multisets of positive
integers.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError, ResourceBoundError
from .report import LawReport

Table = tuple[tuple[int, ...], ...]

OMEGA_KINDS = ("diassociative", "duplicial", "edus")
MAGMA_KINDS = ("associative", "twist_associative", "napnapprime", "perm")


# ---------------------------------------------------------------------------
# Carriers


def _freeze_table(rows, size: int) -> Table:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    if len(table) != size or any(len(row) != size for row in table):
        raise ValueError(f"table must be {size}x{size}")
    for row in table:
        for v in row:
            if not 0 <= v < size:
                raise ValueError(f"table entry {v} out of range 0..{size - 1}")
    return table


@dataclass(frozen=True)
class OmegaStructure:
    """Carrier {0..size-1} with arrow tables and optional triangle tables."""

    size: int
    left_arrow: Table
    right_arrow: Table
    left_tri: Table | None = None
    right_tri: Table | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be positive")
        object.__setattr__(self, "left_arrow", _freeze_table(self.left_arrow, self.size))
        object.__setattr__(self, "right_arrow", _freeze_table(self.right_arrow, self.size))
        if (self.left_tri is None) != (self.right_tri is None):
            raise ValueError("triangle tables must be both present or both absent")
        if self.left_tri is not None:
            object.__setattr__(self, "left_tri", _freeze_table(self.left_tri, self.size))
            object.__setattr__(self, "right_tri", _freeze_table(self.right_tri, self.size))

    @property
    def has_triangles(self) -> bool:
        return self.left_tri is not None

    def la(self, a: int, b: int) -> int:
        return self.left_arrow[a][b]

    def ra(self, a: int, b: int) -> int:
        return self.right_arrow[a][b]

    def lt(self, a: int, b: int) -> int:
        return self.left_tri[a][b]

    def rt(self, a: int, b: int) -> int:
        return self.right_tri[a][b]

    def flat(self) -> tuple[int, ...]:
        out = []
        for t in (self.left_arrow, self.right_arrow, self.left_tri, self.right_tri):
            if t is not None:
                out.extend(v for row in t for v in row)
        return tuple(out)

    def to_json(self) -> dict:
        out = {"size": self.size,
               "left": [list(r) for r in self.left_arrow],
               "right": [list(r) for r in self.right_arrow]}
        if self.has_triangles:
            out["ltri"] = [list(r) for r in self.left_tri]
            out["rtri"] = [list(r) for r in self.right_tri]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OmegaStructure":
        return cls(data["size"], data["left"], data["right"],
                   data.get("ltri"), data.get("rtri"))


@dataclass(frozen=True)
class Magma:
    """Carrier {0..size-1} with a single product table."""

    size: int
    table: Table

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be positive")
        object.__setattr__(self, "table", _freeze_table(self.table, self.size))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: dict) -> "Magma":
        return cls(data["size"], data["table"])


def ds_projections(size: int) -> OmegaStructure:
    """Arrows given by projections: a <- b = a and a -> b = b."""
    if size < 1:
        raise ValueError("size must be positive")
    left = tuple(tuple(a for _ in range(size)) for a in range(size))
    right = tuple(tuple(b for b in range(size)) for _ in range(size))
    return OmegaStructure(size, left, right)


def from_semigroup(m: Magma) -> OmegaStructure:
    """Use one magma product for both arrows."""
    return OmegaStructure(m.size, m.table, m.table)


# ---------------------------------------------------------------------------
# Laws.  A law is (id, lhs, rhs) where each side is a term tree: an integer
# 0..2 names a variable, a tuple (op, l, r) applies an operation table.

_DIA_LAWS = (
    ("D1", ("la", ("la", 0, 1), 2), ("la", 0, ("la", 1, 2))),
    ("D2", ("la", 0, ("la", 1, 2)), ("la", 0, ("ra", 1, 2))),
    ("D3", ("la", ("ra", 0, 1), 2), ("ra", 0, ("la", 1, 2))),
    ("D4", ("ra", ("ra", 0, 1), 2), ("ra", ("la", 0, 1), 2)),
    ("D5", ("ra", ("la", 0, 1), 2), ("ra", 0, ("ra", 1, 2))),
)

_DUP_LAWS = (
    ("U1", ("la", ("la", 0, 1), 2), ("la", 0, ("la", 1, 2))),
    ("U2", ("la", ("ra", 0, 1), 2), ("ra", 0, ("la", 1, 2))),
    ("U3", ("ra", ("ra", 0, 1), 2), ("ra", 0, ("ra", 1, 2))),
)

# Compatibility of the triangles with the arrows in an extended duplicial
# semigroup: E0/E00 are the absorption laws, E1/E2 govern lt, E3/E4 govern rt.
_EXT_LAWS = (
    ("E0", ("rt", 0, ("la", 1, 2)), ("rt", 0, 1)),
    ("E00", ("lt", ("ra", 0, 1), 2), ("lt", 1, 2)),
    ("E1", ("la", ("lt", 0, 1), ("lt", ("la", 0, 1), 2)), ("lt", 0, ("la", 1, 2))),
    ("E2", ("lt", ("lt", 0, 1), ("lt", ("la", 0, 1), 2)), ("lt", 1, 2)),
    ("E3", ("rt", ("rt", 0, ("ra", 1, 2)), ("rt", 1, 2)), ("rt", 0, 1)),
    ("E4", ("ra", ("rt", 0, ("ra", 1, 2)), ("rt", 1, 2)), ("rt", ("ra", 0, 1), 2)),
)

_ASSOC_LAWS = (
    ("A1", ("mul", ("mul", 0, 1), 2), ("mul", 0, ("mul", 1, 2))),
)

_TWIST_LAWS = (
    ("T1", ("mul", 0, ("mul", 1, 2)), ("mul", ("mul", 1, 0), 2)),
)

_NAP_LAWS = (
    ("N1", ("mul", 0, ("mul", 1, 2)), ("mul", 1, ("mul", 0, 2))),
    ("N2", ("mul", ("mul", 0, 1), 2), ("mul", ("mul", 1, 0), 2)),
)

_PERM_LAWS = (
    ("P1", ("mul", ("mul", 0, 1), 2), ("mul", 0, ("mul", 1, 2))),
    ("P2", ("mul", 0, ("mul", 1, 2)), ("mul", 1, ("mul", 0, 2))),
    ("P3", ("mul", ("mul", 0, 1), 2), ("mul", ("mul", 1, 0), 2)),
)

KIND_LAWS = {
    "diassociative": _DIA_LAWS,
    "duplicial": _DUP_LAWS,
    "edus": _DUP_LAWS + _EXT_LAWS,
    "associative": _ASSOC_LAWS,
    "twist_associative": _TWIST_LAWS,
    "napnapprime": _NAP_LAWS,
    "perm": _PERM_LAWS,
}


def _tables_of(s, kind: str) -> dict:
    if kind in MAGMA_KINDS:
        if not isinstance(s, Magma):
            raise PreconditionError(f"kind {kind!r} requires a Magma")
        return {"mul": s.table}
    if not isinstance(s, OmegaStructure):
        raise PreconditionError(f"kind {kind!r} requires an OmegaStructure")
    tables = {"la": s.left_arrow, "ra": s.right_arrow}
    if kind == "edus":
        if not s.has_triangles:
            raise PreconditionError("kind 'edus' requires both triangle tables")
        tables["lt"] = s.left_tri
        tables["rt"] = s.right_tri
    return tables


def _eval_term(term, tables, args):
    if isinstance(term, int):
        return args[term]
    op, l, r = term
    return tables[op][_eval_term(l, tables, args)][_eval_term(r, tables, args)]


def check_laws(s, kind: str) -> LawReport:
    """Check every defining identity of ``kind`` over all triples.

    Witnesses list every (law id, triple) violation; the scan never
    short-circuits.
    """
    if kind not in KIND_LAWS:
        raise ValueError(f"unknown kind {kind!r}")
    tables = _tables_of(s, kind)
    laws = KIND_LAWS[kind]
    report = LawReport(kind=kind)
    n = 0
    for args in itertools.product(range(s.size), repeat=3):
        for law_id, lhs, rhs in laws:
            n += 1
            if _eval_term(lhs, tables, args) != _eval_term(rhs, tables, args):
                report.add(law_id, args)
    report.details["instances"] = n
    return report


def _passes(s, kind: str) -> bool:
    """Short-circuit variant of check_laws (no witness collection)."""
    tables = _tables_of(s, kind)
    laws = KIND_LAWS[kind]
    for args in itertools.product(range(s.size), repeat=3):
        for _, lhs, rhs in laws:
            if _eval_term(lhs, tables, args) != _eval_term(rhs, tables, args):
                return False
    return True


@lru_cache(maxsize=8192)
def passes(s, kind: str) -> bool:
    """Cached law check used as a precondition guard elsewhere."""
    return _passes(s, kind)


def edus_passes(la: Table, ra: Table, lt: Table, rt: Table, size: int) -> bool:
    """Hand-inlined nine-law check for raw tables; used in hot scans."""
    for a in range(size):
        laa = la[a]
        raa = ra[a]
        lta = lt[a]
        rta = rt[a]
        for b in range(size):
            lab = la[b]
            rab = ra[b]
            ltb = lt[b]
            rtb = rt[b]
            for c in range(size):
                if laa[lab[c]] != la[laa[b]][c]:
                    return False
                if la[raa[b]][c] != raa[lab[c]]:
                    return False
                if ra[raa[b]][c] != raa[rab[c]]:
                    return False
                if rta[lab[c]] != rta[b]:
                    return False
                if lt[raa[b]][c] != ltb[c]:
                    return False
                x = lt[laa[b]][c]
                if la[lta[b]][x] != lta[lab[c]]:
                    return False
                if lt[lta[b]][x] != ltb[c]:
                    return False
                y = rta[rab[c]]
                if rt[y][rtb[c]] != rta[b]:
                    return False
                if ra[y][rtb[c]] != rt[raa[b]][c]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Enumeration


def size_bound(force: bool = False) -> int:
    bound = int(os.environ.get("FAMOP_MAX_SIZE", "3"))
    if force:
        bound = max(bound, 4)
    return bound


def _check_tables(tables: dict, laws, size: int) -> bool:
    rng = range(size)
    for args in itertools.product(rng, repeat=3):
        for _, lhs, rhs in laws:
            if _eval_term(lhs, tables, args) != _eval_term(rhs, tables, args):
                return False
    return True


def _scan_single(size: int, laws, op: str, context: dict | None = None):
    """All tables (lex order) satisfying the laws, other tables fixed."""
    base = dict(context or {})
    out = []
    for cells in itertools.product(range(size), repeat=size * size):
        table = tuple(cells[i * size:(i + 1) * size] for i in range(size))
        base[op] = table
        if _check_tables(base, laws, size):
            out.append(table)
    return out


def _search_single(size: int, laws, op: str, context: dict | None = None):
    """Backtracking version of _scan_single for larger carriers.

    Cells are filled in row-major order; a law instance prunes as soon as
    both sides are determined and differ.
    """
    base = dict(context or {})
    table = [[None] * size for _ in range(size)]
    base[op] = table
    triples = list(itertools.product(range(size), repeat=3))

    def peval(term, args):
        if isinstance(term, int):
            return args[term]
        o, l, r = term
        a = peval(l, args)
        if a is None:
            return None
        b = peval(r, args)
        if b is None:
            return None
        return base[o][a][b]

    def consistent() -> bool:
        for args in triples:
            for _, lhs, rhs in laws:
                a = peval(lhs, args)
                if a is None:
                    continue
                b = peval(rhs, args)
                if b is not None and a != b:
                    return False
        return True

    out = []
    cells = [(i, j) for i in range(size) for j in range(size)]

    def fill(k: int):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in table))
            return
        i, j = cells[k]
        for v in range(size):
            table[i][j] = v
            if consistent():
                fill(k + 1)
        table[i][j] = None

    fill(0)
    return out


def _tables_satisfying(size: int, laws, op: str, context: dict | None = None):
    if size <= 3:
        return _scan_single(size, laws, op, context)
    return _search_single(size, laws, op, context)


@lru_cache(maxsize=16)
def _assoc_tables(size: int) -> tuple[Table, ...]:
    return tuple(_tables_satisfying(size, _ASSOC_LAWS, "mul"))


def _duplicial_pair_ok(la: Table, ra: Table, size: int) -> bool:
    """U2 on a pair of associative tables (U1 and U3 hold by prefilter)."""
    for a in range(size):
        raa = ra[a]
        for b in range(size):
            lhs = la[raa[b]]
            lab = la[b]
            for c in range(size):
                if lhs[c] != raa[lab[c]]:
                    return False
    return True


def _diassociative_pair_ok(la: Table, ra: Table, size: int) -> bool:
    """D2..D5 on a pair of associative tables (D1 holds by prefilter)."""
    for a in range(size):
        laa = la[a]
        raa = ra[a]
        for b in range(size):
            lab = la[b]
            rab = ra[b]
            d3 = la[raa[b]]
            d4l = ra[raa[b]]
            d4r = ra[laa[b]]
            for c in range(size):
                if laa[lab[c]] != laa[rab[c]]:
                    return False
                if d3[c] != raa[lab[c]]:
                    return False
                if d4l[c] != d4r[c]:
                    return False
                if d4r[c] != raa[rab[c]]:
                    return False
    return True


def _index_classes(size: int, pairs) -> list[list[int]]:
    """Partition {0..size-1} by the closure of the given identifications."""
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for x in range(size):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def _lt_extra_ok(lt, la, size: int) -> bool:
    """E1 and E2 (E00 is guaranteed by construction of the candidates)."""
    for a in range(size):
        lta = lt[a]
        laa = la[a]
        for b in range(size):
            lab = la[b]
            t_ab = lta[b]
            lt_laab = lt[laa[b]]
            la_tab = la[t_ab]
            lt_tab = lt[t_ab]
            ltb = lt[b]
            for c in range(size):
                x = lt_laab[c]
                if la_tab[x] != lta[lab[c]]:
                    return False
                if lt_tab[x] != ltb[c]:
                    return False
    return True


def _rt_extra_ok(rt, ra, size: int) -> bool:
    """E3 and E4 (E0 is guaranteed by construction of the candidates)."""
    for a in range(size):
        rta = rt[a]
        raa = ra[a]
        for b in range(size):
            rtb = rt[b]
            rab = ra[b]
            t_ab = rta[b]
            rt_raab = rt[raa[b]]
            for c in range(size):
                y = rta[rab[c]]
                z = rtb[c]
                if rt[y][z] != t_ab:
                    return False
                if ra[y][z] != rt_raab[c]:
                    return False
    return True


def _triangle_candidates(size: int, la: Table, ra: Table, side: str) -> list[Table]:
    """All left (or right) triangle tables compatible with fixed arrows.

    The absorption law makes lt rows constant on the classes generated by
    b ~ ra[a][b] (resp. rt columns constant on b ~ la[b][c]), so only one
    row (column) per class is free; the remaining two laws are then
    filtered directly.
    """
    if side == "lt":
        classes = _index_classes(
            size, ((b, ra[a][b]) for a in range(size) for b in range(size)))
    else:
        classes = _index_classes(
            size, ((b, la[b][c]) for b in range(size) for c in range(size)))
    vectors = list(itertools.product(range(size), repeat=size))
    if len(vectors) ** len(classes) > 2_000_000:
        laws = [law for law in _EXT_LAWS
                if law[0] in (("E00", "E1", "E2") if side == "lt"
                              else ("E0", "E3", "E4"))]
        return _search_single(size, laws, side, {"la": la, "ra": ra})
    out = []
    for choice in itertools.product(vectors, repeat=len(classes)):
        cells = [None] * size
        for members, vec in zip(classes, choice):
            for b in members:
                cells[b] = vec
        if side == "lt":
            table = tuple(cells)
            if _lt_extra_ok(table, la, size):
                out.append(table)
        else:
            table = tuple(zip(*cells))  # chosen vectors are columns
            if _rt_extra_ok(table, ra, size):
                out.append(table)
    out.sort()
    return out


def enumerate_structures(size: int, kind: str, force: bool = False) -> list:
    """All labeled structures of the given kind and size, lex-ordered by
    flattened tables.

    The default size bound is 3; size 4 needs ``force=True`` (or a raised
    ``FAMOP_MAX_SIZE``) and can take minutes for the two-table kinds.
    """
    if kind not in KIND_LAWS:
        raise ValueError(f"unknown kind {kind!r}")
    if size < 1:
        raise ValueError("size must be positive")
    if size > size_bound(force):
        raise ResourceBoundError(
            f"size {size} exceeds the enumeration bound {size_bound(force)}; "
            f"pass force=True (size 4) or set FAMOP_MAX_SIZE")

    if kind in MAGMA_KINDS:
        tables = _tables_satisfying(size, KIND_LAWS[kind], "mul")
        return [Magma(size, t) for t in tables]

    # Both arrows of a diassociative or duplicial semigroup are associative
    # products (for diassociative the right arrow inherits it from D4+D5),
    # so associative tables are a sound prefilter; the remaining mixed laws
    # are then checked on every pair.
    assoc = _assoc_tables(size)
    pair_ok = (_diassociative_pair_ok if kind == "diassociative"
               else _duplicial_pair_ok)
    pairs = [(left, right) for left in assoc for right in assoc
             if pair_ok(left, right, size)]
    if kind != "edus":
        return [OmegaStructure(size, l, r) for l, r in pairs]

    out = []
    for left, right in pairs:
        lts = _triangle_candidates(size, left, right, "lt")
        if not lts:
            continue
        rts = _triangle_candidates(size, left, right, "rt")
        for lt in lts:
            for rt in rts:
                out.append(OmegaStructure(size, left, right, lt, rt))
    return out


# ---------------------------------------------------------------------------
# Symbolic infinite models


@dataclass(frozen=True)
class TwistedMonomial:
    """Element head.tail.X^powers of the free twisted semigroup on an
    alphabet; powers is a canonical multiset of alphabet letters."""

    head: object
    tail: object
    powers: tuple = ()

    def __post_init__(self):
        items = tuple(sorted((k, int(m)) for k, m in dict(self.powers).items() if m))
        if any(m < 0 for _, m in items):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "powers", items)

    @classmethod
    def generator(cls, d) -> "TwistedMonomial":
        return cls(d, d, ())


def _add_powers(p, q, *extra):
    acc: dict = {}
    for src in (p, q):
        for k, m in src:
            acc[k] = acc.get(k, 0) + m
    for k in extra:
        acc[k] = acc.get(k, 0) + 1
    return tuple(acc.items())


def twisted_product(x: TwistedMonomial, y: TwistedMonomial) -> TwistedMonomial:
    return TwistedMonomial(x.tail, y.tail, _add_powers(x.powers, y.powers, x.head, y.head))


@dataclass(frozen=True)
class NatMultiset:
    """Multiset of positive integers, possibly empty."""

    entries: tuple = ()

    def __post_init__(self):
        items = tuple(sorted(int(v) for v in self.entries))
        if any(v < 1 for v in items):
            raise ValueError("entries must be positive integers")
        object.__setattr__(self, "entries", items)


def multiset_product(x: NatMultiset, y: NatMultiset) -> NatMultiset:
    return NatMultiset((sum(x.entries) + 1,) + y.entries)


def model_product(model: str, x, y):
    """Product in one of the two symbolic models."""
    if model == "twisted_monomials":
        if not (isinstance(x, TwistedMonomial) and isinstance(y, TwistedMonomial)):
            raise TypeError("twisted_monomials expects TwistedMonomial operands")
        return twisted_product(x, y)
    if model == "nat_multisets":
        if not (isinstance(x, NatMultiset) and isinstance(y, NatMultiset)):
            raise TypeError("nat_multisets expects NatMultiset operands")
        return multiset_product(x, y)
    raise ValueError(f"unknown model {model!r}")
