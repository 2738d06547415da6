"""Finite-dimensional family algebras over exact rationals.

A family algebra is a basis of dimension d with, for every operation
symbol and every parameter pair, a d x d x d array of structure
constants: ``c[i][j][k]`` is the coefficient of basis vector k in the
product of basis vectors i and j.  All arithmetic is Fraction-exact and
all law checks run over every basis triple and parameter triple.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import omega as omega_mod
from .errors import PreconditionError
from .omega import OmegaStructure
from .report import LawReport

Vec = tuple  # coefficient tuple over the basis


def _zero_table(dim: int):
    z = Fraction(0)
    return tuple(tuple(tuple(z for _ in range(dim)) for _ in range(dim))
                 for _ in range(dim))


def _freeze_cube(raw, dim: int):
    cube = tuple(tuple(tuple(Fraction(v) for v in row) for row in plane)
                 for plane in raw)
    if len(cube) != dim or any(len(p) != dim for p in cube) or \
            any(len(r) != dim for p in cube for r in p):
        raise ValueError(f"structure constants must form a {dim}^3 array")
    return cube


@dataclass
class FamilyBilinear:
    """Structure constants indexed by operation symbol and parameter pair."""

    dim: int
    omega_size: int
    ops: dict = field(default_factory=dict)  # name -> {(a, b): cube}

    def __post_init__(self):
        frozen = {}
        for name, by_param in self.ops.items():
            frozen[name] = {tuple(p): _freeze_cube(cube, self.dim)
                            for p, cube in by_param.items()}
        params = set(itertools.product(range(self.omega_size), repeat=2))
        for name, by_param in frozen.items():
            if set(by_param) != params:
                raise ValueError(f"operation {name!r} must carry one table per "
                                 f"parameter pair")
        self.ops = frozen

    def cube(self, op: str, param):
        return self.ops[op][tuple(param)]

    def product(self, op: str, param, x: Vec, y: Vec) -> Vec:
        cube = self.cube(op, param)
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        coeff = xi * yj
                        for k, ck in enumerate(cube[i][j]):
                            if ck:
                                out[k] += coeff * ck
        return tuple(out)

    def basis(self, i: int) -> Vec:
        return tuple(Fraction(1 if k == i else 0) for k in range(self.dim))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "omega_size": self.omega_size,
            "ops": {name: {f"({a},{b})": [[[str(v) for v in row] for row in plane]
                                          for plane in cube]
                           for (a, b), cube in by_param.items()}
                    for name, by_param in self.ops.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "FamilyBilinear":
        ops = {}
        for name, by_param in data["ops"].items():
            parsed = {}
            for key, cube in by_param.items():
                a, b = key.strip("()").split(",")
                parsed[(int(a), int(b))] = [[[Fraction(v) for v in row]
                                             for row in plane] for plane in cube]
            ops[name] = parsed
        return cls(data["dim"], data["omega_size"], ops)


def zero_family(dim: int, omega_size: int, op_names) -> FamilyBilinear:
    cube = _zero_table(dim)
    params = itertools.product(range(omega_size), repeat=2)
    grid = {p: cube for p in params}
    return FamilyBilinear(dim, omega_size, {name: dict(grid) for name in op_names})


def constant_family(dim: int, omega_size: int, tables: dict) -> FamilyBilinear:
    """A family whose products do not depend on the parameters; the family
    laws then reduce to the classical laws of the underlying algebra."""
    ops = {}
    for name, cube in tables.items():
        cube = _freeze_cube(cube, dim)
        ops[name] = {p: cube for p in itertools.product(range(omega_size), repeat=2)}
    return FamilyBilinear(dim, omega_size, ops)


def random_family(dim: int, omega_size: int, op_names, seed: int,
                  max_denominator: int = 3) -> FamilyBilinear:
    """Seeded random structure constants with small denominators; the seed
    fixes the instance for reproducible searches."""
    rng = random.Random(seed)

    def entry():
        if rng.random() < 0.5:
            return Fraction(0)
        return Fraction(rng.randint(-2, 2), rng.randint(1, max_denominator))

    ops = {}
    for name in op_names:
        ops[name] = {p: [[[entry() for _ in range(dim)] for _ in range(dim)]
                         for _ in range(dim)]
                     for p in itertools.product(range(omega_size), repeat=2)}
    return FamilyBilinear(dim, omega_size, ops)


# ---------------------------------------------------------------------------
# Family law checks

_PREREQ = {
    "dendriform2": "diassociative",
    "prelie2": "perm",
    "assoc_family": "associative",
    "twisted_family": "twist_associative",
    "napnap_family": "napnapprime",
}

_FAMILY_OPS = {
    "dendriform2": ("prec", "succ"),
    "prelie2": ("rhd",),
    "assoc_family": ("mul",),
    "twisted_family": ("mul",),
    "napnap_family": ("mul",),
}


def _neg(x: Vec) -> Vec:
    return tuple(-v for v in x)


def _add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def _sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def check_family_laws(a: FamilyBilinear, structure, kind: str) -> LawReport:
    """Exact check of the family laws of ``kind`` on all basis and
    parameter triples.  The parameter structure must satisfy its matching
    laws first; a violation raises a precondition error naming the failed
    identity."""
    if kind not in _PREREQ:
        raise ValueError(f"unknown family kind {kind!r}")
    prereq = _PREREQ[kind]
    pre_report = omega_mod.check_laws(structure, prereq)
    if not pre_report.passed:
        law, args = pre_report.witnesses[0]
        raise PreconditionError(
            f"parameter structure fails {prereq} identity {law} at {args}")
    for name in _FAMILY_OPS[kind]:
        if name not in a.ops:
            raise ValueError(f"family of kind {kind!r} needs operation {name!r}")
    if a.omega_size != structure.size:
        raise ValueError("family and parameter structure sizes differ")

    if isinstance(structure, OmegaStructure):
        la, ra = structure.la, structure.ra
    else:
        la = ra = structure.mul

    def prec(p, q, u, v):
        return a.product("prec", (p, q), u, v)

    def succ(p, q, u, v):
        return a.product("succ", (p, q), u, v)

    def rhd(p, q, u, v):
        return a.product("rhd", (p, q), u, v)

    def mul(p, q, u, v):
        return a.product("mul", (p, q), u, v)

    report = LawReport(kind=kind)
    dim, w = a.dim, a.omega_size
    n = 0
    for i, j, k in itertools.product(range(dim), repeat=3):
        x, y, z = a.basis(i), a.basis(j), a.basis(k)
        for al, be, ga in itertools.product(range(w), repeat=3):
            args = (i, j, k, al, be, ga)
            if kind == "dendriform2":
                lhs = prec(la(al, be), ga, prec(al, be, x, y), z)
                rhs = _add(prec(al, la(be, ga), x, prec(be, ga, y, z)),
                           prec(al, ra(be, ga), x, succ(be, ga, y, z)))
                if lhs != rhs:
                    report.add("F1", args)
                lhs = prec(ra(al, be), ga, succ(al, be, x, y), z)
                rhs = succ(al, la(be, ga), x, prec(be, ga, y, z))
                if lhs != rhs:
                    report.add("F2", args)
                lhs = succ(al, ra(be, ga), x, succ(be, ga, y, z))
                rhs = _add(succ(ra(al, be), ga, succ(al, be, x, y), z),
                           succ(la(al, be), ga, prec(al, be, x, y), z))
                if lhs != rhs:
                    report.add("F3", args)
                n += 3
            elif kind == "prelie2":
                lhs = _sub(rhd(al, la(be, ga), x, rhd(be, ga, y, z)),
                           rhd(la(al, be), ga, rhd(al, be, x, y), z))
                rhs = _sub(rhd(be, la(al, ga), y, rhd(al, ga, x, z)),
                           rhd(la(be, al), ga, rhd(be, al, y, x), z))
                if lhs != rhs:
                    report.add("PL", args)
                n += 1
            elif kind == "assoc_family":
                lhs = mul(al, la(be, ga), x, mul(be, ga, y, z))
                rhs = mul(la(al, be), ga, mul(al, be, x, y), z)
                if lhs != rhs:
                    report.add("FA", args)
                n += 1
            elif kind == "twisted_family":
                lhs = mul(al, la(be, ga), x, mul(be, ga, y, z))
                rhs = _neg(mul(la(be, al), ga, mul(be, al, y, x), z))
                if lhs != rhs:
                    report.add("FT", args)
                n += 1
            else:  # napnap_family
                lhs = mul(al, la(be, ga), x, mul(be, ga, y, z))
                rhs = mul(be, la(al, ga), y, mul(al, ga, x, z))
                if lhs != rhs:
                    report.add("FN1", args)
                lhs = mul(la(al, be), ga, mul(al, be, x, y), z)
                rhs = mul(la(be, al), ga, mul(be, al, y, x), z)
                if lhs != rhs:
                    report.add("FN2", args)
                n += 2
    report.details["instances"] = n
    return report


# ---------------------------------------------------------------------------
# Graded basis algebras

_GRADED_OPS = {
    "dendriform": ("prec", "succ"),
    "duplicial": ("prec", "succ"),
    "prelie": ("rhd",),
}


@dataclass
class GradedBasisAlgebra:
    """Algebra on basis pairs (i, color) whose products are supported on
    the single color produced by the matching color operation."""

    base_dim: int
    omega_size: int
    ops: dict          # name -> dense (dim)^3 cube over the paired basis
    grades: dict       # name -> w x w table of result colors

    @property
    def dim(self) -> int:
        return self.base_dim * self.omega_size

    def index(self, i: int, color: int) -> int:
        return i * self.omega_size + color

    def product(self, op: str, x: Vec, y: Vec) -> Vec:
        cube = self.ops[op]
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        coeff = xi * yj
                        for k, ck in enumerate(cube[i][j]):
                            if ck:
                                out[k] += coeff * ck
        return tuple(out)

    def basis(self, n: int) -> Vec:
        return tuple(Fraction(1 if k == n else 0) for k in range(self.dim))


def make_graded(a: FamilyBilinear, structure, kind: str) -> GradedBasisAlgebra:
    """Tensor the family with its parameter set: basis (i, color), with
    (x (x) al) op (y (x) be) = (x op_{al,be} y) (x) (al op be)."""
    if kind not in _GRADED_OPS:
        raise ValueError(f"unknown graded kind {kind!r}")
    names = _GRADED_OPS[kind]
    for name in names:
        if name not in a.ops:
            raise ValueError(f"kind {kind!r} needs operation {name!r}")
    w = a.omega_size
    if isinstance(structure, OmegaStructure):
        grade_tables = {"prec": structure.left_arrow, "succ": structure.right_arrow}
    else:
        grade_tables = {name: structure.table for name in names}
    if structure.size != w:
        raise ValueError("family and parameter structure sizes differ")
    dim = a.dim * w
    ops = {}
    grades = {}
    for name in names:
        grade = grade_tables[name]
        cube = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, al in itertools.product(range(a.dim), range(w)):
            row = i * w + al
            for j, be in itertools.product(range(a.dim), range(w)):
                col = j * w + be
                target_color = grade[al][be]
                source = a.cube(name, (al, be))[i][j]
                dest = cube[row][col]
                for k in range(a.dim):
                    if source[k]:
                        dest[k * w + target_color] += source[k]
        ops[name] = tuple(tuple(tuple(r) for r in plane) for plane in cube)
        grades[name] = grade
    return GradedBasisAlgebra(a.dim, w, ops, grades)


def color_support_ok(g: GradedBasisAlgebra) -> bool:
    """Every product of colors al, be is supported on the color the grade
    table prescribes."""
    w = g.omega_size
    for name, cube in g.ops.items():
        grade = g.grades[name]
        for row in range(g.dim):
            al = row % w
            for col in range(g.dim):
                be = col % w
                target = grade[al][be]
                for k, v in enumerate(cube[row][col]):
                    if v and k % w != target:
                        return False
    return True


_CLASSIC_OPS = {
    "dendriform": ("prec", "succ"),
    "duplicial": ("prec", "succ"),
    "prelie": ("rhd",),
    "associative": ("mul",),
}


def _dense_tables(b, names):
    if isinstance(b, GradedBasisAlgebra):
        source = b.ops
        dim = b.dim
    elif isinstance(b, FamilyBilinear):
        if b.omega_size != 1:
            raise ValueError("classical checks need a graded algebra or a "
                             "single-parameter family")
        source = {name: by_param[(0, 0)] for name, by_param in b.ops.items()}
        dim = b.dim
    else:
        raise TypeError("expected GradedBasisAlgebra or FamilyBilinear")
    if set(names) <= set(source):
        return dim, [source[n] for n in names]
    if len(source) == len(names):
        return dim, [source[n] for n in sorted(source)]
    raise ValueError(f"operations {names} not found")


def check_classic_laws(b, kind: str) -> LawReport:
    """Classical (parameter-free) laws on all basis triples, exact."""
    if kind not in _CLASSIC_OPS:
        raise ValueError(f"unknown classical kind {kind!r}")
    dim, tables = _dense_tables(b, _CLASSIC_OPS[kind])

    def prod(cube, x: Vec, y: Vec) -> Vec:
        out = [Fraction(0)] * dim
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        coeff = xi * yj
                        for k, ck in enumerate(cube[i][j]):
                            if ck:
                                out[k] += coeff * ck
        return tuple(out)

    def basis(n: int) -> Vec:
        return tuple(Fraction(1 if k == n else 0) for k in range(dim))

    report = LawReport(kind=f"classic_{kind}")
    n_checked = 0
    for i, j, k in itertools.product(range(dim), repeat=3):
        x, y, z = basis(i), basis(j), basis(k)
        if kind == "associative":
            mul = tables[0]
            if prod(mul, prod(mul, x, y), z) != prod(mul, x, prod(mul, y, z)):
                report.add("assoc", (i, j, k))
            n_checked += 1
        elif kind == "prelie":
            rhd = tables[0]
            lhs = _sub(prod(rhd, x, prod(rhd, y, z)), prod(rhd, prod(rhd, x, y), z))
            rhs = _sub(prod(rhd, y, prod(rhd, x, z)), prod(rhd, prod(rhd, y, x), z))
            if lhs != rhs:
                report.add("prelie", (i, j, k))
            n_checked += 1
        else:
            prec, succ = tables
            if kind == "dendriform":
                lhs = prod(prec, prod(prec, x, y), z)
                rhs = _add(prod(prec, x, prod(prec, y, z)),
                           prod(prec, x, prod(succ, y, z)))
                if lhs != rhs:
                    report.add("C1", (i, j, k))
                if prod(prec, prod(succ, x, y), z) != prod(succ, x, prod(prec, y, z)):
                    report.add("C2", (i, j, k))
                lhs = prod(succ, x, prod(succ, y, z))
                rhs = _add(prod(succ, prod(succ, x, y), z),
                           prod(succ, prod(prec, x, y), z))
                if lhs != rhs:
                    report.add("C3", (i, j, k))
            else:  # duplicial
                if prod(prec, prod(prec, x, y), z) != prod(prec, x, prod(prec, y, z)):
                    report.add("C1", (i, j, k))
                if prod(prec, prod(succ, x, y), z) != prod(succ, x, prod(prec, y, z)):
                    report.add("C2", (i, j, k))
                if prod(succ, x, prod(succ, y, z)) != prod(succ, prod(succ, x, y), z):
                    report.add("C3", (i, j, k))
            n_checked += 3
    report.details["instances"] = n_checked
    return report


# ---------------------------------------------------------------------------
# Stock algebras with nonzero triple products


def zinbiel_truncated(dim: int = 3, omega_size: int = 1) -> FamilyBilinear:
    """The one-generator half-shuffle algebra truncated in degree:
    e_m prec e_n = binom(m+n-1, n) e_{m+n}, and succ is its flip.  Both
    products are nonzero with nonzero triple products, which makes its
    graded algebra sensitive to every arrow identity."""
    z = Fraction(0)
    prec = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    succ = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            m, n = i + 1, j + 1
            if m + n <= dim:
                prec[i][j][m + n - 1] = Fraction(math.comb(m + n - 1, n))
                succ[i][j][m + n - 1] = Fraction(math.comb(m + n - 1, m))
    return constant_family(dim, omega_size, {"prec": prec, "succ": succ})


def _rooted_trees(max_vertices: int):
    """Canonical rooted trees (nested sorted tuples) with 1..max vertices."""
    levels = [[()]]
    for _ in range(2, max_vertices + 1):
        found = set()
        for t in levels[-1]:
            for path in _tree_vertices(t):
                found.add(_tree_attach(t, path, ()))
        levels.append(sorted(found))
    out = []
    for level in levels:
        out.extend(level)
    return out


def _tree_vertices(t, prefix=()):
    yield prefix
    for i, child in enumerate(t):
        yield from _tree_vertices(child, prefix + (i,))


def _tree_size(t) -> int:
    return 1 + sum(_tree_size(c) for c in t)


def _tree_attach(t, path, sub):
    if not path:
        return tuple(sorted(t + (sub,)))
    i = path[0]
    return tuple(sorted(t[:i] + (_tree_attach(t[i], path[1:], sub),) + t[i + 1:]))


def prelie_rooted_truncated(max_vertices: int = 4, omega_size: int = 1) -> FamilyBilinear:
    """The rooted-tree algebra truncated by vertex count: x rhd y sums the
    attachments of x at every vertex of y, dropping trees that grow past
    the bound."""
    basis = _rooted_trees(max_vertices)
    index = {t: i for i, t in enumerate(basis)}
    dim = len(basis)
    z = Fraction(0)
    cube = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if _tree_size(x) + _tree_size(y) > max_vertices:
                continue
            for path in _tree_vertices(y):
                k = index[_tree_attach(y, path, x)]
                cube[i][j][k] += 1
    return constant_family(dim, omega_size, {"rhd": cube})
