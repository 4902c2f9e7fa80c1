"""Algebra families: free path algebras, nil quotients, incidence algebras, named examples,
and random instances for the test and experiment suites."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .algebra import (
    AlgebraError,
    BasisElement,
    NotFiniteDimensional,
    PresentedAlgebra,
    Quiver,
    Relation,
    blow_up,
    build_quotient_basis,
    direct_product,
    from_structure_constants,
)
from .linalg import QQ, Field


class UnknownExample(KeyError):
    pass


# --------------------------------------------------------------------------
# quiver algebras


def _longest_path(q: Quiver) -> int:
    order = list(q.vertices)
    depth = {v: 0 for v in order}
    for _ in order:
        changed = False
        for _lab, s, t in q.arrows:
            if depth[t] < depth[s] + 1:
                depth[t] = depth[s] + 1
                changed = True
        if not changed:
            break
    return max(depth.values(), default=0)


def free_path_algebra(q: Quiver, field: Field = QQ) -> PresentedAlgebra:
    cycle = q.find_cycle()
    if cycle:
        raise NotFiniteDimensional("quiver has an oriented cycle: " + " -> ".join(map(str, cycle)))
    return build_quotient_basis(q, [], max(1, _longest_path(q)), field)


def quotient_path_algebra(q: Quiver, rels: Sequence[Relation], field: Field = QQ,
                          max_len: int | None = None) -> PresentedAlgebra:
    """Quotient by relations; for acyclic quivers max_len defaults to the longest path."""
    if max_len is None:
        if q.has_oriented_cycle():
            raise NotFiniteDimensional("give max_len for a quiver with cycles")
        max_len = max(1, _longest_path(q))
    return build_quotient_basis(q, rels, max_len, field)


def truncated_path_algebra(q: Quiver, length: int, field: Field = QQ) -> PresentedAlgebra:
    """kQ modulo all paths of the given length (finite-dimensional for any quiver)."""
    rels = [Relation(((field.one, p),)) for p in q.paths(length)]
    return build_quotient_basis(q, rels, max(1, length - 1), field)


# --------------------------------------------------------------------------
# posets and incidence algebras


@dataclass(frozen=True)
class Poset:
    elements: tuple
    relation: frozenset       # pairs (x, y) meaning x <= y, reflexive

    def __post_init__(self):
        els = set(self.elements)
        if len(els) != len(self.elements):
            raise ValueError("duplicate poset elements")
        for x, y in self.relation:
            if x not in els or y not in els:
                raise ValueError(f"pair ({x}, {y}) uses an unknown element")
        for x in self.elements:
            if (x, x) not in self.relation:
                raise ValueError(f"relation is not reflexive at {x}")
        for x, y in self.relation:
            if x != y and (y, x) in self.relation:
                raise ValueError(f"relation is not antisymmetric at ({x}, {y})")
        for x, y in self.relation:
            for y2, z in self.relation:
                if y == y2 and (x, z) not in self.relation:
                    raise ValueError(f"relation is not transitive at ({x}, {y}, {z})")

    @classmethod
    def from_cover(cls, elements: Sequence, less: Sequence[tuple]) -> "Poset":
        """Reflexive-transitive closure of the given strict pairs."""
        rel = {(x, x) for x in elements} | set(less)
        changed = True
        while changed:
            changed = False
            for x, y in list(rel):
                for y2, z in list(rel):
                    if y == y2 and (x, z) not in rel:
                        rel.add((x, z))
                        changed = True
        return cls(tuple(elements), frozenset(rel))

    def leq(self, x, y) -> bool:
        return (x, y) in self.relation

    def intervals(self) -> list:
        pos = {x: i for i, x in enumerate(self.elements)}
        return sorted(self.relation, key=lambda p: (pos[p[0]], pos[p[1]]))

    def covers(self) -> list:
        out = []
        for x, y in self.intervals():
            if x == y:
                continue
            if not any(z not in (x, y) and self.leq(x, z) and self.leq(z, y) for z in self.elements):
                out.append((x, y))
        return out


def chain(n: int) -> Poset:
    els = tuple(f"p{i}" for i in range(n))
    return Poset.from_cover(els, [(els[i], els[i + 1]) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset.from_cover(tuple(f"p{i}" for i in range(n)), [])


def diamond() -> Poset:
    return Poset.from_cover(("b", "l", "r", "t"), [("b", "l"), ("b", "r"), ("l", "t"), ("r", "t")])


def incidence_algebra(p: Poset, field: Field = QQ) -> PresentedAlgebra:
    """Basis E_xy for x <= y with E_xy E_yz = E_xz; E_xy has source y and target x."""
    pos = {x: i for i, x in enumerate(p.elements)}
    basis = []
    index = {}
    for x, y in p.intervals():
        name = str(x) if x == y else f"E[{x},{y}]"
        index[(x, y)] = len(basis)
        basis.append(BasisElement(name, pos[y], pos[x], x != y))
    table = {}
    for (x, y), i in index.items():
        for (y2, z), j in index.items():
            if y == y2:
                table[(i, j)] = ((index[(x, z)], field.one),)
    return PresentedAlgebra(field, list(p.elements), basis, table, origin="incidence",
                            meta={"poset": [list(r) for r in p.intervals()]})


def incidence_via_paths(p: Poset, field: Field = QQ) -> PresentedAlgebra:
    """The same algebra as a quotient of the Hasse-diagram path algebra by all parallel differences."""
    arrows = [(f"a[{y},{x}]", y, x) for x, y in p.covers()]
    q = Quiver(list(p.elements), arrows)
    longest = max(1, _longest_path(q))
    rels = []
    paths = [path for k in range(1, longest + 1) for path in q.paths(k)]
    groups: dict = {}
    for path in paths:
        groups.setdefault(q.path_ends(path), []).append(path)
    for plist in groups.values():
        first = plist[0]
        for other in plist[1:]:
            rels.append(Relation(((field.one, other), (-field.one, first))))
    return build_quotient_basis(q, rels, longest, field)


def _canonical(n: int, less: frozenset) -> tuple:
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted((perm[x], perm[y]) for x, y in less))
        if best is None or form < best:
            best = form
    return best


def posets_up_to_iso(n: int) -> list[Poset]:
    """All posets on n elements up to isomorphism.

    Every poset has a linear extension, so it suffices to look at strict orders
    contained in the natural order of range(n).
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        less = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        if any((i, j) in less and (j, k) in less and (i, k) not in less
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        key = _canonical(n, less)
        if key in seen:
            continue
        seen.add(key)
        els = tuple(f"p{i}" for i in range(n))
        out.append(Poset.from_cover(els, [(els[i], els[j]) for i, j in sorted(less)]))
    return out


# --------------------------------------------------------------------------
# named examples


def two_cycle(relations: Sequence[str], max_len: int, field: Field = QQ) -> PresentedAlgebra:
    q = Quiver(["e", "f"], [("x", "e", "f"), ("y", "f", "e")])
    return build_quotient_basis(q, [Relation.of(r) for r in relations], max_len, field)


def example2(field: Field = QQ) -> PresentedAlgebra:
    """2-cycle x: e -> f, y: f -> e with xy = yx = 0 (dimension 4)."""
    return two_cycle(["x y", "y x"], 2, field)


def example3(field: Field = QQ) -> PresentedAlgebra:
    """2-cycle with xy = 0 only (dimension 5, basis e, f, x, y, yx)."""
    return two_cycle(["x y"], 3, field)


def anick_green(field: Field = QQ) -> PresentedAlgebra:
    q = Quiver(["f0", "g0", "e1", "f1", "g1", "e2"], [
        ("x1", "f0", "e1"), ("y1", "g0", "e1"),
        ("x2", "e1", "f1"), ("y2", "e1", "g1"),
        ("x3", "f1", "e2"), ("y3", "g1", "e2"),
    ])
    rels = [Relation.of("x2 x1"), Relation.of("y2 y1"), Relation.of((1, "x3 x2"), (-1, "y3 y2"))]
    return build_quotient_basis(q, rels, 3, field)


def ladder_quiver(n: int) -> tuple[Quiver, list[Relation]]:
    """n diamonds e_k -> f_k, g_k -> e_(k+1), commuting, consecutive composites zero."""
    if n < 1:
        raise ValueError("ladder needs n >= 1")
    verts = []
    arrows = []
    for k in range(n):
        verts += [f"e{k}", f"f{k}", f"g{k}"]
        arrows += [
            (f"x{2 * k + 1}", f"e{k}", f"f{k}"), (f"x{2 * k + 2}", f"f{k}", f"e{k + 1}"),
            (f"y{2 * k + 1}", f"e{k}", f"g{k}"), (f"y{2 * k + 2}", f"g{k}", f"e{k + 1}"),
        ]
    verts.append(f"e{n}")
    rels = []
    for k in range(1, n + 1):
        rels.append(Relation.of((1, f"x{2 * k} x{2 * k - 1}"), (-1, f"y{2 * k} y{2 * k - 1}")))
        if k < n:
            rels.append(Relation.of(f"x{2 * k + 1} x{2 * k}"))
            rels.append(Relation.of(f"y{2 * k + 1} y{2 * k}"))
    return Quiver(verts, arrows), rels


def ladder(n: int, field: Field = QQ) -> PresentedAlgebra:
    q, rels = ladder_quiver(n)
    return build_quotient_basis(q, rels, 2 * n, field)


def a2(field: Field = QQ) -> PresentedAlgebra:
    return free_path_algebra(Quiver(["e", "f"], [("x", "e", "f")]), field)


def point(field: Field = QQ, name: str = "e") -> PresentedAlgebra:
    return build_quotient_basis(Quiver([name], []), [], 1, field)


def semisimple(n: int, field: Field = QQ) -> PresentedAlgebra:
    return build_quotient_basis(Quiver([f"e{i}" for i in range(n)], []), [], 1, field)


def dual_numbers(power: int = 2, field: Field = QQ) -> PresentedAlgebra:
    """k[t]/(t^power) as a one-loop quiver algebra."""
    q = Quiver(["e"], [("t", "e", "e")])
    return build_quotient_basis(q, [Relation.of(" ".join(["t"] * power))], power, field)


def matrix_algebra(n: int = 2, field: Field = QQ) -> PresentedAlgebra:
    """M_n(k) from its structure constants with the diagonal units as idempotent hints."""
    units = [(i, j) for i in range(n) for j in range(n)]
    idx = {u: k for k, u in enumerate(units)}
    table = {}
    for (i, j) in units:
        for (j2, l) in units:
            if j == j2:
                table[(idx[(i, j)], idx[(j2, l)])] = [(idx[(i, l)], 1)]
    hints = []
    for i in range(n):
        v = [0] * len(units)
        v[idx[(i, i)]] = 1
        hints.append(v)
    return from_structure_constants(field, len(units), table, idempotents=hints,
                                    vertex_names=[f"e{i}{i}" for i in range(1, n + 1)])


def upper_triangular(n: int, field: Field = QQ) -> PresentedAlgebra:
    """Upper-triangular n x n matrices from structure constants (idempotents found automatically)."""
    units = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {u: k for k, u in enumerate(units)}
    table = {}
    for (i, j) in units:
        for (j2, l) in units:
            if j == j2:
                table[(idx[(i, j)], idx[(j2, l)])] = [(idx[(i, l)], 1)]
    return from_structure_constants(field, len(units), table)


GALLERY = {
    "example2": example2,
    "example3": example3,
    "anick_green": anick_green,
    "ladder1": lambda field=QQ: ladder(1, field),
    "ladder2": lambda field=QQ: ladder(2, field),
    "ladder3": lambda field=QQ: ladder(3, field),
    "a2": a2,
    "k2": lambda field=QQ: semisimple(2, field),
    "dual_numbers": dual_numbers,
    "truncated_t3": lambda field=QQ: dual_numbers(3, field),
    "m2": lambda field=QQ: matrix_algebra(2, field),
    "incidence_chain3": lambda field=QQ: incidence_algebra(chain(3), field),
    "incidence_diamond": lambda field=QQ: incidence_algebra(diamond(), field),
}


def gallery(name: str, field: Field = QQ) -> PresentedAlgebra:
    key = name.replace("-", "_").replace("(", "").replace(")", "")
    if key.startswith("ladder") and key[6:].isdigit() and key not in GALLERY:
        return ladder(int(key[6:]), field)
    if key not in GALLERY:
        raise UnknownExample(name)
    return GALLERY[key](field=field)


def gallery_names() -> list[str]:
    return list(GALLERY)


# --------------------------------------------------------------------------
# random instances


def random_acyclic_quiver(rng: random.Random, max_vertices: int = 6, max_arrows: int = 10,
                          min_arrows: int = 0) -> Quiver:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    arrows = []
    if n > 1:
        m = rng.randint(min(min_arrows, max_arrows), max_arrows)
        for k in range(m):
            i, j = sorted(rng.sample(range(n), 2))
            arrows.append((f"a{k}", verts[i], verts[j]))
    return Quiver(verts, arrows)


def random_quiver(rng: random.Random, max_vertices: int = 3, max_arrows: int = 4,
                  loops: bool = True) -> Quiver:
    """Arbitrary small quiver, cycles and loops allowed."""
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    m = rng.randint(1 if n == 1 else 0, max_arrows)
    arrows = []
    for k in range(m):
        s, t = rng.randrange(n), rng.randrange(n)
        if s == t and not loops:
            continue
        arrows.append((f"a{k}", verts[s], verts[t]))
    return Quiver(verts, arrows)


def random_relations(q: Quiver, rng: random.Random, count: int, field: Field = QQ,
                     max_len: int | None = None) -> list[Relation]:
    """Random relations supported on nonempty parallel paths (monomials and binomials)."""
    top = max_len if max_len is not None else max(1, _longest_path(q))
    groups: dict = {}
    for k in range(1, top + 1):
        for p in q.paths(k):
            groups.setdefault(q.path_ends(p), []).append(p)
    keys = sorted(groups, key=str)
    rels = []
    if not keys:
        return rels
    for _ in range(count):
        plist = groups[rng.choice(keys)]
        size = min(len(plist), rng.choice([1, 1, 2]))
        terms = []
        for p in rng.sample(plist, size):
            c = 0
            while c == 0:
                c = rng.randint(-3, 3)
            terms.append((field(c), p))
        rels.append(Relation(tuple(terms)))
    return rels


def random_nil_quotient(rng: random.Random, max_vertices: int = 6, max_arrows: int = 10,
                        max_relations: int = 4, field: Field = QQ) -> PresentedAlgebra:
    q = random_acyclic_quiver(rng, max_vertices, max_arrows)
    rels = random_relations(q, rng, rng.randint(1, max_relations), field)
    return quotient_path_algebra(q, rels, field)


def random_small_algebra(rng: random.Random, max_dim: int = 12, field: Field = QQ,
                         attempts: int = 100) -> PresentedAlgebra:
    """A random finite-dimensional quiver algebra (cycles allowed) of dimension <= max_dim."""
    for _ in range(attempts):
        q = random_quiver(rng, 3, 4)
        length = rng.randint(2, 3)
        # dimension of the truncated algebra is the number of paths shorter than `length`
        if len(q.vertices) + sum(len(q.paths(k)) for k in range(1, length)) > max_dim:
            continue
        a = truncated_path_algebra(q, length, field)
        if rng.random() < 0.5:
            extra = random_relations(q, rng, 1, field, max_len=length - 1)
            try:
                a = build_quotient_basis(q, [Relation(((field.one, p),)) for p in q.paths(length)] + extra,
                                         max(1, length - 1), field)
            except AlgebraError:
                pass
        return a
    raise AlgebraError("no random algebra under the dimension limit")


def random_morita_pair(rng: random.Random, max_dim: int = 12, field: Field = QQ):
    """(B, U) with B a blow-up of a random algebra and U its original vertices, so B = sum BuB."""
    for _ in range(100):
        base = random_small_algebra(rng, max_dim, field) if rng.random() < 0.5 else \
            random_nil_quotient(rng, 3, 3, 2, field)
        v = rng.choice(list(base.vertices))
        b = blow_up(base, {f"{v}'": v})
        if b.dim <= 3 * max_dim:
            return b, list(base.vertices)
    raise AlgebraError("no Morita instance found")


def product(*algebras: PresentedAlgebra) -> PresentedAlgebra:
    return direct_product(list(algebras))


def relabel(a: PresentedAlgebra, prefix: str) -> PresentedAlgebra:
    """Copy of `a` with every vertex and basis name prefixed (for building products)."""
    basis = [BasisElement(prefix + b.name, b.source, b.target, b.radical, b.path) for b in a.basis]
    return PresentedAlgebra(a.field, [prefix + str(v) for v in a.vertices], basis, a.table,
                            origin="relabel")


def random_rational(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 2))
