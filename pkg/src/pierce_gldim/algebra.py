"""Finite-dimensional algebras with a distinguished complete set of primitive idempotents.

Composition follows the categorical convention: a path written ``x y`` means
"first y, then x", and a basis element with bidegree ``(e, f)`` lies in
``f A e`` (source ``e``, target ``f``).  Products ``b_i * b_j`` are nonzero
only when ``source(b_i) == target(b_j)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (
    QQ,
    Echelon,
    Field,
    PrimeField,
    inverse,
    kernel_rows,
    rank_rows,
    row_basis,
    transpose,
)


class AlgebraError(ValueError):
    pass


class NotFiniteDimensional(AlgebraError):
    pass


class InvalidRelation(AlgebraError):
    pass


class UnsupportedField(AlgebraError):
    pass


class NonBasicSemisimpleQuotient(AlgebraError):
    pass


class NotApproximatelyIdempotent(AlgebraError):
    pass


class NotIdempotent(AlgebraError):
    pass


# --------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (label, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise AlgebraError("arrow labels must differ from vertex names")
        vs = set(self.vertices)
        for label, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise AlgebraError(f"arrow {label!r} has an undeclared endpoint")

    @cached_property
    def arrow_map(self) -> dict:
        return {a[0]: (a[1], a[2]) for a in self.arrows}

    def path_ends(self, path: Sequence[str]) -> tuple[str, str]:
        """(source, target) of a nonempty path written right-to-left."""
        amap = self.arrow_map
        for lab in path:
            if lab not in amap:
                raise InvalidRelation(f"unknown arrow {lab!r}")
        for left, right in zip(path, path[1:]):
            if amap[right][1] != amap[left][0]:
                raise InvalidRelation(f"path {' '.join(path)} is not composable at {right}->{left}")
        return amap[path[-1]][0], amap[path[0]][1]

    def paths(self, length: int) -> list[tuple]:
        """All paths with `length` arrows, right-to-left label tuples, sorted."""
        if length == 0:
            return []
        out = [(a[0],) for a in self.arrows]
        amap = self.arrow_map
        for _ in range(length - 1):
            nxt = []
            for p in out:
                tgt = amap[p[0]][1]
                for lab, s, _t in self.arrows:
                    if s == tgt:
                        nxt.append((lab,) + p)
            out = nxt
        return sorted(out)

    def has_oriented_cycle(self) -> bool:
        return _find_cycle(self.vertices, [(s, t) for _, s, t in self.arrows]) is not None

    def find_cycle(self):
        return _find_cycle(self.vertices, [(s, t) for _, s, t in self.arrows])


def _find_cycle(vertices, edges):
    adj = {v: [] for v in vertices}
    for s, t in edges:
        adj[s].append(t)
    color = {v: 0 for v in vertices}
    stack_path: list = []

    def dfs(v):
        color[v] = 1
        stack_path.append(v)
        for w in adj[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = dfs(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in vertices:
        if color[v] == 0:
            found = dfs(v)
            if found:
                return found
    return None


@dataclass(frozen=True)
class Relation:
    terms: tuple  # ((coefficient, path-tuple), ...)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((c, tuple(p)) for c, p in self.terms))

    @classmethod
    def of(cls, *terms) -> "Relation":
        """Relation.of("x y") or Relation.of((1, "x y"), (-1, "z w"))."""
        out = []
        for t in terms:
            if isinstance(t, str):
                out.append((1, tuple(t.split())))
            else:
                c, p = t
                out.append((c, tuple(p.split()) if isinstance(p, str) else tuple(p)))
        return cls(tuple(out))

    def validate(self, q: Quiver) -> tuple[str, str]:
        if not self.terms:
            raise InvalidRelation("empty relation")
        ends = set()
        for _c, p in self.terms:
            if len(p) == 0:
                raise InvalidRelation("relations must be supported on nonempty paths")
            ends.add(q.path_ends(p))
        if len(ends) != 1:
            raise InvalidRelation(f"relation mixes non-parallel paths: {self.terms}")
        return ends.pop()


# --------------------------------------------------------------------------
# structure constants


class StructureConstants:
    """Multiplication table b_i * b_j = sum_k c_ijk b_k, stored sparsely."""

    def __init__(self, field: Field, dim: int, table: dict):
        self.field = field
        self.dim = dim
        self.table = {k: tuple(v) for k, v in table.items() if v}

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [self.field.zero] * self.dim
        nz_v = [(j, y) for j, y in enumerate(v) if y]
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in nz_v:
                prod = self.table.get((i, j))
                if prod:
                    xy = x * y
                    for k, c in prod:
                        out[k] = out[k] + xy * c
        return out

    def basis_vector(self, i: int) -> list:
        z, o = self.field.zero, self.field.one
        return [o if k == i else z for k in range(self.dim)]

    def left_matrix(self, u: Sequence) -> list[list]:
        """Matrix of x -> u*x (columns = images of basis vectors)."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return transpose(cols, self.dim)

    def right_matrix(self, u: Sequence) -> list[list]:
        cols = [self.mul(self.basis_vector(j), u) for j in range(self.dim)]
        return transpose(cols, self.dim)

    def is_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            ei = self.basis_vector(i)
            for j in range(n):
                ij = self.mul(ei, self.basis_vector(j))
                for k in range(n):
                    ek = self.basis_vector(k)
                    if self.mul(ij, ek) != self.mul(ei, self.mul(self.basis_vector(j), ek)):
                        return False
        return True

    def unit(self) -> list:
        """Solve for the two-sided unit; AlgebraError if none."""
        n = self.dim
        f = self.field
        rows = []
        rhs = []
        # u*b_j = b_j and b_j*u = b_j, linear in u
        for j in range(n):
            ej = self.basis_vector(j)
            left = [self.mul(self.basis_vector(i), ej) for i in range(n)]
            right = [self.mul(ej, self.basis_vector(i)) for i in range(n)]
            for k in range(n):
                rows.append([left[i][k] for i in range(n)])
                rhs.append(f.one if k == j else f.zero)
                rows.append([right[i][k] for i in range(n)])
                rhs.append(f.one if k == j else f.zero)
        aug = [r + [b] for r, b in zip(rows, rhs)]
        ker = kernel_rows(aug, f, n + 1)
        sol = next((v for v in ker if v[n]), None)
        if sol is None:
            raise AlgebraError("structure constants have no two-sided unit")
        scale = -1 / sol[n]
        u = [x * scale for x in sol[:n]]
        for j in range(n):
            ej = self.basis_vector(j)
            if self.mul(u, ej) != ej or self.mul(ej, u) != ej:
                raise AlgebraError("structure constants have no two-sided unit")
        return u

    def trace_form_radical(self) -> list[list]:
        """Dickson: J = {x : tr(L_{xy}) = 0 for all y}; characteristic 0 only."""
        if self.field.characteristic != 0:
            raise UnsupportedField("trace-form radical needs characteristic 0; "
                                   "supply a quiver presentation over F_p instead")
        n = self.dim
        tr = []
        for i in range(n):
            lm = self.left_matrix(self.basis_vector(i))
            tr.append(sum((lm[k][k] for k in range(n)), self.field.zero))
        # bilinear form B(b_i, b_j) = tr(L_{b_i b_j}) = sum_k c_ijk tr_k
        gram = []
        for i in range(n):
            row = []
            for j in range(n):
                s = self.field.zero
                for k, c in self.table.get((i, j), ()):
                    s = s + c * tr[k]
                row.append(s)
            gram.append(row)
        return kernel_rows(transpose(gram, n), self.field, n)


def _ideal_power_zero(sc: StructureConstants, span: list[list]) -> int | None:
    """Smallest m with span^m = 0 (span a two-sided ideal), or None if not nilpotent."""
    if not span:
        return 1
    power = span
    for m in range(1, sc.dim + 2):
        if not power:
            return m
        prods = [sc.mul(x, y) for x in power for y in span]
        power = row_basis(prods, sc.field, sc.dim)
    return None


# --------------------------------------------------------------------------
# presented algebra


@dataclass(frozen=True)
class BasisElement:
    name: str
    source: int
    target: int
    radical: bool
    path: tuple | None = None


class PresentedAlgebra:
    """A split algebra A with a complete set E of orthogonal primitive idempotents.

    The basis is adapted to the Pierce decomposition: every basis element lies
    in one component fAe, each idempotent of E is itself a basis element, and the
    elements flagged `radical` span the Jacobson radical J(A).
    """

    def __init__(self, field: Field, vertices: Sequence[str], basis: Sequence[BasisElement],
                 table: dict, origin: str = "structure_constants", meta: dict | None = None):
        self.field = field
        self.vertices = tuple(vertices)
        self.basis = tuple(basis)
        self.sc = StructureConstants(field, len(self.basis), table)
        self.origin = origin
        self.meta = dict(meta or {})
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        idem = {}
        for i, b in enumerate(self.basis):
            if b.source == b.target and b.name == self.vertices[b.source]:
                idem[b.source] = i
        if len(idem) != len(self.vertices):
            raise AlgebraError("every vertex needs an idempotent basis element named after it")
        self.idem = tuple(idem[v] for v in range(len(self.vertices)))
        comps: dict = {}
        for i, b in enumerate(self.basis):
            comps.setdefault((b.source, b.target), []).append(i)
        self._components = {k: tuple(v) for k, v in comps.items()}
        self._opposite = None

    # basic data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def table(self) -> dict:
        return self.sc.table

    def __repr__(self):
        return f"PresentedAlgebra(dim={self.dim}, E={list(self.vertices)}, field={self.field.name})"

    def vertex_index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.vertices):
                raise AlgebraError(f"unknown idempotent index {v}")
            return v
        if v not in self.vindex:
            raise AlgebraError(f"unknown idempotent {v!r}")
        return self.vindex[v]

    def component(self, e, f) -> tuple:
        """Indices of basis elements in fAe (source e, target f)."""
        return self._components.get((self.vertex_index(e), self.vertex_index(f)), ())

    def vec(self, i: int) -> list:
        return self.sc.basis_vector(i)

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def one(self) -> list:
        v = self.zero()
        for i in self.idem:
            v[i] = self.field.one
        return v

    def idempotent(self, e) -> list:
        return self.vec(self.idem[self.vertex_index(e)])

    def mul(self, u, v) -> list:
        return self.sc.mul(u, v)

    def radical_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.radical]

    def element(self, **coeffs) -> list:
        """Vector from basis-name keyword coefficients, e.g. a.element(x=1, yx=2)."""
        names = {b.name: i for i, b in enumerate(self.basis)}
        v = self.zero()
        for k, c in coeffs.items():
            v[names[k]] = self.field(c)
        return v

    def index_of(self, name: str) -> int:
        for i, b in enumerate(self.basis):
            if b.name == name:
                return i
        raise KeyError(name)

    # derived algebras ---------------------------------------------------
    def opposite(self) -> "PresentedAlgebra":
        if self._opposite is None:
            basis = [BasisElement(b.name, b.target, b.source, b.radical,
                                  tuple(reversed(b.path)) if b.path else b.path) for b in self.basis]
            table = {(j, i): v for (i, j), v in self.table.items()}
            op = PresentedAlgebra(self.field, self.vertices, basis, table,
                                  origin=self.origin, meta={**self.meta, "opposite": True})
            op._opposite = self
            self._opposite = op
        return self._opposite

    # invariants ---------------------------------------------------------
    def check(self, associativity: bool = True) -> None:
        """Assert the PresentedAlgebra invariants; AlgebraError on failure."""
        one = self.one()
        for i in range(self.dim):
            bi = self.vec(i)
            if self.mul(one, bi) != bi or self.mul(bi, one) != bi:
                raise AlgebraError("sum of E is not the unit")
        for a_, ia in enumerate(self.idem):
            for b_, ib in enumerate(self.idem):
                prod = self.mul(self.vec(ia), self.vec(ib))
                want = self.vec(ia) if a_ == b_ else self.zero()
                if prod != want:
                    raise AlgebraError("E is not a set of orthogonal idempotents")
        for i, b in enumerate(self.basis):
            bi = self.vec(i)
            if self.mul(self.mul(self.vec(self.idem[b.target]), bi), self.vec(self.idem[b.source])) != bi:
                raise AlgebraError(f"basis element {b.name} is not in its Pierce component")
        if associativity and not self.sc.is_associative():
            raise AlgebraError("multiplication is not associative")
        rad = [self.vec(i) for i in self.radical_indices()]
        for r in rad:
            for i in range(self.dim):
                for prod in (self.mul(r, self.vec(i)), self.mul(self.vec(i), r)):
                    if any(prod[k] for k in range(self.dim) if not self.basis[k].radical):
                        raise AlgebraError("flagged radical is not a two-sided ideal")
        if _ideal_power_zero(self.sc, rad) is None:
            raise AlgebraError("flagged radical is not nilpotent")
        for v in range(len(self.vertices)):
            if not is_primitive(self, self.idempotent(v)):
                raise AlgebraError(f"idempotent {self.vertices[v]} is not primitive")


def _path_name(path: tuple) -> str:
    if all(len(p) == 1 for p in path):
        return "".join(path)
    return "*".join(path)


def build_quotient_basis(q: Quiver, rels: Iterable[Relation], max_len: int,
                         field: Field = QQ) -> PresentedAlgebra:
    """k Q / <rels>, truncated at paths of length max_len, with a finiteness certificate.

    Paths of length <= max_len + 1 are coordinates; the relation span is closed
    under left/right multiplication by arrows and row-reduced with longer paths
    (then lexicographically smaller paths) as pivots.  Surviving non-pivot paths
    of length <= max_len form the basis.
    """
    if max_len < 1:
        raise AlgebraError("max_len must be >= 1")
    rels = list(rels)
    for r in rels:
        r.validate(q)
    top = max_len + 1
    by_len = {n: q.paths(n) for n in range(1, top + 1)}
    # column order: longest paths first, then lexicographic
    cols: list[tuple] = []
    for n in range(top, 0, -1):
        cols.extend(by_len[n])
    col_of = {p: i for i, p in enumerate(cols)}
    ncols = len(cols)
    amap = q.arrow_map
    ends = {p: q.path_ends(p) for p in cols}
    z = field.zero

    def as_vec(terms: dict) -> list:
        v = [z] * ncols
        for p, c in terms.items():
            if p in col_of and c:
                v[col_of[p]] = v[col_of[p]] + c
        return v

    def vec_terms(v: list) -> dict:
        return {cols[i]: c for i, c in enumerate(v) if c}

    ideal = Echelon(field, ncols)
    queue = []
    for r in rels:
        terms: dict = {}
        for c, p in r.terms:
            terms[p] = terms.get(p, z) + field(c)
        v = as_vec(terms)
        if ideal.add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        terms = vec_terms(v)
        for lab, s, t in q.arrows:
            left: dict = {}
            right: dict = {}
            for p, c in terms.items():
                src, tgt = ends[p]
                if src == t:  # p * arrow
                    np_ = p + (lab,)
                    if len(np_) <= top:
                        right[np_] = c
                if tgt == s:  # arrow * p
                    np_ = (lab,) + p
                    if len(np_) <= top:
                        left[np_] = c
            for terms2 in (left, right):
                if terms2:
                    w = as_vec(terms2)
                    if ideal.add(w):
                        queue.append(w)
    pivots = set(ideal.pivots)
    survivors_top = [p for p in by_len[top] if col_of[p] not in pivots]
    if survivors_top:
        raise NotFiniteDimensional(
            f"paths of length {top} survive modulo the relations (e.g. {' '.join(survivors_top[0])}); "
            f"raise max_len or add relations")
    # basis: vertices, then surviving paths by length then lexicographic
    basis = [BasisElement(v, i, i, False, ()) for i, v in enumerate(q.vertices)]
    vidx = {v: i for i, v in enumerate(q.vertices)}
    path_basis = []
    for n in range(1, top):
        for p in by_len[n]:
            if col_of[p] not in pivots:
                s, t = ends[p]
                path_basis.append(p)
                basis.append(BasisElement(_path_name(p), vidx[s], vidx[t], True, p))
    nv = len(q.vertices)
    pos = {p: nv + i for i, p in enumerate(path_basis)}

    def normal_form(p: tuple) -> list:
        """Coordinates of the path p (len >= 1) in the quotient basis."""
        if len(p) > top:
            return []
        v = [z] * ncols
        v[col_of[p]] = field.one
        r = ideal.reduce(v)
        return [(pos[cols[i]], c) for i, c in enumerate(r) if c]

    table: dict = {}
    one = field.one
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bi.source != bj.target:
                continue
            if i < nv:
                table[(i, j)] = ((j, one),)
            elif j < nv:
                table[(i, j)] = ((i, one),)
            else:
                nf = normal_form(bi.path + bj.path)
                if nf:
                    table[(i, j)] = tuple(nf)
    names = set()
    for b in basis:
        if b.name in names:
            raise AlgebraError(f"basis name clash on {b.name!r}; use distinct arrow labels")
        names.add(b.name)
    return PresentedAlgebra(field, q.vertices, basis, table, origin="quiver",
                            meta={"quiver": q, "relations": tuple(rels), "max_len": max_len})


def pierce_component(a: PresentedAlgebra, e, f) -> list[str]:
    """Names of the basis elements spanning fAe."""
    return [a.basis[i].name for i in a.component(e, f)]


def corner_algebra(a: PresentedAlgebra, u: Iterable) -> PresentedAlgebra:
    """A(U) = e_U A e_U with unit e_U and idempotent set U (ambient order kept)."""
    members = sorted({a.vertex_index(x) for x in u})
    if not members:
        raise AlgebraError("corner needs a nonempty subset")
    if len(members) == len(a.vertices):
        return a
    vmap = {old: new for new, old in enumerate(members)}
    keep = [i for i, b in enumerate(a.basis) if b.source in vmap and b.target in vmap]
    imap = {old: new for new, old in enumerate(keep)}
    basis = [BasisElement(a.basis[i].name, vmap[a.basis[i].source], vmap[a.basis[i].target],
                          a.basis[i].radical, a.basis[i].path) for i in keep]
    table = {}
    for (i, j), prod in a.table.items():
        if i in imap and j in imap:
            table[(imap[i], imap[j])] = tuple((imap[k], c) for k, c in prod)
    meta = {k: v for k, v in a.meta.items() if k not in ("quiver", "relations")}
    meta["corner_of"] = tuple(a.vertices)
    return PresentedAlgebra(a.field, [a.vertices[m] for m in members], basis, table,
                            origin=a.origin, meta=meta)


@dataclass
class TwoSidedSpan:
    basis: list  # echelon vectors spanning sum_u A u A
    dim_h0: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def two_sided_span(a: PresentedAlgebra, u: Iterable) -> TwoSidedSpan:
    """Sum over u in U of AuA, and dim H_0 = dim A - dim of that span."""
    members = {a.vertex_index(x) for x in u}
    ech = Echelon(a.field, a.dim)
    for m in sorted(members):
        left = [i for i, b in enumerate(a.basis) if b.source == m]   # A u
        right = [j for j, b in enumerate(a.basis) if b.target == m]  # u A
        for i in left:
            for j in right:
                prod = a.table.get((i, j))
                if prod:
                    v = a.zero()
                    for k, c in prod:
                        v[k] = c
                    ech.add(v)
    return TwoSidedSpan(list(ech.rows), a.dim - len(ech))


def radical(a: PresentedAlgebra) -> list[list]:
    """Basis vectors of J(A) (the flagged radical basis elements)."""
    return [a.vec(i) for i in a.radical_indices()]


def nilpotency_index(a: PresentedAlgebra) -> int | None:
    return _ideal_power_zero(a.sc, radical(a))


def _in_span_of(sc: StructureConstants, v: Sequence, span: Sequence[Sequence]) -> bool:
    e = Echelon(sc.field, sc.dim)
    for w in span:
        e.add(w)
    return e.contains(v)


def lift_idempotent(a, eps: Sequence, nil_ideal: Sequence[Sequence], max_steps: int | None = None) -> list:
    """Lift eps (idempotent modulo a nilpotent ideal) via e <- 3e^2 - 2e^3.

    `a` may be a PresentedAlgebra or raw StructureConstants.
    """
    sc = a.sc if isinstance(a, PresentedAlgebra) else a
    eps = [sc.field(x) for x in eps]
    e2 = sc.mul(eps, eps)
    if not _in_span_of(sc, [x - y for x, y in zip(e2, eps)], nil_ideal):
        raise NotApproximatelyIdempotent("eps^2 - eps is not in the nil ideal")
    if max_steps is None:
        max_steps = max(1, sc.dim.bit_length() + 1)
    e = eps
    for _ in range(max_steps + 1):
        e2 = sc.mul(e, e)
        if e2 == e:
            return e
        e3 = sc.mul(e2, e)
        e = [3 * x - 2 * y for x, y in zip(e2, e3)]
    if sc.mul(e, e) == e:
        return e
    raise NotApproximatelyIdempotent("lifting did not converge; is the ideal nilpotent?")


def is_primitive(a: PresentedAlgebra, e: Sequence) -> bool:
    """eAe local, decided by dim(eAe / eJe) == 1 (split case)."""
    e = [a.field(x) for x in e]
    if a.mul(e, e) != e:
        raise NotIdempotent("element is not idempotent")
    if not any(e):
        return False
    corner = [a.mul(a.mul(e, a.vec(i)), e) for i in range(a.dim)]
    jcorner = [a.mul(a.mul(e, r), e) for r in radical(a)]
    return rank_rows(corner, a.field, a.dim) - rank_rows(jcorner, a.field, a.dim) == 1


def split_identity(a: PresentedAlgebra) -> list[list]:
    """The complete set of orthogonal primitive idempotents carried by `a`."""
    return [a.idempotent(v) for v in range(len(a.vertices))]


# --------------------------------------------------------------------------
# structure-constant input


def _min_poly_roots_q(sc: StructureConstants, x: list, quotient_rows, qdim: int):
    """Roots of the minimal polynomial of L_x on A/J (over Q) via sympy factoring."""
    import sympy

    # Krylov sequence of 1, x, x^2, ... modulo J
    one = sc.unit()
    powers = [one]
    red = quotient_rows
    vecs = [red(one)]
    while True:
        nxt = sc.mul(powers[-1], x)
        rv = red(nxt)
        ker = kernel_rows(transpose(vecs + [rv], len(rv)), sc.field, len(vecs) + 1)
        if ker:
            coeffs = ker[0]
            lead = coeffs[-1]
            poly = [c / lead for c in coeffs]  # low degree first, monic
            break
        powers.append(nxt)
        vecs.append(rv)
        if len(vecs) > qdim + 1:
            raise AlgebraError("minimal polynomial search overflow")
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(poly))
    _, factors = sympy.factor_list(expr, t, domain="QQ")
    roots = []
    for fac, mult in factors:
        p = sympy.Poly(fac, t)
        if p.degree() != 1:
            return None, len(poly) - 1
        if mult != 1:
            return None, len(poly) - 1
        c1, c0 = p.all_coeffs()
        r = -sympy.Rational(c0) / sympy.Rational(c1)
        roots.append(sc.field(f"{r.p}/{r.q}"))
    return roots, len(poly) - 1


def find_primitive_idempotents(sc: StructureConstants, rng: random.Random | None = None,
                               attempts: int = 20) -> list[list]:
    """Complete set of orthogonal primitive idempotents for a split basic algebra over Q.

    Lifts the coordinate idempotents of A/J(A) = k^n (found by splitting the
    minimal polynomial of a generic element) and orthogonalises them.
    """
    if sc.field.characteristic != 0:
        raise UnsupportedField("idempotent search on structure constants needs Q; "
                               "pass idempotent hints or use a quiver presentation")
    rng = rng or random.Random(0)
    f = sc.field
    n = sc.dim
    jbasis = row_basis(sc.trace_form_radical(), f, n)
    jech = Echelon(f, n)
    for r in jbasis:
        jech.add(r)
    qdim = n - len(jbasis)

    def red(v):
        return jech.reduce(v)

    # A/J must be commutative for a split basic quotient
    for i in range(n):
        for j in range(n):
            bi, bj = sc.basis_vector(i), sc.basis_vector(j)
            comm = [x - y for x, y in zip(sc.mul(bi, bj), sc.mul(bj, bi))]
            if any(red(comm)):
                raise NonBasicSemisimpleQuotient("A/J(A) is not commutative: a matrix block of size > 1")
    if qdim == 1:
        return [sc.unit()]
    for _ in range(attempts):
        x = [f(rng.randint(-9, 9)) for _ in range(n)]
        roots, deg = _min_poly_roots_q(sc, x, red, qdim)
        if roots is None:
            raise NonBasicSemisimpleQuotient("A/J(A) has a non-split factor (irreducible of degree > 1)")
        if deg == qdim:
            break
    else:
        raise NonBasicSemisimpleQuotient("could not find a generic element of A/J(A)")
    one = sc.unit()
    eps_list = []
    for i, lam in enumerate(roots):
        # Lagrange idempotent prod_{j != i} (x - l_j) / (l_i - l_j)
        e = one
        for j, mu in enumerate(roots):
            if j == i:
                continue
            shifted = [xv - mu * ov for xv, ov in zip(x, one)]
            e = sc.mul(e, shifted)
            inv = 1 / (lam - mu)
            e = [c * inv for c in e]
        eps_list.append(e)
    lifted: list[list] = []
    acc = [f.zero] * n
    for i, eps in enumerate(eps_list):
        if i == len(eps_list) - 1:
            e = [o - s for o, s in zip(one, acc)]
        else:
            comp = [o - s for o, s in zip(one, acc)]
            eps = sc.mul(sc.mul(comp, eps), comp)
            e = lift_idempotent(sc, eps, jbasis)
            # orthogonalise against previous lifts
            e = sc.mul(sc.mul(comp, e), comp)
            e = lift_idempotent(sc, e, jbasis)
        lifted.append(e)
        acc = [s + y for s, y in zip(acc, e)]
    return lifted


def from_structure_constants(field: Field, dim: int, table: dict,
                             idempotents: Sequence[Sequence] | None = None,
                             vertex_names: Sequence[str] | None = None,
                             basis_names: Sequence[str] | None = None) -> PresentedAlgebra:
    """Normalise a raw multiplication table to a Pierce-adapted PresentedAlgebra.

    `table` maps (i, j) to a list of (k, coeff).  The result carries
    ``meta["change_of_basis"]``: rows are the new basis vectors in old coordinates.
    """
    if isinstance(field, PrimeField):
        raise UnsupportedField("structure-constant input is supported over Q only")
    sc = StructureConstants(field, dim, {k: tuple((kk, field(c)) for kk, c in v) for k, v in table.items()})
    sc.unit()
    if not sc.is_associative():
        raise AlgebraError("multiplication is not associative")
    jbasis = row_basis(sc.trace_form_radical(), field, dim)
    if idempotents is None:
        es = find_primitive_idempotents(sc)
    else:
        es = [[field(x) for x in e] for e in idempotents]
    n = len(es)
    if vertex_names is None:
        vertex_names = [f"e{i + 1}" for i in range(n)]
    vertex_names = list(vertex_names)
    if len(vertex_names) != n:
        raise AlgebraError("vertex_names length differs from the idempotent count")
    one = sc.unit()
    total = [field.zero] * dim
    for i, e in enumerate(es):
        total = [t + x for t, x in zip(total, e)]
        for j, g in enumerate(es):
            want = e if i == j else [field.zero] * dim
            if sc.mul(e, g) != want:
                raise AlgebraError("idempotents are not pairwise orthogonal idempotents")
    if total != one:
        raise AlgebraError("idempotents do not sum to 1")
    new_rows: list[list] = []
    new_basis: list[BasisElement] = []
    counter = 0
    all_vecs = [sc.basis_vector(i) for i in range(dim)]
    for ei, e in enumerate(es):           # source
        for fi, fv in enumerate(es):      # target
            comp = [sc.mul(sc.mul(fv, b), e) for b in all_vecs]
            jcomp = [sc.mul(sc.mul(fv, r), e) for r in jbasis]
            ech = Echelon(field, dim)
            if ei == fi:
                ech.add(e)
                new_rows.append(list(e))
                new_basis.append(BasisElement(vertex_names[ei], ei, fi, False))
            for v in jcomp:
                if ech.add(v):
                    new_rows.append(list(v))
                    new_basis.append(BasisElement(f"r{counter}", ei, fi, True))
                    counter += 1
            extra = 0
            for v in comp:
                if ech.add(v):
                    new_rows.append(list(v))
                    new_basis.append(BasisElement(f"m{counter}", ei, fi, False))
                    counter += 1
                    extra += 1
            if ei == fi and extra:
                raise NonBasicSemisimpleQuotient(
                    f"idempotent {vertex_names[ei]} is not primitive: dim eAe/eJe = {1 + extra}")
    if len(new_rows) != dim:
        raise AlgebraError("Pierce components do not exhaust the algebra")
    if basis_names is not None:
        # keep user names where a new basis vector is a unit vector of the old basis
        for k, row in enumerate(new_rows):
            nz = [i for i, x in enumerate(row) if x]
            if len(nz) == 1 and row[nz[0]] == 1 and new_basis[k].name not in vertex_names:
                b = new_basis[k]
                new_basis[k] = BasisElement(basis_names[nz[0]], b.source, b.target, b.radical)
    # structure constants in the new basis: coordinates = v * P^{-1}
    pinv = inverse(transpose(new_rows, dim), field)  # columns of P^T are new basis vectors

    def coords(v):
        return [sum((pinv[r][c] * v[c] for c in range(dim) if v[c]), field.zero) for r in range(dim)]

    new_table = {}
    for i in range(dim):
        for j in range(dim):
            if new_basis[i].source != new_basis[j].target:
                continue
            prod = coords(sc.mul(new_rows[i], new_rows[j]))
            nz = tuple((k, c) for k, c in enumerate(prod) if c)
            if nz:
                new_table[(i, j)] = nz
    alg = PresentedAlgebra(field, vertex_names, new_basis, new_table, origin="structure_constants",
                           meta={"change_of_basis": new_rows, "raw_table": sc.table})
    return alg


def random_unit(a, rng: random.Random, span: int = 3, tries: int = 50) -> list:
    """A random invertible element (left multiplication matrix of full rank)."""
    sc = a.sc if isinstance(a, PresentedAlgebra) else a
    for _ in range(tries):
        g = [sc.field(rng.randint(-span, span)) for _ in range(sc.dim)]
        if rank_rows(sc.left_matrix(g), sc.field, sc.dim) == sc.dim:
            return g
    raise AlgebraError("no random unit found")


def element_inverse(a, g: Sequence) -> list:
    sc = a.sc if isinstance(a, PresentedAlgebra) else a
    one = sc.unit() if not isinstance(a, PresentedAlgebra) else a.one()
    lm = sc.left_matrix(g)
    inv = inverse(lm, sc.field)
    return [sum((inv[r][c] * one[c] for c in range(sc.dim) if one[c]), sc.field.zero) for r in range(sc.dim)]


def conjugate_idempotents(a: PresentedAlgebra, g: Sequence) -> list[list]:
    """{g e g^-1 : e in E} in the coordinates of `a`."""
    ginv = element_inverse(a, g)
    return [a.mul(a.mul(g, a.idempotent(v)), ginv) for v in range(len(a.vertices))]


def to_raw_table(a: PresentedAlgebra) -> dict:
    return {k: list(v) for k, v in a.table.items()}


def blow_up(a: PresentedAlgebra, copies: dict) -> PresentedAlgebra:
    """Duplicate vertices: `copies` maps each new vertex name to an existing vertex.

    The component f'Ae' of the result is a copy of pi(f') A pi(e'); existing
    vertices are kept.  The result is Morita equivalent to `a` (not basic once
    any vertex is duplicated).
    """
    proj = {v: v for v in a.vertices}
    for new, old in copies.items():
        if new in proj:
            raise AlgebraError(f"vertex name {new!r} already used")
        a.vertex_index(old)
        proj[new] = old
    verts = list(a.vertices) + list(copies)
    vidx = {v: i for i, v in enumerate(verts)}
    basis = []
    origin_of = []
    for v in verts:  # idempotent basis elements first
        i = a.idem[a.vindex[proj[v]]]
        basis.append(BasisElement(v, vidx[v], vidx[v], False))
        origin_of.append(i)
    for s in verts:
        for t in verts:
            for i in a.component(proj[s], proj[t]):
                if s == t and i == a.idem[a.vindex[proj[s]]]:
                    continue
                b = a.basis[i]
                name = b.name if (s in a.vindex and t in a.vindex) else f"{b.name}[{s}>{t}]"
                basis.append(BasisElement(name, vidx[s], vidx[t], b.radical))
                origin_of.append(i)
    lookup = {}
    for k, b in enumerate(basis):
        lookup[(origin_of[k], b.source, b.target)] = k
    table = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bi.source != bj.target:
                continue
            prod = a.table.get((origin_of[i], origin_of[j]))
            if prod:
                table[(i, j)] = tuple((lookup[(k, bj.source, bi.target)], c) for k, c in prod)
    return PresentedAlgebra(a.field, verts, basis, table, origin="blow_up",
                            meta={"blown_up_from": tuple(a.vertices), "projection": proj})


def direct_product(algebras: Sequence[PresentedAlgebra]) -> PresentedAlgebra:
    """A_1 x ... x A_n as one presentation; vertex names must be disjoint."""
    field = algebras[0].field
    verts: list = []
    basis: list = []
    table: dict = {}
    for alg in algebras:
        voff, boff = len(verts), len(basis)
        if set(verts) & set(alg.vertices):
            raise AlgebraError("vertex names must be disjoint")
        verts.extend(alg.vertices)
        for b in alg.basis:
            basis.append(BasisElement(b.name, b.source + voff, b.target + voff, b.radical, b.path))
        for (i, j), prod in alg.table.items():
            table[(i + boff, j + boff)] = tuple((k + boff, c) for k, c in prod)
    return PresentedAlgebra(field, verts, basis, table, origin="product")


def all_subsets(items: Sequence, proper: bool = True, max_size: int | None = None):
    """Nonempty subsets in size order, then lexicographic on positions."""
    n = len(items)
    top = n - 1 if proper else n
    if max_size is not None:
        top = min(top, max_size)
    for size in range(1, top + 1):
        for combo in itertools.combinations(items, size):
            yield combo


__all__ = [
    "AlgebraError", "NotFiniteDimensional", "InvalidRelation", "UnsupportedField",
    "NonBasicSemisimpleQuotient", "NotApproximatelyIdempotent", "NotIdempotent",
    "Quiver", "Relation", "StructureConstants", "BasisElement", "PresentedAlgebra",
    "build_quotient_basis", "pierce_component", "corner_algebra", "two_sided_span",
    "radical", "nilpotency_index", "lift_idempotent", "is_primitive", "split_identity",
    "find_primitive_idempotents", "from_structure_constants", "random_unit",
    "element_inverse", "conjugate_idempotents", "blow_up", "direct_product", "all_subsets",
]
