"""Modules in functor form, projective resolutions, Tor and the global-dimension oracle.

A left A-module is stored as one vector space per idempotent e (the space eM)
together with a matrix L_b : eM -> fM for each basis element b of fAe.  Right
A-modules are left modules over ``a.opposite()``, which shares basis indices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import PresentedAlgebra, corner_algebra
from .linalg import (
    Echelon,
    identity,
    kernel_with_free,
    matmul,
    matvec,
    rank_rows,
    solve_columns,
    transpose,
)


class ModuleError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


def _zero_matrix(f, rows, cols):
    z = f.zero
    return [[z] * cols for _ in range(rows)]


class FDModule:
    def __init__(self, algebra: PresentedAlgebra, dims: Sequence[int], action: Sequence):
        self.algebra = algebra
        self.dims = tuple(dims)
        self.action = tuple(action)
        if len(self.dims) != len(algebra.vertices):
            raise ModuleError("dimension vector length differs from |E|")
        if len(self.action) != algebra.dim:
            raise ModuleError("need one action matrix per basis element")

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> tuple:
        return self.dims

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act(self, b: int, v: Sequence) -> list:
        """Apply basis element b to v in the source space of b."""
        return matvec(self.action[b], v, self.field)

    def act_element(self, x: Sequence, v: Sequence, vertex: int) -> list[list]:
        """Apply algebra element x to v in vertex space `vertex`; returns per-vertex parts."""
        out = [[self.field.zero] * d for d in self.dims]
        for i, c in enumerate(x):
            if not c:
                continue
            b = self.algebra.basis[i]
            if b.source != vertex:
                continue
            w = self.act(i, v)
            out[b.target] = [o + c * y for o, y in zip(out[b.target], w)]
        return out

    def support(self) -> list:
        return [self.algebra.vertices[i] for i, d in enumerate(self.dims) if d]

    def check(self) -> None:
        """Functor laws: L_e = id and L_{b b'} = L_b L_b'."""
        a = self.algebra
        f = self.field
        for i, b in enumerate(a.basis):
            m = self.action[i]
            if len(m) != self.dims[b.target] or any(len(r) != self.dims[b.source] for r in m):
                raise ModuleError(f"action of {b.name} has the wrong shape")
        for v, i in enumerate(a.idem):
            if self.action[i] != identity(f, self.dims[v]):
                raise ModuleError(f"idempotent {a.vertices[v]} does not act as identity")
        for i, bi in enumerate(a.basis):
            for j, bj in enumerate(a.basis):
                if bi.source != bj.target:
                    continue
                lhs = matmul(self.action[i], self.action[j], f, self.dims[bj.source])
                rhs = _zero_matrix(f, self.dims[bi.target], self.dims[bj.source])
                for k, c in a.table.get((i, j), ()):
                    mk = self.action[k]
                    for r in range(len(rhs)):
                        row = rhs[r]
                        mr = mk[r]
                        for s in range(len(row)):
                            if mr[s]:
                                row[s] = row[s] + c * mr[s]
                if lhs != rhs:
                    raise ModuleError(f"action not multiplicative on {bi.name}*{bj.name}")

    def __eq__(self, other):
        return (isinstance(other, FDModule) and other.algebra is self.algebra
                and other.dims == self.dims and other.action == self.action)

    def __repr__(self):
        return f"FDModule(dims={self.dims})"

    # constructions -----------------------------------------------------
    def submodule(self, bases: Sequence[Sequence[Sequence]]) -> "FDModule":
        """Submodule with the given per-vertex bases (must be closed under the action)."""
        a = self.algebra
        dims = [len(bs) for bs in bases]
        action = []
        for i, b in enumerate(a.basis):
            src, tgt = bases[b.source], bases[b.target]
            images = [self.act(i, v) for v in src]
            try:
                coords = solve_columns(tgt, images, self.field)
            except ValueError:
                raise ModuleError("subspace is not closed under the action") from None
            action.append(transpose(coords, dims[b.target]) if coords else _zero_matrix(self.field, dims[b.target], 0))
        return FDModule(a, dims, action)

    def quotient(self, bases: Sequence[Sequence[Sequence]]) -> "FDModule":
        """M / N for a submodule N given by per-vertex bases.

        The quotient basis at each vertex is the set of unit vectors not
        spanned by N (greedy in coordinate order).
        """
        a = self.algebra
        f = self.field
        subs = []
        complements = []
        for v, d in enumerate(self.dims):
            sub = Echelon(f, d)
            for w in bases[v]:
                sub.add(w)
            ext = Echelon(f, d)
            for r in sub.rows:
                ext.add(r)
            comp = []
            for k in range(d):
                if ext.add(_unit(f, d, k)):
                    comp.append(k)
            # solve v = n + sum c_k e_k against subspace rows followed by complement units
            frame = [list(r) for r in sub.rows] + [_unit(f, d, k) for k in comp]
            subs.append((len(sub.rows), frame))
            complements.append(comp)
        dims = [len(c) for c in complements]
        action = []
        for i, b in enumerate(a.basis):
            m = _zero_matrix(f, dims[b.target], dims[b.source])
            nsub, frame = subs[b.target]
            images = [self.act(i, _unit(f, self.dims[b.source], k)) for k in complements[b.source]]
            if images and frame:
                for col, coords in enumerate(solve_columns(frame, images, f)):
                    for row, c in enumerate(coords[nsub:]):
                        m[row][col] = c
            action.append(m)
        return FDModule(a, dims, action)


def _unit(f, d: int, k: int) -> list:
    return [f.one if t == k else f.zero for t in range(d)]


# --------------------------------------------------------------------------
# standard modules


def projective_module(a: PresentedAlgebra, e) -> FDModule:
    """Ae: at vertex w the space wAe, with left multiplication."""
    v = a.vertex_index(e)
    return direct_sum_of_projectives(a, [v])[0]


def direct_sum_of_projectives(a: PresentedAlgebra, vertices: Sequence[int]):
    """P = (+)_g A e_g; returns (module, coordinate labels per vertex).

    Coordinates of P at vertex w are pairs (g, basis index c) with c in w A e_g.
    """
    f = a.field
    labels = [[] for _ in a.vertices]
    for g, v in enumerate(vertices):
        for w in range(len(a.vertices)):
            for c in a.component(v, w):
                labels[w].append((g, c))
    pos = [{lab: k for k, lab in enumerate(labs)} for labs in labels]
    dims = [len(l) for l in labels]
    action = []
    for i, b in enumerate(a.basis):
        m = _zero_matrix(f, dims[b.target], dims[b.source])
        for col, (g, c) in enumerate(labels[b.source]):
            for k, coef in a.table.get((i, c), ()):
                m[pos[b.target][(g, k)]][col] = m[pos[b.target][(g, k)]][col] + coef
        action.append(m)
    return FDModule(a, dims, action), labels


def regular_module(a: PresentedAlgebra) -> FDModule:
    return direct_sum_of_projectives(a, list(range(len(a.vertices))))[0]


def simple_module(a: PresentedAlgebra, e) -> FDModule:
    """top(Ae) = Ae / J e."""
    v = a.vertex_index(e)
    p, labels = direct_sum_of_projectives(a, [v])
    bases = []
    for w in range(len(a.vertices)):
        basis = []
        for k, (_g, c) in enumerate(labels[w]):
            if a.basis[c].radical:
                basis.append([a.field.one if t == k else a.field.zero for t in range(p.dims[w])])
        bases.append(basis)
    return p.quotient(bases)


def simple_classes(a: PresentedAlgebra) -> list[list[int]]:
    """Vertices grouped by isomorphism of Ae (fAe not inside J for some f != e)."""
    n = len(a.vertices)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, b in enumerate(a.basis):
        if not b.radical and b.source != b.target:
            parent[find(b.source)] = find(b.target)
    groups: dict = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def simple_modules(a: PresentedAlgebra) -> list[FDModule]:
    """One simple module per isomorphism class (one per e in E when A is basic)."""
    return [simple_module(a, cls[0]) for cls in simple_classes(a)]


def direct_sum(mods: Sequence[FDModule]) -> FDModule:
    a = mods[0].algebra
    f = a.field
    dims = [sum(m.dims[v] for m in mods) for v in range(len(a.vertices))]
    action = []
    for i, b in enumerate(a.basis):
        mat = _zero_matrix(f, dims[b.target], dims[b.source])
        ro = co = 0
        for m in mods:
            blk = m.action[i]
            for r, row in enumerate(blk):
                for c, x in enumerate(row):
                    if x:
                        mat[ro + r][co + c] = x
            ro += m.dims[b.target]
            co += m.dims[b.source]
        action.append(mat)
    return FDModule(a, dims, action)


def zero_module(a: PresentedAlgebra) -> FDModule:
    return FDModule(a, [0] * len(a.vertices), [[] for _ in a.basis])


def restrict_to_corner(m: FDModule, corner: PresentedAlgebra) -> FDModule:
    """e_U M as a module over A(U) (corner built by corner_algebra on the same algebra)."""
    a = m.algebra
    vmap = [a.vertex_index(v) for v in corner.vertices]
    name_to_idx = {}
    for i, b in enumerate(a.basis):
        name_to_idx[(b.name, b.source, b.target)] = i
    action = []
    for b in corner.basis:
        i = name_to_idx[(b.name, vmap[b.source], vmap[b.target])]
        action.append(m.action[i])
    return FDModule(corner, [m.dims[v] for v in vmap], action)


# --------------------------------------------------------------------------
# classification lemma: raw modules <-> functor form


@dataclass
class RawModule:
    """A module as one total space with a dim x dim matrix per algebra basis element."""

    algebra: PresentedAlgebra
    dim: int
    matrices: list


def psi(m: FDModule) -> RawModule:
    """Total space (+)_e eM with block action matrices."""
    a = m.algebra
    f = m.field
    offs = [0]
    for d in m.dims:
        offs.append(offs[-1] + d)
    n = offs[-1]
    mats = []
    for i, b in enumerate(a.basis):
        big = _zero_matrix(f, n, n)
        for r, row in enumerate(m.action[i]):
            for c, x in enumerate(row):
                if x:
                    big[offs[b.target] + r][offs[b.source] + c] = x
        mats.append(big)
    return RawModule(a, n, mats)


def phi(raw: RawModule) -> FDModule:
    """Split a raw module as (+)_e eM; eM = image of the idempotent e.

    Returns the functor form; the chosen basis of eM is the reduced echelon
    basis of the image, so phi(psi(F)) == F exactly.
    """
    a = raw.algebra
    f = a.field
    n = raw.dim
    one = identity(f, n)
    total = _zero_matrix(f, n, n)
    for i in a.idem:
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, raw.matrices[i])]
    if total != one:
        raise ModuleError("raw action is not unital")
    for i, b in enumerate(a.basis):
        for j, b2 in enumerate(a.basis):
            lhs = matmul(raw.matrices[i], raw.matrices[j], f, n)
            rhs = _zero_matrix(f, n, n)
            for k, c in a.table.get((i, j), ()):
                rhs = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(rhs, raw.matrices[k])]
            if lhs != rhs:
                raise ModuleError(f"raw action not associative on {b.name}*{b2.name}")
    bases = []
    for v, i in enumerate(a.idem):
        cols = transpose(raw.matrices[i], n)
        ech = Echelon(f, n)
        for c in cols:
            ech.add(c)
        bases.append([list(r) for r in ech.rows])
    dims = [len(bs) for bs in bases]
    action = []
    for i, b in enumerate(a.basis):
        src, tgt = bases[b.source], bases[b.target]
        images = [matvec(raw.matrices[i], v, f) for v in src]
        coords = solve_columns(tgt, images, f) if src else []
        action.append(transpose(coords, dims[b.target]) if coords else _zero_matrix(f, dims[b.target], 0))
    out = FDModule(a, dims, action)
    out.frame = bases  # basis of each eM inside the total space
    return out


def change_raw_basis(raw: RawModule, t: Sequence[Sequence]) -> RawModule:
    """Conjugate every action matrix by the invertible matrix t (new = t^-1 M t)."""
    from .linalg import inverse

    f = raw.algebra.field
    tinv = inverse(t, f)
    mats = [matmul(matmul(tinv, m, f, raw.dim), t, f, raw.dim) for m in raw.matrices]
    return RawModule(raw.algebra, raw.dim, mats)


# --------------------------------------------------------------------------
# projective covers and resolutions


@dataclass
class ResolutionStep:
    target: FDModule
    generators: list          # (vertex, unit vector in target space at that vertex)
    labels: list              # per-vertex coordinate labels (g, basis index) of the projective
    cover: list               # per-vertex matrices P_w -> M_w
    syzygy: FDModule
    embedding: list           # per-vertex kernel bases in P_w coordinates

    @property
    def projective(self) -> FDModule:
        """The projective (+)_g A e_g covering the target."""
        if not hasattr(self, "_projective"):
            a = self.target.algebra
            self._projective = direct_sum_of_projectives(a, [v for v, _ in self.generators])[0]
        return self._projective

    def is_minimal(self) -> bool:
        """Every syzygy vector lies in J * P (zero on non-radical coordinates)."""
        a = self.target.algebra
        for w, basis in enumerate(self.embedding):
            for v in basis:
                for k, (_g, c) in enumerate(self.labels[w]):
                    if v[k] and not a.basis[c].radical:
                        return False
        return True


def radical_submodule(m: FDModule) -> list[list]:
    """Per-vertex echelon bases of J*M."""
    a = m.algebra
    f = m.field
    echs = [Echelon(f, d) for d in m.dims]
    for i, b in enumerate(a.basis):
        if not b.radical or m.dims[b.source] == 0 or m.dims[b.target] == 0:
            continue
        for col in transpose(m.action[i], m.dims[b.source]) if m.action[i] else []:
            echs[b.target].add(col)
    return [list(e.rows) for e in echs]


def top_dims(m: FDModule) -> tuple:
    jm = radical_submodule(m)
    return tuple(d - len(j) for d, j in zip(m.dims, jm))


def projective_cover(m: FDModule) -> ResolutionStep:
    """Minimal projective cover and its kernel.

    Generators are unit vectors lifting a basis of M / JM.  The kernel basis
    at each vertex is taken in reduced form (each vector has a 1 in its own
    free column and 0 in the others), so coordinates of a kernel element are
    read off at the free columns.
    """
    a = m.algebra
    f = m.field
    n = len(a.vertices)
    span = [Echelon(f, d) for d in m.dims]
    for w, basis in enumerate(radical_submodule(m)):
        for v in basis:
            span[w].add(v)
    out_of = [[i for i, b in enumerate(a.basis) if b.source == v] for v in range(n)]
    gens = []
    for v in range(n):
        for k in range(m.dims[v]):
            unit = _unit(f, m.dims[v], k)
            if span[v].contains(unit):
                continue
            gens.append((v, unit, k))
            for i in out_of[v]:
                tgt = a.basis[i].target
                if m.dims[tgt]:
                    span[tgt].add([row[k] for row in m.action[i]])
    labels = [[] for _ in range(n)]
    for g, (v, _u, _k) in enumerate(gens):
        for w in range(n):
            for c in a.component(v, w):
                labels[w].append((g, c))
    pos = [{lab: k for k, lab in enumerate(labs)} for labs in labels]
    cover = []
    embedding = []
    free_cols = []
    for w in range(n):
        # column (g, c) is c applied to generator g: column k_g of the action matrix of c
        cols = [[row[gens[g][2]] for row in m.action[c]] for (g, c) in labels[w]]
        mat = transpose(cols, m.dims[w]) if cols else _zero_matrix(f, m.dims[w], 0)
        cover.append(mat)
        size = len(labels[w])
        if m.dims[w] and size:
            basis, free = kernel_with_free(mat, f, size)
        else:
            basis, free = [_unit(f, size, k) for k in range(size)], list(range(size))
        embedding.append(basis)
        free_cols.append(free)
    # action on the kernel: apply b_i coordinatewise through the structure constants
    dims = [len(e) for e in embedding]
    table = a.table
    action = []
    for i, b in enumerate(a.basis):
        s_, t_ = b.source, b.target
        mat = _zero_matrix(f, dims[t_], dims[s_])
        if dims[s_] and dims[t_]:
            free_t = {c: r for r, c in enumerate(free_cols[t_])}
            lab_s, pos_t = labels[s_], pos[t_]
            for col, v in enumerate(embedding[s_]):
                for k, x in enumerate(v):
                    if not x:
                        continue
                    g, c = lab_s[k]
                    for kk, coef in table.get((i, c), ()):
                        r = free_t.get(pos_t[(g, kk)])
                        if r is not None:
                            mat[r][col] = mat[r][col] + x * coef
        action.append(mat)
    syz = FDModule(a, dims, action)
    return ResolutionStep(m, [(v, u) for v, u, _k in gens], labels, cover, syz, embedding)


@dataclass
class Finite:
    value: int
    trace: list = field(default_factory=list)

    finite = True

    def __str__(self):
        return f"Finite({self.value})"


@dataclass
class ExceedsCutoff:
    cutoff: int
    trace: list = field(default_factory=list)

    finite = False

    def period(self, min_repeats: int = 2):
        return detect_period(self.trace, min_repeats)

    def __str__(self):
        return f"ExceedsCutoff({self.cutoff})"


def detect_period(trace: Sequence, min_repeats: int = 2):
    """Smallest (start, period) with trace[i] == trace[i + period] for all i >= start.

    Steps are 1-based (trace[0] is the first syzygy).  Requires `min_repeats`
    full periods after `start`; None if no such pattern.
    """
    n = len(trace)
    best = None
    for start in range(n):
        for p in range(1, n):
            if n - start < p * min_repeats:
                break
            if all(trace[i] == trace[i + p] for i in range(start, n - p)):
                if best is None or p < best[1]:
                    best = (start + 1, p)
                break
        if best is not None:
            return best
    return best


def resolve(m: FDModule, steps: int) -> list[ResolutionStep]:
    """Minimal projective resolution, stopping early at a zero syzygy."""
    out = []
    cur = m
    for _ in range(steps):
        if cur.is_zero():
            break
        st = projective_cover(cur)
        out.append(st)
        cur = st.syzygy
    return out


def pr_dim(m: FDModule, cutoff: int, max_dim: int | None = None):
    """Finite(n) if the (n+1)-st syzygy vanishes first; ExceedsCutoff otherwise.

    The trace lists the dimension vectors of the syzygies Omega^1, Omega^2, ...
    With max_dim set, a syzygy larger than that raises ResourceLimit.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if m.is_zero():
        return Finite(0, [])
    trace = []
    cur = m
    for n in range(cutoff + 1):
        st = projective_cover(cur)
        cur = st.syzygy
        trace.append(cur.dims)
        if cur.is_zero():
            return Finite(n, trace)
        if max_dim is not None and cur.total_dim > max_dim and n < cutoff:
            raise ResourceLimit(f"syzygy {n + 1} has dimension {cur.total_dim} (limit {max_dim})")
    return ExceedsCutoff(cutoff, trace)


def gldim_oracle(a: PresentedAlgebra, cutoff: int = 8, max_dim: int | None = None):
    """pr.dim of the direct sum of the simple modules (= gl.dim for artinian A)."""
    return pr_dim(direct_sum(simple_modules(a)), cutoff, max_dim)


def right_gldim_oracle(a: PresentedAlgebra, cutoff: int = 8, max_dim: int | None = None):
    """Same computation for right modules (left modules over the opposite algebra)."""
    return gldim_oracle(a.opposite(), cutoff, max_dim)


# --------------------------------------------------------------------------
# flatness over corners


def corner_part(a: PresentedAlgebra, u, v) -> FDModule:
    """e_U A v as a left A(U)-module."""
    corner = corner_algebra(a, u)
    p = projective_module(a, v)
    return restrict_to_corner(p, corner)


def is_flat_over_corner(a: PresentedAlgebra, u, side: str = "left") -> bool:
    """Projectivity of e_U A (left) or A e_U (right) over A(U).

    Summands v A e_U, e_U A v with v in U are projective by construction; the
    remaining columns are tested one at a time by a projective-cover step.
    Parts of A annihilated by e_U contribute nothing.
    """
    if side == "right":
        return is_flat_over_corner(a.opposite(), u, "left")
    if side == "both":
        return is_flat_over_corner(a, u, "left") and is_flat_over_corner(a, u, "right")
    if side != "left":
        raise ValueError(f"side must be left, right or both, not {side!r}")
    members = {a.vertex_index(x) for x in u}
    corner = corner_algebra(a, u)
    for v in range(len(a.vertices)):
        if v in members:
            continue
        part = restrict_to_corner(projective_module(a, v), corner)
        if part.is_zero():
            continue
        if not projective_cover(part).syzygy.is_zero():
            return False
    return True


# --------------------------------------------------------------------------
# Tor


def _tor_from_resolution(x: FDModule, y: FDModule, n: int) -> int:
    """Tor_n over B where x is a left B-module resolved, y a left B^op-module.

    C_k = (+)_{generators g of P_k} y_{v(g)}; the differential sends the
    generator's y-space through L^y of each coordinate of its image in P_{k-1}.
    """
    f = x.field
    steps = resolve(x, n + 2)

    def chain_dim(k):
        if k >= len(steps):
            return 0
        return sum(y.dims[v] for v, _ in steps[k].generators)

    def diff_rank(k):
        # d_k : C_k -> C_{k-1}, k >= 1
        if k >= len(steps) or k < 1:
            return 0
        prev = steps[k - 1]
        cur = steps[k]
        # offsets in C_{k-1}
        offs = []
        o = 0
        for v, _ in prev.generators:
            offs.append(o)
            o += y.dims[v]
        rows_total = o
        cols = []
        emb = prev.embedding  # syzygy of step k-1 embedded in P_{k-1}
        for v, gvec in cur.generators:
            # generator of P_k lives in Omega_{k}_v; embedded vector in P_{k-1} at v
            omega = [sum((gvec[t] * emb[v][t][s] for t in range(len(gvec)) if gvec[t]), f.zero)
                     for s in range(len(prev.labels[v]))]
            for yi in range(y.dims[v]):
                col = [f.zero] * rows_total
                unit = [f.one if t == yi else f.zero for t in range(y.dims[v])]
                for s, coef in enumerate(omega):
                    if not coef:
                        continue
                    h, c = prev.labels[v][s]
                    hv = prev.generators[h][0]
                    img = y.act(c, unit)  # c: source v -> target hv in the opposite sense
                    for t, val in enumerate(img):
                        if val:
                            col[offs[h] + t] = col[offs[h] + t] + coef * val
                cols.append(col)
        return rank_rows(cols, f, rows_total) if cols and rows_total else 0

    return chain_dim(n) - diff_rank(n) - diff_rank(n + 1)


def tor_via_resolution(x: FDModule, y: FDModule, n: int, resolve_side: str = "x") -> int:
    """dim Tor_n^A(X, Y) for a right module X (over A^op) and a left module Y (over A)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if x.algebra is not y.algebra.opposite():
        raise ModuleError("x must be a module over the opposite algebra of y's algebra")
    if resolve_side == "x":
        return _tor_from_resolution(x, y, n)
    return _tor_from_resolution(y, x, n)


def _reduced_basis(x: FDModule, y: FDModule, n: int) -> list[tuple]:
    """Basis of S_n: tuples (xi, (b_1..b_n), yi, e_0) with matching Pierce ends."""
    a = y.algebra
    nv = len(a.vertices)
    by_target: dict = {}
    for i, b in enumerate(a.basis):
        by_target.setdefault(b.target, []).append(i)
    out = []

    def extend(v0, chain, end):
        if len(chain) == n:
            for xi in range(x.dims[v0]):
                for yi in range(y.dims[end]):
                    out.append((xi, tuple(chain), yi, v0))
            return
        for j in by_target.get(end, []):
            chain.append(j)
            extend(v0, chain, a.basis[j].source)
            chain.pop()

    for v in range(nv):
        if x.dims[v]:
            extend(v, [], v)
    return out


def tor_via_reduced_complex(x: FDModule, y: FDModule, n: int, limit: int = 200_000) -> int:
    """Homology at degree n of S_* = (+) Xe_0 (x) e_0Ae_1 (x) ... (x) e_nY."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    a = y.algebra
    if x.algebra is not a.opposite():
        raise ModuleError("x must be a module over the opposite algebra of y's algebra")
    f = a.field
    bases = {}
    for k in (n - 1, n, n + 1):
        if k >= 0:
            bases[k] = _reduced_basis(x, y, k)
            if len(bases[k]) > limit:
                raise ResourceLimit(f"S_{k} has {len(bases[k])} generators (limit {limit})")

    def differential_rank(k):
        if k < 1 or k not in bases or k - 1 not in bases:
            return 0
        src = bases[k]
        tgt_index = {t: i for i, t in enumerate(bases[k - 1])}
        ntgt = len(bases[k - 1])
        if not src or not ntgt:
            return 0
        rows = []
        for xi, ch, yi, e0 in src:
            row: dict = {}
            # x . b_1
            e1 = a.basis[ch[0]].source
            img = x.act(ch[0], _unit(f, x.dims[e0], xi))
            for t, c in enumerate(img):
                if c:
                    key = tgt_index[(t, ch[1:], yi, e1)]
                    row[key] = row.get(key, f.zero) + c
            # middle products
            for i in range(len(ch) - 1):
                sign = f.one if (i + 1) % 2 == 0 else -f.one
                for kk, c in a.table.get((ch[i], ch[i + 1]), ()):
                    key = tgt_index[(xi, ch[:i] + (kk,) + ch[i + 2:], yi, e0)]
                    row[key] = row.get(key, f.zero) + sign * c
            # b_n . y
            sign = f.one if k % 2 == 0 else -f.one
            en = a.basis[ch[-1]].source
            img = y.act(ch[-1], _unit(f, y.dims[en], yi))
            for t, c in enumerate(img):
                if c:
                    key = tgt_index[(xi, ch[:-1], t, e0)]
                    row[key] = row.get(key, f.zero) + sign * c
            dense = [f.zero] * ntgt
            for key, c in row.items():
                dense[key] = c
            rows.append(dense)
        return rank_rows(rows, f, ntgt)

    return len(bases[n]) - differential_rank(n) - differential_rank(n + 1)


def tensor_dim(x: FDModule, y: FDModule) -> int:
    """dim X (x)_A Y computed on total spaces: X (x)_k Y modulo xa (x) y - x (x) ay."""
    a = y.algebra
    f = a.field
    rx, ry = psi(x), psi(y)
    nx, ny = rx.dim, ry.dim
    rels = []
    for i in range(a.dim):
        # right action of b_i on X is the opposite-algebra left action
        mx = rx.matrices[i]
        my = ry.matrices[i]
        for p in range(nx):
            for q in range(ny):
                vec = [f.zero] * (nx * ny)
                for s in range(nx):
                    if mx[s][p]:
                        vec[s * ny + q] = vec[s * ny + q] + mx[s][p]
                for t in range(ny):
                    if my[t][q]:
                        vec[p * ny + t] = vec[p * ny + t] - my[t][q]
                if any(vec):
                    rels.append(vec)
    return nx * ny - rank_rows(rels, f, nx * ny)


# --------------------------------------------------------------------------
# random modules


def submodule_generated(m: FDModule, gens: Sequence[tuple]) -> list[list]:
    """Per-vertex echelon bases of the submodule generated by (vertex, vector) pairs."""
    a = m.algebra
    echs = [Echelon(m.field, d) for d in m.dims]
    for v, vec in gens:
        for i in range(a.dim):
            b = a.basis[i]
            if b.source == v:
                echs[b.target].add(m.act(i, vec))
    return [list(e.rows) for e in echs]


def random_module(a: PresentedAlgebra, rng: random.Random, max_dim: int = 6, span: int = 2) -> FDModule:
    """A random quotient of a small projective, cut down to total dimension <= max_dim."""
    f = a.field
    nv = len(a.vertices)
    k = rng.choice([1, 1, 2])
    verts = [rng.randrange(nv) for _ in range(k)]
    p, _ = direct_sum_of_projectives(a, verts)
    mod = p
    guard = 0
    while mod.total_dim > max_dim or (guard == 0 and rng.random() < 0.6):
        guard += 1
        cand = [v for v in range(nv) if mod.dims[v]]
        v = rng.choice(cand)
        vec = [f(rng.randint(-span, span)) for _ in range(mod.dims[v])]
        if not any(vec):
            vec[rng.randrange(len(vec))] = f.one
        sub = submodule_generated(mod, [(v, vec)])
        mod = mod.quotient(sub)
        if guard > 50:
            break
    return mod
