"""The directed graph of an algebra with respect to its idempotents.

Vertices are the idempotents E.  There is an edge e -> f (e != f) exactly when
fAe is nonzero, i.e. some basis element starts at e and ends at f.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import PresentedAlgebra, _find_cycle


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class PierceGraph:
    vertices: tuple
    edges: frozenset

    def sorted_edges(self) -> list:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]]))

    def successors(self, v) -> list:
        return [t for s, t in self.sorted_edges() if s == v]

    def predecessors(self, v) -> list:
        return [s for s, t in self.sorted_edges() if t == v]

    def induced(self, subset: Iterable) -> "PierceGraph":
        keep = set(subset)
        verts = tuple(v for v in self.vertices if v in keep)
        return PierceGraph(verts, frozenset((s, t) for s, t in self.edges if s in keep and t in keep))


@dataclass(frozen=True)
class QuotientGraph:
    base: PierceGraph
    collapsed: frozenset
    vertices: tuple
    edges: frozenset

    @property
    def node(self):
        """Label of the contracted vertex."""
        return self.vertices[0]


def build_graph(a: PresentedAlgebra) -> PierceGraph:
    edges = set()
    for b in a.basis:
        if b.source != b.target:
            edges.add((a.vertices[b.source], a.vertices[b.target]))
    return PierceGraph(tuple(a.vertices), frozenset(edges))


def connected_components(g: PierceGraph, algebra: PresentedAlgebra | None = None) -> list[list]:
    """Weakly connected components in vertex order.

    When the algebra is given, each component's idempotent sum is checked to be central.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in g.edges:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rt] = rs
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = list(groups.values())
    if algebra is not None:
        for comp in comps:
            if not is_central_sum(algebra, comp):
                raise GraphError(f"idempotent sum over {comp} is not central")
    return comps


def is_central_sum(a: PresentedAlgebra, vertices: Iterable) -> bool:
    e = a.zero()
    for v in vertices:
        i = a.idem[a.vertex_index(v)]
        e[i] = e[i] + a.field.one
    for i in range(a.dim):
        x = a.vec(i)
        if a.mul(e, x) != a.mul(x, e):
            return False
    return True


def quotient_graph(g: PierceGraph, u: Iterable) -> QuotientGraph:
    members = frozenset(u)
    if not members or not members <= set(g.vertices) or members == set(g.vertices):
        raise GraphError("U must be a proper nonempty subset of the vertices")
    node = "U" if "U" not in g.vertices else "{" + ",".join(str(v) for v in g.vertices if v in members) + "}"
    rest = tuple(v for v in g.vertices if v not in members)

    def image(v):
        return node if v in members else v

    edges = frozenset((image(s), image(t)) for s, t in g.edges if image(s) != image(t))
    return QuotientGraph(g, members, (node,) + rest, edges)


def vertex_role(q: QuotientGraph) -> str:
    """'sink' if no edge leaves U, 'source' if no edge enters U, else 'neither'.

    An isolated U is both; it is reported as 'source'.
    """
    out = any(s == q.node for s, _ in q.edges)
    inc = any(t == q.node for _, t in q.edges)
    if not inc:
        return "source"
    if not out:
        return "sink"
    return "neither"


def find_oriented_cycle(g: PierceGraph):
    return _find_cycle(g.vertices, g.sorted_edges())


def has_oriented_cycle(g: PierceGraph) -> bool:
    return find_oriented_cycle(g) is not None


def find_alternating_cycle(g: PierceGraph, u: Iterable):
    """An oriented cycle whose consecutive vertices alternate between U and its complement."""
    members = set(u)
    bichromatic = [(s, t) for s, t in g.sorted_edges() if (s in members) != (t in members)]
    return _find_cycle(g.vertices, bichromatic)


def has_alternating_cycle(g: PierceGraph, u: Iterable) -> bool:
    return find_alternating_cycle(g, u) is not None


def _quote(v) -> str:
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(g, u: Iterable | None = None, name: str = "G") -> str:
    """DOT text for a PierceGraph or QuotientGraph; U red and its complement blue when given."""
    if isinstance(g, QuotientGraph):
        verts = g.vertices
        pos = {v: i for i, v in enumerate(verts)}
        edges = sorted(g.edges, key=lambda e: (pos[e[0]], pos[e[1]]))
        members = {g.node} if u is None else set(u)
        colored = True
    else:
        verts = g.vertices
        edges = g.sorted_edges()
        members = set(u) if u is not None else set()
        colored = u is not None
    lines = [f"digraph {name} {{"]
    for v in verts:
        if colored:
            color = "red" if v in members else "blue"
            lines.append(f"  {_quote(v)} [color={color}];")
        else:
            lines.append(f"  {_quote(v)};")
    for s, t in edges:
        lines.append(f"  {_quote(s)} -> {_quote(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
