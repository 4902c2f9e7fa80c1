"""Bounding the global dimension by recursive decomposition over idempotent subsets.

The recursion works on subsets S of the ambient idempotent set.  Corners of
corners are corners (A(S)(U) = A(U) for U inside S), so every sub-problem is
identified by a frozenset of vertex indices and memoized.

For each S the search runs in two phases:

1. every proper U that is a source or a sink of the quotient graph gives
   max(gl A(U), gl A(S-U)) <= gl A(S) <= 1 + gl A(U) + gl A(S-U).  All such
   U are tried and the bounds intersected.  The sharper upper bound
   max(1, gl A(U), gl A(S-U)) for algebras flat over both corners is only
   applied with ``AnalyzeConfig(sharpen_flat=True)``: with flatness read as
   projectivity of the corner parts it undershoots on small examples (the
   commutative square has corners of dimension 1 but global dimension 2).
2. if no U is a source or sink: a U with A(S) = sum AuA reduces to A(U);
   flatness over A(U) raises the lower bound; and the alternating-cycle test
   decides finiteness when both corners are flat and of finite dimension.

An S where all of this fails is recorded as a terminal with unknown upper bound.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .algebra import PresentedAlgebra, corner_algebra, two_sided_span
from .graph import (
    build_graph,
    connected_components,
    find_alternating_cycle,
    has_oriented_cycle,
    quotient_graph,
    vertex_role,
)
from .modules import gldim_oracle, is_flat_over_corner

INF = math.inf


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class Bound:
    """lower <= gl.dim <= upper; upper None means no upper bound is known."""

    lower: float = 0
    upper: float | None = None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise EngineError(f"inconsistent bound [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, n) -> "Bound":
        return cls(n, n)

    @property
    def infinite(self) -> bool:
        return self.lower == INF

    @property
    def finite(self) -> bool:
        return self.upper is not None and self.upper != INF

    @property
    def decided(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def contains(self, n) -> bool:
        return self.lower <= n and (self.upper is None or n <= self.upper)

    def to_json(self):
        return [_num(self.lower), _num(self.upper)]

    @classmethod
    def from_json(cls, pair) -> "Bound":
        return cls(_unnum(pair[0]), _unnum(pair[1]))

    def __str__(self):
        lo = "inf" if self.lower == INF else str(int(self.lower))
        if self.upper is None:
            hi = "?"
        else:
            hi = "inf" if self.upper == INF else str(int(self.upper))
        return f"[{lo}, {hi}]"


INFINITE = Bound(INF, INF)


def _num(x):
    if x is None:
        return None
    if x == INF:
        return "inf"
    return int(x)


def _unnum(x):
    if x is None:
        return None
    if x == "inf":
        return INF
    return int(x)


def _max_upper(uppers):
    if any(u == INF for u in uppers):
        return INF
    if any(u is None for u in uppers):
        return None
    return max(uppers, default=0)


def join_max(bounds: Iterable[Bound]) -> Bound:
    """Bound for a product of algebras: componentwise max."""
    bounds = list(bounds)
    lower = max((b.lower for b in bounds), default=0)
    if lower == INF:
        return INFINITE
    return Bound(lower, _max_upper([b.upper for b in bounds]))


def meet(bounds: Iterable[Bound]) -> Bound:
    """Intersection of several valid bounds for the same algebra."""
    bounds = list(bounds)
    lower = max(b.lower for b in bounds)
    uppers = [b.upper for b in bounds if b.upper is not None]
    upper = min(uppers) if uppers else None
    if lower == INF:
        return INFINITE
    return Bound(lower, upper)


def source_sink_bounds(bounds_u: Bound, bounds_uc: Bound, flat_both: bool) -> Bound:
    lower = max(bounds_u.lower, bounds_uc.lower)
    if lower == INF:
        return INFINITE
    uu, uc = bounds_u.upper, bounds_uc.upper
    if uu is None or uc is None:
        return Bound(lower, None)
    if uu == INF or uc == INF:
        return Bound(lower, INF)
    if flat_both:
        return Bound(lower, max(1, uu, uc))
    return Bound(lower, 1 + uu + uc)


def corner_gldim_terminal(a: PresentedAlgebra, e) -> Bound:
    """A local corner eAe has global dimension 0 if it is the field, infinity otherwise."""
    v = a.vertex_index(e)
    return Bound.exact(0) if len(a.component(v, v)) == 1 else INFINITE


def morita_reduce(a: PresentedAlgebra, u):
    """The corner A(U) when A = sum over u in U of AuA, else None."""
    if two_sided_span(a, u).dim_h0 == 0:
        return corner_algebra(a, u)
    return None


def flat_lower_bound(a: PresentedAlgebra, u, corner_bound: Bound):
    """Lower bound inherited from A(U) when A is flat over it on both sides, else None."""
    if not is_flat_over_corner(a, u, "both"):
        return None
    return Bound(corner_bound.lower, None)


def smear_test(a: PresentedAlgebra, u, bound_u: Bound, bound_uc: Bound):
    """'infinite' or 'finite' when the alternating-cycle criterion applies, else None.

    Hypotheses: U neither source nor sink, A != sum AuA, A flat over A(U) and
    A(U^c) on both sides, and both corners known to be of finite dimension.
    """
    names = [a.vertices[a.vertex_index(x)] for x in u]
    rest = [v for v in a.vertices if v not in names]
    g = build_graph(a)
    if vertex_role(quotient_graph(g, names)) != "neither":
        return None
    if two_sided_span(a, names).dim_h0 == 0:
        return None
    if not (bound_u.finite and bound_uc.finite):
        return None
    if not (is_flat_over_corner(a, names, "both") and is_flat_over_corner(a, rest, "both")):
        return None
    return "infinite" if find_alternating_cycle(g, names) else "finite"


# --------------------------------------------------------------------------
# the recursive driver


@dataclass
class AnalyzeConfig:
    max_subset_size: int | None = None   # largest |U| tried; None means all
    oracle_cutoff: int | None = None     # run the resolution oracle as a cross-check
    sharpen_flat: bool = False           # apply max(1, ...) when flat over both corners


@dataclass
class BoundReport:
    vertices: list
    components: list            # [{"vertices": [...], "bound": Bound}]
    overall: Bound
    branch: str
    trace: list
    nonrecursive: list          # subsets (vertex names) where the search failed
    witness_cycle: list | None = None
    finite_signal: bool = False
    oracle: dict | None = None

    @property
    def verdict(self) -> str:
        if self.overall.infinite:
            return "infinite"
        if self.overall.finite or self.finite_signal:
            return "finite"
        return "unknown"

    @property
    def consistent(self) -> bool | None:
        if self.oracle is None:
            return None
        if self.oracle["verdict"] == "finite":
            return self.overall.contains(self.oracle["value"])
        # resolution ran past the cutoff: only a finite upper below it would contradict
        return not (self.overall.upper is not None and self.overall.upper < self.oracle["cutoff"])

    def to_dict(self) -> dict:
        out = {
            "schema": "pierce-gldim/bound-report/1",
            "vertices": list(self.vertices),
            "verdict": self.verdict,
            "bound": self.overall.to_json(),
            "branch": self.branch,
            "components": [{"vertices": c["vertices"], "bound": c["bound"].to_json()} for c in self.components],
            "nonrecursive": self.nonrecursive,
            "witness_cycle": self.witness_cycle,
            "finite_signal": self.finite_signal,
            "trace": self.trace,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
            out["consistent"] = self.consistent
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}", f"bound: {self.overall}", f"branch: {self.branch}"]
        for c in self.components:
            lines.append(f"component {{{', '.join(map(str, c['vertices']))}}}: {c['bound']}")
        if self.witness_cycle:
            lines.append("alternating cycle: " + " -> ".join(map(str, self.witness_cycle)))
        if self.nonrecursive:
            for s in self.nonrecursive:
                lines.append(f"non-recursive: {{{', '.join(map(str, s))}}}")
        if self.oracle is not None:
            o = self.oracle
            shown = o["value"] if o["verdict"] == "finite" else f"exceeds cutoff {o['cutoff']}"
            lines.append(f"oracle: {shown} (consistent: {self.consistent})")
        lines.append(f"trace: {len(self.trace)} steps")
        for step in self.trace:
            lines.append("  " + _step_text(step))
        return "\n".join(lines) + "\n"


def _step_text(step: dict) -> str:
    s = "{" + ",".join(map(str, step["subset"])) + "}"
    parts = [s, step["branch"]]
    if step.get("U") is not None:
        parts.append("U={" + ",".join(map(str, step["U"])) + "}")
    if step.get("bound") is not None:
        b = Bound.from_json(step["bound"])
        parts.append(str(b))
    if step.get("note"):
        parts.append(step["note"])
    return " ".join(parts)


class _Solver:
    def __init__(self, a: PresentedAlgebra, config: AnalyzeConfig):
        self.a = a
        self.config = config
        self.memo: dict = {}
        self.info: dict = {}       # S -> (branch, witness, finite_signal)
        self.trace: list = []
        self.nonrecursive: list = []
        self._flat: dict = {}

    def names(self, s) -> list:
        return [self.a.vertices[i] for i in sorted(s)]

    def record(self, s, branch, bound=None, u=None, note=None):
        self.trace.append({
            "subset": self.names(s),
            "branch": branch,
            "U": self.names(u) if u is not None else None,
            "bound": bound.to_json() if bound is not None else None,
            "note": note,
        })

    def corner(self, s) -> PresentedAlgebra:
        return corner_algebra(self.a, self.names(s))

    def flat(self, s, u) -> bool:
        key = (s, u)
        if key not in self._flat:
            self._flat[key] = is_flat_over_corner(self.corner(s), self.names(u), "both")
        return self._flat[key]

    def solve(self, s: frozenset) -> Bound:
        if s in self.memo:
            return self.memo[s]
        bound = self._solve(s)
        self.memo[s] = bound
        return bound

    def _solve(self, s: frozenset) -> Bound:
        a = self.a
        if len(s) == 1:
            (v,) = s
            b = corner_gldim_terminal(a, v)
            self.info[s] = ("terminal", None, False)
            self.record(s, "terminal", b, note=f"dim eAe = {len(a.component(v, v))}")
            return b
        sub = self.corner(s)
        g = build_graph(sub)
        comps = connected_components(g)
        if len(comps) > 1:
            parts = [frozenset(a.vertex_index(x) for x in c) for c in comps]
            b = join_max(self.solve(p) for p in parts)
            self.info[s] = ("components", None, all(self.info[p][2] or self.memo[p].finite for p in parts)
                            and not b.finite)
            self.record(s, "components", b, note=f"{len(parts)} components")
            return b
        order = sorted(s)
        limit = len(order) - 1
        cap = self.config.max_subset_size
        if cap is not None and cap < limit:
            self.record(s, "subset-cap", note=f"|U| limited to {cap} of {limit}")
            limit = cap
        subsets = [frozenset(c) for k in range(1, limit + 1) for c in combinations(order, k)]

        # phase 1: sources and sinks
        candidates = []
        for u in subsets:
            role = vertex_role(quotient_graph(g, self.names(u)))
            if role == "neither":
                continue
            uc = s - u
            bu, buc = self.solve(u), self.solve(uc)
            flat = False
            if self.config.sharpen_flat and bu.finite and buc.finite:
                flat = self.flat(s, u) and self.flat(s, uc)
            b = source_sink_bounds(bu, buc, flat)
            candidates.append(b)
            self.record(s, role, b, u=u, note="flat over both corners" if flat else None)
        if candidates:
            b = meet(candidates)
            self.info[s] = ("source-sink", None, False)
            self.record(s, "source-sink-combined", b, note=f"{len(candidates)} subsets")
            return b

        # phase 2: Morita, flat lower bound, alternating cycles
        lowers = []
        finite_signal = False
        for u in subsets:
            names = self.names(u)
            if two_sided_span(sub, names).dim_h0 == 0:
                b = self.solve(u)
                self.info[s] = ("morita", None, self.info[u][2])
                self.record(s, "morita", b, u=u)
                return b
            bu = self.solve(u)
            if not self.flat(s, u):
                continue
            lowers.append(bu.lower)
            self.record(s, "flat-lower-bound", Bound(bu.lower, None), u=u)
            if bu.infinite:
                self.info[s] = ("flat-lower-bound", None, False)
                return INFINITE
            if not bu.finite:
                continue
            uc = s - u
            buc = self.solve(uc)
            if not self.flat(s, uc):
                continue
            if buc.infinite:
                self.info[s] = ("flat-lower-bound", None, False)
                self.record(s, "flat-lower-bound", INFINITE, u=uc)
                return INFINITE
            if not buc.finite:
                continue
            cycle = find_alternating_cycle(g, names)
            if cycle:
                self.info[s] = ("smear", cycle, False)
                self.record(s, "smear", INFINITE, u=u, note="alternating cycle " + " -> ".join(map(str, cycle)))
                return INFINITE
            finite_signal = True
            self.record(s, "smear", None, u=u, note="no alternating cycle: finite")
        b = Bound(max(lowers, default=0), None)
        self.info[s] = ("non-recursive", None, finite_signal)
        self.nonrecursive.append(self.names(s))
        self.record(s, "non-recursive", b)
        return b


def analyze(a: PresentedAlgebra, config: AnalyzeConfig | None = None) -> BoundReport:
    config = config or AnalyzeConfig()
    solver = _Solver(a, config)
    g = build_graph(a)
    comps = connected_components(g, a)
    results = []
    for c in comps:
        s = frozenset(a.vertex_index(x) for x in c)
        results.append({"vertices": list(c), "bound": solver.solve(s)})
    overall = join_max(r["bound"] for r in results)
    full = frozenset(range(len(a.vertices)))
    if len(comps) == 1:
        branch, witness, signal = solver.info[full]
    else:
        branch = "components"
        witness = None
        signal = all(solver.info[frozenset(a.vertex_index(x) for x in r["vertices"])][2] or r["bound"].finite
                     for r in results) and not overall.finite
        for r in results:
            info = solver.info[frozenset(a.vertex_index(x) for x in r["vertices"])]
            if r["bound"].infinite and info[1]:
                witness = info[1]
    report = BoundReport(
        vertices=list(a.vertices),
        components=results,
        overall=overall,
        branch=branch,
        trace=solver.trace,
        nonrecursive=solver.nonrecursive,
        witness_cycle=witness,
        finite_signal=signal,
    )
    if config.oracle_cutoff is not None:
        res = gldim_oracle(a, config.oracle_cutoff)
        if res.finite:
            report.oracle = {"verdict": "finite", "value": res.value, "cutoff": config.oracle_cutoff}
        else:
            report.oracle = {"verdict": "exceeds-cutoff", "value": None, "cutoff": config.oracle_cutoff,
                             "period": res.period()}
    return report


def no_cycle_bounds(a: PresentedAlgebra, sharpen: bool = False) -> Bound:
    """Bounds for an algebra whose graph has no oriented cycle, from its local corners.

    max gl(eAe) <= gl A <= |E| - 1 + sum gl(eAe); with sharpen=True and A
    flat over every corner A(U), the upper bound becomes max(1, gl(eAe)).
    """
    g = build_graph(a)
    if has_oriented_cycle(g):
        raise EngineError("graph has an oriented cycle")
    corners = [corner_gldim_terminal(a, v) for v in range(len(a.vertices))]
    if any(c.infinite for c in corners):
        return INFINITE
    lower = max(c.lower for c in corners)
    n = len(a.vertices)
    if sharpen and n > 1:
        flat_all = all(is_flat_over_corner(a, [a.vertices[i] for i in c], "both")
                       for k in range(1, n) for c in combinations(range(n), k))
        if flat_all:
            return Bound(lower, max([1] + [c.upper for c in corners]))
    return Bound(lower, n - 1 + sum(c.upper for c in corners))


@dataclass
class Classification:
    recursive: bool
    witness: list | None = None     # a subset U that lets the recursion proceed
    reason: str | None = None


def classify_nonrecursive(a: PresentedAlgebra, cutoff: int = 8) -> Classification:
    """Check the three conditions defining a non-recursive algebra for every proper U.

    Corner finiteness is decided with the resolution oracle at the given cutoff.
    """
    n = len(a.vertices)
    if n == 1:
        return Classification(False, None, "single idempotent")
    g = build_graph(a)
    finite_cache: dict = {}

    def corner_finite(names):
        key = tuple(names)
        if key not in finite_cache:
            finite_cache[key] = gldim_oracle(corner_algebra(a, names), cutoff).finite
        return finite_cache[key]

    for k in range(1, n):
        for c in combinations(range(n), k):
            names = [a.vertices[i] for i in c]
            rest = [v for v in a.vertices if v not in names]
            if vertex_role(quotient_graph(g, names)) != "neither":
                return Classification(True, names, "source or sink")
            if two_sided_span(a, names).dim_h0 == 0:
                return Classification(True, names, "morita")
            flat_u = is_flat_over_corner(a, names, "both")
            if not flat_u:
                continue
            if not corner_finite(names):
                return Classification(True, names, "flat over an infinite corner")
            if is_flat_over_corner(a, rest, "both"):
                return Classification(True, names, "flat over both corners")
    return Classification(False, None, "every subset stops")
