"""Seeds, mutation, exchange-graph exploration, potentials and the Weyl action.

Cluster variables are tracked as rational functions in the initial chart.
Two seeds are identified when some permutation of indices matches their
variables and conjugates their exchange matrices.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .exactalg import LaurentPoly, RationalFunc, as_laurent, default_names, parse_rational, substitute
from .surface import (
    NOTCHED,
    PLAIN,
    SurfaceSpec,
    TaggedTriangulation,
    adjacency_matrix,
    base_triangulation,
    puncture_weight,
    signed_weight,
    tagged_flip,
)

Matrix = tuple[tuple[int, ...], ...]


class FrozenIndexError(ValueError):
    """Mutation was requested at a frozen index."""


class LaurentViolation(AssertionError):
    """A cluster variable failed the monomial-denominator check."""


class InvariantViolation(AssertionError):
    """The exchange matrix disagrees with the attached triangulation."""


class PotentialUndefined(ValueError):
    """The native potential formula does not apply at this puncture."""


def mutate_matrix(eps: Matrix, k: int) -> Matrix:
    n = len(eps)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = eps[i][j]
            if i == k or j == k:
                row.append(-e)
            elif eps[i][k] * eps[j][k] >= 0:
                row.append(e)
            else:
                row.append(e - abs(eps[i][k]) * eps[j][k])
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class Quiver:
    n: int
    frozen: frozenset
    eps: Matrix

    def __post_init__(self) -> None:
        if len(self.eps) != self.n or any(len(r) != self.n for r in self.eps):
            raise ValueError("eps must be n x n")
        for i in range(self.n):
            for j in range(self.n):
                if self.eps[i][j] != -self.eps[j][i]:
                    raise ValueError("eps must be skew-symmetric")

    def mutable(self) -> list[int]:
        return [k for k in range(self.n) if k not in self.frozen]

    def mutate(self, k: int) -> "Quiver":
        if k in self.frozen:
            raise FrozenIndexError(f"index {k} is frozen")
        return Quiver(self.n, self.frozen, mutate_matrix(self.eps, k))


def freeze(qv: Quiver, S) -> Quiver:
    S = frozenset(S)
    if S & qv.frozen:
        raise ValueError("indices already frozen")
    return Quiver(qv.n, qv.frozen | S, qv.eps)


def exchange_monomials(eps: Matrix, vars_: Sequence, k: int):
    """The two monomials ``M+`` and ``M-`` of the exchange relation at ``k``."""
    one = vars_[k] ** 0
    plus, minus = one, one
    for j, v in enumerate(vars_):
        e = eps[j][k]
        if e > 0:
            plus = plus * v ** e
        elif e < 0:
            minus = minus * v ** (-e)
    return plus, minus


def exchange(eps: Matrix, vars_: Sequence, k: int):
    plus, minus = exchange_monomials(eps, vars_, k)
    return (plus + minus) / vars_[k]


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    vars: tuple[RationalFunc, ...]
    triangulation: TaggedTriangulation | None
    depth: int = 0
    path: tuple[int, ...] = ()

    @property
    def eps(self) -> Matrix:
        return self.quiver.eps

    @property
    def n(self) -> int:
        return self.quiver.n

    def check(self) -> None:
        for i, v in enumerate(self.vars):
            if as_laurent(v) is None:
                raise LaurentViolation(f"variable {i} along path {self.path} is not Laurent")
        if self.triangulation is not None and adjacency_matrix(self.triangulation) != self.eps:
            raise InvariantViolation(f"exchange matrix disagrees with triangulation at path {self.path}")

    # -- JSON ------------------------------------------------------------
    def to_dict(self) -> dict:
        names = default_names(self.vars[0].nvars) if self.vars else []
        return {
            "eps": [list(r) for r in self.eps],
            "frozen": sorted(k + 1 for k in self.quiver.frozen),
            "vars": [v.to_string(names) for v in self.vars],
            "triangulation": None if self.triangulation is None else self.triangulation.to_dict(),
            "path": [k + 1 for k in self.path],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_dict(data: dict) -> "Seed":
        eps = tuple(tuple(int(x) for x in r) for r in data["eps"])
        n = len(eps)
        frozen = frozenset(int(k) - 1 for k in data.get("frozen", []))
        names = default_names(n)
        vars_ = tuple(parse_rational(s, names) for s in data["vars"])
        if len(vars_) != n:
            raise ValueError("one variable per row of eps required")
        tri = data.get("triangulation")
        T = None if tri is None else TaggedTriangulation.from_dict(tri)
        path = tuple(int(k) - 1 for k in data.get("path", []))
        return Seed(Quiver(n, frozen, eps), vars_, T, len(path), path)


def initial_seed(spec: SurfaceSpec) -> Seed:
    T = base_triangulation(spec)
    n = T.n
    eps = adjacency_matrix(T)
    vars_ = tuple(RationalFunc.variable(n, i) for i in range(n))
    return Seed(Quiver(n, frozenset(), eps), vars_, T)


def quiver_seed(qv: Quiver) -> Seed:
    vars_ = tuple(RationalFunc.variable(qv.n, i) for i in range(qv.n))
    return Seed(qv, vars_, None)


def mutate(s: Seed, k: int, check: bool = True) -> Seed:
    """Mutate ``s`` at ``k``: matrix, variable and tagged flip."""
    if not 0 <= k < s.n:
        raise IndexError(f"index {k} out of range")
    q = s.quiver.mutate(k)
    new = exchange(s.eps, s.vars, k)
    vars_ = s.vars[:k] + (new,) + s.vars[k + 1 :]
    T = None if s.triangulation is None else tagged_flip(s.triangulation, k)
    path = s.path[:-1] if s.path and s.path[-1] == k else s.path + (k,)
    out = Seed(q, vars_, T, len(path), path)
    if check:
        if as_laurent(new) is None:
            raise LaurentViolation(f"variable {k} along path {path} is not Laurent")
        if T is not None and adjacency_matrix(T) != q.eps:
            raise InvariantViolation(f"flip at {k} disagrees with mutation along path {s.path}")
    return out


def mutate_path(s: Seed, path: Sequence[int], check: bool = True) -> Seed:
    for k in path:
        s = mutate(s, k, check)
    return s


# ---------------------------------------------------------------------------
# canonical keys


_FP_CACHE: dict[RationalFunc, str] = {}


def fingerprint(r: RationalFunc) -> str:
    fp = _FP_CACHE.get(r)
    if fp is None:
        fp = hashlib.sha256(r.to_string().encode()).hexdigest()[:24]
        if len(_FP_CACHE) > 500_000:
            _FP_CACHE.clear()
        _FP_CACHE[r] = fp
    return fp


def canonical_order(s: Seed) -> list[int]:
    """Index order used by the canonical key (sorted by variable fingerprint)."""
    fps = [fingerprint(v) for v in s.vars]
    order = sorted(range(s.n), key=lambda i: fps[i])
    if len(set(fps)) == len(fps):
        return order
    # ties: choose the permutation with lexicographically minimal eps
    import itertools

    groups: list[list[int]] = []
    for i in order:
        if groups and fps[groups[-1][0]] == fps[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best = None
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = [i for g in combo for i in g]
        key = tuple(tuple(s.eps[a][b] for b in perm) for a in perm)
        if best is None or key < best[0]:
            best = (key, perm)
    return best[1]


def canonical_key(s: Seed) -> str:
    order = canonical_order(s)
    fps = [fingerprint(s.vars[i]) for i in order]
    eps = [[s.eps[a][b] for b in order] for a in order]
    frozen = sorted(order.index(k) for k in s.quiver.frozen)
    blob = json.dumps([fps, eps, frozen], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# exploration


@dataclass
class ExchangeGraph:
    nodes: dict[str, Seed] = field(default_factory=dict)
    edges: set[tuple[str, int, str]] = field(default_factory=set)
    depth: int = 0
    complete: bool = True
    root: str = ""
    tree: dict[str, tuple[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "depth": self.depth,
            "root": self.root,
            "nodes": {k: {"depth": s.depth, "path": [i + 1 for i in s.path]} for k, s in self.nodes.items()},
            "edges": sorted([a, k + 1, b] for a, k, b in self.edges),
        }

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for key in sorted(self.nodes, key=lambda k: (self.nodes[k].depth, k)):
            lines.append(f'  "{key[:10]}" [label="{key[:10]}"];')
        seen = set()
        for a, k, b in sorted(self.edges):
            pair = tuple(sorted([(a, k), (b, k)]))
            if (a, b, k) in seen or (b, a, k) in seen:
                continue
            seen.add((a, b, k))
            lines.append(f'  "{a[:10]}" -- "{b[:10]}" [label="{k + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def explore(initial: Seed, depth: int, budget: int = 10**6, workers: int = 1, check: bool = True) -> ExchangeGraph:
    """Breadth-first exchange graph to the given depth, deduplicated by key.

    ``budget`` caps the number of nodes; exceeding it returns the partial
    graph with ``complete`` set to False.  Children of a frontier are
    computed (optionally on several threads) and merged in a fixed order, so
    the output does not depend on scheduling.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = canonical_key(initial)
    start = replace(initial, depth=0, path=())
    graph = ExchangeGraph({root: start}, set(), depth, True, root)
    frontier = [root]
    mutable = start.quiver.mutable()

    def expand(key: str):
        s = graph.nodes[key]
        return [(k, mutate(s, k, check)) for k in mutable]

    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for level in range(depth):
            if not frontier:
                break
            results = list(pool.map(expand, frontier)) if pool else [expand(k) for k in frontier]
            nxt = []
            for key, children in zip(frontier, results):
                for k, child in children:
                    ck = canonical_key(child)
                    if ck not in graph.nodes:
                        if len(graph.nodes) >= budget:
                            graph.complete = False
                            return graph
                        graph.nodes[ck] = replace(child, depth=level + 1)
                        graph.tree[ck] = (key, k)
                        nxt.append(ck)
                    graph.edges.add((key, k, ck))
                    graph.edges.add((ck, _matching_index(graph.nodes[ck], child, k), key))
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    return graph


def _matching_index(stored: Seed, found: Seed, k: int) -> int:
    """Index of ``stored`` carrying the variable that ``found`` has at ``k``."""
    target = found.vars[k]
    for i, v in enumerate(stored.vars):
        if v == target:
            return i
    raise InvariantViolation("seeds with equal keys do not share variables")


# ---------------------------------------------------------------------------
# charts


_CHART_CACHE: dict[tuple, tuple[RationalFunc, ...]] = {}


def initial_in_chart(s: Seed) -> tuple[RationalFunc, ...]:
    """The initial variables written in the cluster variables of ``s``."""
    key = (s.eps, s.path)
    hit = _CHART_CACHE.get(key)
    if hit is not None:
        return hit
    cur = Seed(s.quiver, tuple(RationalFunc.variable(s.n, i) for i in range(s.n)), None, 0, ())
    for k in reversed(s.path):
        cur = mutate(cur, k, check=False)
    if len(_CHART_CACHE) > 20000:
        _CHART_CACHE.clear()
    _CHART_CACHE[key] = cur.vars
    return cur.vars


def express_in_chart(f: RationalFunc, s: Seed) -> RationalFunc:
    """Rewrite ``f`` (initial-chart function) in the cluster variables of ``s``."""
    return substitute(f, initial_in_chart(s))


# ---------------------------------------------------------------------------
# potentials and the Weyl action


def potential(s: Seed, q: int) -> RationalFunc:
    """The potential at ``q`` from the corner fan of ``s``'s triangulation.

    Requires every triangle at ``q`` to be unfolded and every arc of those
    triangles to be plain except possibly at ``q`` itself, where the tags
    must agree.  With all ends at ``q`` notched the fan sum is the inverse
    potential, provided each corner loses exactly two powers of the potential
    (opposite weight minus adjacent weights equals ``-2``).
    """
    T = s.triangulation
    if T is None:
        raise PotentialUndefined("seed has no triangulation")
    ideal = T.ideal
    corners = ideal.corners(q)
    if not corners:
        raise PotentialUndefined(f"no corner at puncture {q}")
    touching = {t for t, _ in corners}
    for t in touching:
        v, sides = ideal.triangles[t]
        if len(set(sides)) < 3:
            raise PotentialUndefined(f"self-folded triangle at puncture {q}")
        for a in sides:
            arc = T.tagged_arc(a)
            for p, tag in zip(arc.ends, arc.tags):
                if p != q and tag == NOTCHED:
                    raise PotentialUndefined(f"arc {a} is notched away from puncture {q}")
    total = None
    for t, i in corners:
        v, sides = ideal.triangles[t]
        out_side, in_side, opp = sides[i], sides[(i + 2) % 3], sides[(i + 1) % 3]
        if T.signs[q] == -1:
            w = lambda a: puncture_weight(T, a, q)  # noqa: E731
            if w(opp) - w(out_side) - w(in_side) != -2:
                raise PotentialUndefined(f"notched fan at puncture {q} has unbalanced weights")
        term = s.vars[opp] / (s.vars[out_side] * s.vars[in_side])
        total = term if total is None else total + term
    if T.signs[q] == -1:
        total = total.inverse()
    return total


def symbolic_potential(s: Seed, q: int) -> RationalFunc:
    """Fan formula at ``q`` written in the cluster variables of ``s`` itself."""
    return potential(replace(s, vars=tuple(RationalFunc.variable(s.n, i) for i in range(s.n))), q)


def transport(f: RationalFunc, child: Seed, k: int) -> RationalFunc:
    """Rewrite ``f`` from the chart of ``mutate(child, k)`` into the chart of ``child``.

    Only variable ``k`` changes across the edge, so ``f`` is substituted with
    ``y_k -> (M+ + M-)/y'_k`` computed from the child's exchange matrix.
    """
    n = child.n
    sym = [RationalFunc.variable(n, i) for i in range(n)]
    sym[k] = exchange(child.eps, sym, k)
    return substitute(f, sym)


def chart_transport(graph: "ExchangeGraph", f: RationalFunc) -> dict[str, RationalFunc]:
    """``f`` (an initial-chart function) written in every chart of ``graph``.

    Moves outward along BFS tree edges with one :func:`transport` step each,
    which is much cheaper than substituting the chart expressions of the
    initial variables.
    """
    out: dict[str, RationalFunc] = {}
    for key in sorted(graph.nodes, key=lambda key: graph.nodes[key].depth):
        s = graph.nodes[key]
        if key == graph.root:
            out[key] = express_in_chart(f, s)
        else:
            parent, k = graph.tree[key]
            out[key] = transport(out[parent], s, k)
    return out


def potential_charts(graph: "ExchangeGraph", q: int, v: RationalFunc) -> dict[str, tuple[RationalFunc, bool | None]]:
    """``v`` expressed in every chart of ``graph`` by transport along BFS tree edges.

    Each value is ``(expression, agrees)`` where ``agrees`` records whether the
    fan formula evaluated natively in that chart gives the same expression
    (None where the fan formula does not apply).
    """
    out: dict[str, tuple[RationalFunc, bool | None]] = {}
    for key, expr in chart_transport(graph, v).items():
        s = graph.nodes[key]
        try:
            agrees = symbolic_potential(s, q) == expr
        except PotentialUndefined:
            agrees = None
        out[key] = (expr, agrees)
    return out


def weyl(s0: Seed, q: int) -> tuple[RationalFunc, ...]:
    """Images ``v_q^{w(j,q)} A_j`` of the initial variables under the Weyl action at ``q``."""
    v = potential(s0, q)
    T = s0.triangulation
    return tuple(v ** puncture_weight(T, j, q) * s0.vars[j] for j in range(s0.n))


def compose(f: Sequence[RationalFunc], g: Sequence[RationalFunc]) -> tuple[RationalFunc, ...]:
    """Substitution ``g`` after ``f``: variable ``i`` goes to ``g(f_i)``."""
    return tuple(substitute(x, g) for x in f)


def grading_check(s: Seed, q: int, signed: bool = True) -> bool:
    """Homogeneity of every exchange relation of ``s`` for the puncture grading at ``q``.

    Degrees are read from the tagged triangulation: each end at ``q`` counts
    ``+1``, notched ends count ``-1`` when ``signed`` (the sign under which
    tagged variables are homogeneous, since a notched end carries the potential
    factor).  The mutated degree comes from the flipped triangulation.
    """
    T = s.triangulation
    weight = signed_weight if signed else puncture_weight
    deg = [weight(T, j, q) for j in range(s.n)]
    for k in s.quiver.mutable():
        U = tagged_flip(T, k)
        dk2 = weight(U, k, q)
        plus = sum(deg[j] * e for j in range(s.n) if (e := s.eps[j][k]) > 0)
        minus = sum(deg[j] * -e for j in range(s.n) if (e := s.eps[j][k]) < 0)
        if not (deg[k] + dk2 == plus == minus):
            return False
    return True


__all__ = [
    "Quiver",
    "Seed",
    "ExchangeGraph",
    "mutate",
    "mutate_path",
    "mutate_matrix",
    "explore",
    "canonical_key",
    "potential",
    "chart_transport",
    "weyl",
    "freeze",
    "grading_check",
    "initial_seed",
    "quiver_seed",
    "express_in_chart",
    "potential_charts",
    "symbolic_potential",
    "transport",
    "initial_in_chart",
    "exchange_monomials",
    "compose",
    "FrozenIndexError",
    "LaurentViolation",
    "InvariantViolation",
    "PotentialUndefined",
    "LaurentPoly",
    "PLAIN",
]
