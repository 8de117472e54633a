"""Punctured surfaces, ideal and tagged triangulations, flips and cutting.

A tagged triangulation is stored as its associated ideal triangulation
together with a sign per puncture (``+1`` plain, ``-1`` notched).  A
triangle is a pair ``(vertices, sides)`` where side ``i`` runs from
``vertices[i]`` to ``vertices[i+1]`` counterclockwise; every arc label
occupies exactly two side slots and the gluing is read off from the labels,
always orientation-reversing.

Inside a self-folded triangle the label occurring twice is the radius and
the remaining label the enclosing loop.  The ideal loop is never itself a
tagged arc: its label stands for the radius notched at the interior
puncture.  We normalize so that every interior puncture of a self-folded
triangle carries sign ``+1``.

Arc and puncture indices are 0-based in the API and 1-based in JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

PLAIN, NOTCHED = "plain", "notched"

Triangle = tuple[tuple[int, int, int], tuple[int, int, int]]


class SurfaceError(ValueError):
    """Invalid surface or triangulation data."""


class CutError(ValueError):
    """The requested arc cannot be cut along."""


@dataclass(frozen=True)
class SurfaceSpec:
    """Closed surface of genus ``g`` with ``p`` punctures."""

    g: int
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.g, int) or not isinstance(self.p, int):
            raise SurfaceError("genus and puncture count must be integers")
        if self.g < 0 or self.p < 1:
            raise SurfaceError(f"need g >= 0 and p >= 1, got g={self.g}, p={self.p}")
        if 2 - 2 * self.g - self.p >= 0:
            raise SurfaceError(f"Sigma_{{{self.g},{self.p}}} has nonnegative Euler characteristic")

    @property
    def n_arcs(self) -> int:
        return 6 * self.g - 6 + 3 * self.p

    @property
    def n_triangles(self) -> int:
        return 4 * self.g - 4 + 2 * self.p

    def name(self) -> str:
        return f"S{self.g}_{self.p}"


def _rotate(tri: Triangle, r: int) -> Triangle:
    v, s = tri
    return (v[r:] + v[:r], s[r:] + s[:r])


def _canonical_triangle(tri: Triangle) -> Triangle:
    return min((_rotate(tri, r) for r in range(3)), key=lambda t: (t[1], t[0]))


def _self_fold(tri: Triangle):
    """``(loop, radius, base, interior)`` for a self-folded triangle, else None."""
    v, s = tri
    for i in range(3):
        if s[i] == s[(i + 1) % 3]:
            return s[(i + 2) % 3], s[i], v[i], v[(i + 1) % 3]
    return None


@dataclass(frozen=True)
class IdealTriangulation:
    """Ideal triangulation as canonical gluing data."""

    n_arcs: int
    n_punctures: int
    triangles: tuple[Triangle, ...]

    @staticmethod
    def make(n_arcs: int, n_punctures: int, triangles: Iterable[Triangle]) -> "IdealTriangulation":
        tris = tuple(sorted((_canonical_triangle((tuple(v), tuple(s))) for v, s in triangles), key=lambda t: (t[1], t[0])))
        return IdealTriangulation(n_arcs, n_punctures, tris)

    def slots(self, label: int) -> list[tuple[int, int]]:
        return [(t, s) for t, (_, sides) in enumerate(self.triangles) for s in range(3) if sides[s] == label]

    def gluing(self) -> list[tuple[int, int, int, int]]:
        out = []
        for k in range(self.n_arcs):
            (t, s), (u, r) = self.slots(k)
            out.append((t, s, u, r))
        return out

    def self_folded(self) -> tuple[bool, ...]:
        return tuple(_self_fold(t) is not None for t in self.triangles)

    def folds(self) -> list[tuple[int, int, int, int]]:
        """``(loop, radius, base, interior)`` for every self-folded triangle."""
        return [f for f in (_self_fold(t) for t in self.triangles) if f is not None]

    def arc_ends(self, label: int) -> tuple[int, int]:
        (t, s) = self.slots(label)[0]
        v = self.triangles[t][0]
        return v[s], v[(s + 1) % 3]

    def corners(self, q: int) -> list[tuple[int, int]]:
        return [(t, i) for t, (v, _) in enumerate(self.triangles) for i in range(3) if v[i] == q]

    def validate(self) -> None:
        n = self.n_arcs
        counts = [0] * n
        for v, s in self.triangles:
            for a in s:
                if not 0 <= a < n:
                    raise SurfaceError(f"arc label {a} out of range")
                counts[a] += 1
            for x in v:
                if not 0 <= x < self.n_punctures:
                    raise SurfaceError(f"puncture id {x} out of range")
        if any(c != 2 for c in counts):
            raise SurfaceError("every arc must occupy exactly two side slots")
        for t, s, u, r in self.gluing():
            v1, v2 = self.triangles[t][0], self.triangles[u][0]
            if v1[s] != v2[(r + 1) % 3] or v1[(s + 1) % 3] != v2[r]:
                raise SurfaceError(f"inconsistent puncture ids across arc {self.triangles[t][1][s]}")
        # connectivity of the glued complex
        seen = {0}
        stack = [0]
        adj: dict[int, set[int]] = {}
        for t, _, u, _ in self.gluing():
            adj.setdefault(t, set()).add(u)
            adj.setdefault(u, set()).add(t)
        while stack:
            t = stack.pop()
            for u in adj.get(t, ()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(self.triangles):
            raise SurfaceError("triangulation is not connected")
        # every puncture id must be a single vertex of the glued complex
        classes = _vertex_classes(self.triangles)
        ids = {}
        for cls in classes:
            pid = {self.triangles[t][0][i] for t, i in cls}
            if len(pid) != 1:
                raise SurfaceError("corner puncture ids disagree around a vertex")
            x = pid.pop()
            if x in ids:
                raise SurfaceError(f"puncture {x} appears as two separate vertices")
            ids[x] = cls
        if len(ids) != self.n_punctures:
            raise SurfaceError("some puncture id is unused")


def _vertex_classes(triangles: Sequence[Triangle]) -> list[list[tuple[int, int]]]:
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    where: dict[int, list[tuple[int, int]]] = {}
    for t, (_, s) in enumerate(triangles):
        for i in range(3):
            find((t, i))
            where.setdefault(s[i], []).append((t, i))
    for slots in where.values():
        if len(slots) != 2:
            continue
        (t, s), (u, r) = slots
        union((t, s), (u, (r + 1) % 3))
        union((t, (s + 1) % 3), (u, r))
    groups: dict[tuple[int, int], list] = {}
    for x in sorted(parent):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


@dataclass(frozen=True)
class TaggedArc:
    """A tagged arc: its two endpoint punctures and the tag at each end."""

    ends: tuple[int, int]
    tags: tuple[str, str]

    def notched_at(self) -> tuple[int, ...]:
        return tuple(sorted({p for p, t in zip(self.ends, self.tags) if t == NOTCHED}))


@dataclass(frozen=True)
class TaggedTriangulation:
    """Tagged triangulation as (associated ideal triangulation, puncture signs)."""

    surface: SurfaceSpec
    ideal: IdealTriangulation
    signs: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.ideal.n_arcs

    @property
    def arcs(self) -> tuple[TaggedArc, ...]:
        return tuple(self.tagged_arc(k) for k in range(self.n))

    def fold_of(self, k: int):
        for f in self.ideal.folds():
            if k in (f[0], f[1]):
                return f
        return None

    def tagged_arc(self, k: int) -> TaggedArc:
        tag = lambda e: PLAIN if e > 0 else NOTCHED  # noqa: E731
        f = self.fold_of(k)
        if f is not None:
            loop, radius, base, q = f
            sign_q = self.signs[q] if k == radius else -self.signs[q]
            return TaggedArc((base, q), (tag(self.signs[base]), tag(sign_q)))
        a, b = self.ideal.arc_ends(k)
        return TaggedArc((a, b), (tag(self.signs[a]), tag(self.signs[b])))

    def is_radius(self, k: int) -> bool:
        f = self.fold_of(k)
        return f is not None and f[1] == k

    def is_loop(self, k: int) -> bool:
        f = self.fold_of(k)
        return f is not None and f[0] == k

    def notched_arcs(self) -> list[int]:
        return [k for k in range(self.n) if NOTCHED in self.tagged_arc(k).tags]

    def validate(self) -> None:
        s = self.surface
        if self.ideal.n_arcs != s.n_arcs:
            raise SurfaceError(f"expected {s.n_arcs} arcs, got {self.ideal.n_arcs}")
        if len(self.ideal.triangles) != s.n_triangles:
            raise SurfaceError(f"expected {s.n_triangles} triangles, got {len(self.ideal.triangles)}")
        if self.ideal.n_punctures != s.p or len(self.signs) != s.p:
            raise SurfaceError("puncture count mismatch")
        if any(e not in (1, -1) for e in self.signs):
            raise SurfaceError("signs must be +1 or -1")
        self.ideal.validate()
        for _, _, _, q in self.ideal.folds():
            if self.signs[q] != 1:
                raise SurfaceError("self-folded interior puncture must carry sign +1")

    # ------------------------------------------------------------------ JSON
    def to_dict(self) -> dict:
        ideal = self.ideal
        tags = []
        for arc in self.arcs:
            tags.append(list(arc.tags))
        return {
            "surface": {"g": self.surface.g, "p": self.surface.p},
            "arcs": self.n,
            "triangles": [[a + 1 for a in s] for _, s in ideal.triangles],
            "vertices": [[x + 1 for x in v] for v, _ in ideal.triangles],
            "gluing": [list(g) for g in ideal.gluing()],
            "tags": tags,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_dict(data: dict) -> "TaggedTriangulation":
        try:
            spec = SurfaceSpec(int(data["surface"]["g"]), int(data["surface"]["p"]))
            n = int(data["arcs"])
            sides = [tuple(int(a) - 1 for a in t) for t in data["triangles"]]
            verts = [tuple(int(x) - 1 for x in v) for v in data["vertices"]]
            tags = [tuple(t) for t in data["tags"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SurfaceError(f"malformed triangulation: {exc}") from exc
        if len(sides) != len(verts) or any(len(t) != 3 for t in sides + verts):
            raise SurfaceError("triangles and vertices must be parallel lists of triples")
        raw = IdealTriangulation(n, spec.p, tuple(zip(verts, sides)))
        try:
            expected = [list(g) for g in raw.gluing()]
        except ValueError as exc:
            raise SurfaceError("every arc must occupy exactly two side slots") from exc
        if [list(map(int, g)) for g in data.get("gluing", expected)] != expected:
            raise SurfaceError("gluing does not match the side labels")
        ideal = IdealTriangulation.make(n, spec.p, zip(verts, sides))
        if len(tags) != n:
            raise SurfaceError("one tag pair per arc required")
        signs: dict[int, int] = {}
        provisional = TaggedTriangulation(spec, ideal, (1,) * spec.p)
        for k in range(n):
            if any(t not in (PLAIN, NOTCHED) for t in tags[k]) or len(tags[k]) != 2:
                raise SurfaceError(f"bad tags for arc {k + 1}")
            f = provisional.fold_of(k)
            if f is not None:
                loop, radius, base, q = f
                ends = (base, q)
                flip_q = -1 if k == loop else 1
            else:
                ends = ideal.arc_ends(k)
                flip_q = 1
            for j, (p, t) in enumerate(zip(ends, tags[k])):
                e = 1 if t == PLAIN else -1
                if j == 1 and f is not None:
                    e *= flip_q
                if signs.setdefault(p, e) != e:
                    raise SurfaceError(f"tags at puncture {p + 1} are incompatible")
        T = TaggedTriangulation(spec, ideal, tuple(signs.get(i, 1) for i in range(spec.p)))
        T.validate()
        return T

    @staticmethod
    def from_json(text: str) -> "TaggedTriangulation":
        return TaggedTriangulation.from_dict(json.loads(text))


def _normalize(spec: SurfaceSpec, n: int, triangles: Iterable[Triangle], signs: Sequence[int]) -> TaggedTriangulation:
    tris = [(tuple(v), tuple(s)) for v, s in triangles]
    signs = list(signs)
    for v, s in list(tris):
        f = _self_fold((v, s))
        if f is not None and signs[f[3]] == -1:
            loop, radius = f[0], f[1]
            swap = {loop: radius, radius: loop}
            tris = [(vv, tuple(swap.get(a, a) for a in ss)) for vv, ss in tris]
            signs[f[3]] = 1
    return TaggedTriangulation(spec, IdealTriangulation.make(n, spec.p, tris), tuple(signs))


def ideal_flip(triangles: Sequence[Triangle], k: int) -> list[Triangle]:
    """Flip arc ``k`` inside its quadrilateral.  ``k`` must not be a radius."""
    where = [(t, s) for t, (_, sides) in enumerate(triangles) for s in range(3) if sides[s] == k]
    (t1, s1), (t2, s2) = where
    if t1 == t2:
        raise SurfaceError(f"arc {k} is the radius of a self-folded triangle")
    (v0, v1, v2), (_, a1, a2) = _rotate(triangles[t1], s1)
    (u0, u1, w2), (_, b1, b2) = _rotate(triangles[t2], s2)
    new1 = ((w2, v1, v2), (b2, a1, k))
    new2 = ((v2, v0, w2), (a2, b1, k))
    out = [tri for i, tri in enumerate(triangles) if i not in (t1, t2)]
    return out + [new1, new2]


def tagged_flip(T: TaggedTriangulation, k: int) -> TaggedTriangulation:
    """Flip tagged arc ``k``; the result differs from ``T`` only in arc ``k``."""
    if not 0 <= k < T.n:
        raise SurfaceError(f"arc index {k} out of range")
    tris = list(T.ideal.triangles)
    signs = list(T.signs)
    f = T.fold_of(k)
    if f is not None and f[1] == k:
        loop, radius, _, q = f
        swap = {loop: radius, radius: loop}
        tris = [(v, tuple(swap.get(a, a) for a in s)) for v, s in tris]
        signs[q] = -signs[q]
    return _normalize(T.surface, T.n, ideal_flip(tris, k), signs)


def adjacency_matrix(T: TaggedTriangulation) -> tuple[tuple[int, ...], ...]:
    """Exchange matrix summed over unfolded triangles, radii sent to their loops."""
    n = T.n
    pi = list(range(n))
    for loop, radius, _, _ in T.ideal.folds():
        pi[radius] = loop
    B = [[0] * n for _ in range(n)]
    for tri in T.ideal.triangles:
        if _self_fold(tri) is not None:
            continue
        s = tri[1]
        for i in range(3):
            a, b = pi[s[i]], pi[s[(i + 1) % 3]]
            if a != b:
                B[a][b] += 1
                B[b][a] -= 1
    return tuple(tuple(B[pi[i]][pi[j]] for j in range(n)) for i in range(n))


def puncture_weight(T: TaggedTriangulation, k: int, q: int) -> int:
    """Number of ends of tagged arc ``k`` at puncture ``q``."""
    return sum(1 for p in T.tagged_arc(k).ends if p == q)


def signed_weight(T: TaggedTriangulation, k: int, q: int) -> int:
    """Ends at ``q`` counted +1 when plain and -1 when notched."""
    arc = T.tagged_arc(k)
    return sum((1 if t == PLAIN else -1) for p, t in zip(arc.ends, arc.tags) if p == q)


# ---------------------------------------------------------------------------
# base triangulations


def _insert_puncture(tris: list[Triangle], idx: int, q: int, labels: Sequence[int]) -> None:
    (v0, v1, v2), (s0, s1, s2) = tris.pop(idx)
    x0, x1, x2 = labels
    tris.extend(
        [
            ((v0, v1, q), (s0, x1, x0)),
            ((v1, v2, q), (s1, x2, x1)),
            ((v2, v0, q), (s2, x0, x2)),
        ]
    )


def base_triangulation(spec: SurfaceSpec) -> TaggedTriangulation:
    """Deterministic all-plain triangulation of ``spec``.

    Genus 0 starts from two triangles glued along their boundary, genus
    ``g >= 1`` from a fan-triangulated ``4g``-gon with sides
    ``a1 b1 a1^-1 b1^-1 ...``.  Remaining punctures are inserted one at a time
    into the most recently created triangle.
    """
    labels = iter(range(10**6))
    if spec.g == 0:
        a, b, c = next(labels), next(labels), next(labels)
        tris: list[Triangle] = [((0, 1, 2), (a, b, c)), ((1, 0, 2), (a, c, b))]
        nxt = 3
    else:
        m = 4 * spec.g
        edge = {}
        for i in range(spec.g):
            ai, bi = next(labels), next(labels)
            edge[4 * i], edge[4 * i + 2] = ai, ai
            edge[4 * i + 1], edge[4 * i + 3] = bi, bi
        diag = {j: next(labels) for j in range(2, m - 1)}
        tris = []
        for j in range(1, m - 1):
            s0 = edge[0] if j == 1 else diag[j]
            s2 = edge[m - 1] if j + 1 == m - 1 else diag[j + 1]
            tris.append(((0, j, j + 1), (s0, edge[j], s2)))
        # placeholder corner ids; collapsed to punctures below
        nxt = m
    while True:
        classes = _vertex_classes(tris)
        if len(classes) >= spec.p:
            break
        _insert_puncture(tris, len(tris) - 1, nxt, (next(labels), next(labels), next(labels)))
        nxt += 1
    # assign puncture ids by vertex class in order of first corner
    order = sorted(_vertex_classes(tris), key=min)
    mapping = {}
    for pid, cls in enumerate(order):
        for t, i in cls:
            mapping[(t, i)] = pid
    tris = [(tuple(mapping[(t, i)] for i in range(3)), s) for t, (_, s) in enumerate(tris)]
    # relabel arcs in order of first appearance
    relabel: dict[int, int] = {}
    for _, s in tris:
        for a in s:
            relabel.setdefault(a, len(relabel))
    tris = [(v, tuple(relabel[a] for a in s)) for v, s in tris]
    T = TaggedTriangulation(spec, IdealTriangulation.make(spec.n_arcs, spec.p, tris), (1,) * spec.p)
    T.validate()
    return T


# ---------------------------------------------------------------------------
# cutting


@dataclass(frozen=True)
class CutPiece:
    """A connected component after cutting, as a frozen quiver description.

    ``labels`` lists the global names of the piece's indices: an ``int`` for a
    surviving arc and ``"i1"``/``"i2"`` for the two copies of the cut arc.
    """

    labels: tuple
    frozen: tuple[int, ...]
    eps: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CutResult:
    arc: int
    pieces: tuple[CutPiece, ...]
    split_map: dict = field(default_factory=dict)
    eps: tuple[tuple[int, ...], ...] = ()
    labels: tuple = ()

    def split_identity_holds(self, original: Sequence[Sequence[int]]) -> bool:
        k = self.arc
        pos = {lab: i for i, lab in enumerate(self.labels)}
        i1, i2 = pos["i1"], pos["i2"]
        for j, lab in enumerate(self.labels):
            if isinstance(lab, int) and lab != k:
                if original[k][lab] != self.eps[i1][j] + self.eps[i2][j]:
                    return False
        return True


def cut_along(T: TaggedTriangulation, k: int) -> CutResult:
    """Cut along arc ``k`` at the level of exchange matrices.

    The two side slots of ``k`` become frozen indices ``i1`` and ``i2``.
    Arcs of self-folded triangles are rejected: the loop bounds a
    once-punctured monogon and the radius does not satisfy the split
    identity.
    """
    if T.fold_of(k) is not None:
        raise CutError(f"arc {k} lies in a self-folded triangle (once-punctured monogon)")
    tris = [list(s) for _, s in T.ideal.triangles]
    (t1, s1), (t2, s2) = T.ideal.slots(k)
    I1, I2 = T.n, T.n + 1
    tris[t1][s1] = I1
    tris[t2][s2] = I2
    labels = tuple([a for a in range(T.n) if a != k] + ["i1", "i2"])
    m = T.n + 2
    pi = list(range(m))
    for loop, radius, _, _ in T.ideal.folds():
        pi[radius] = loop
    B = [[0] * m for _ in range(m)]
    for tri, sides in zip(T.ideal.triangles, tris):
        if _self_fold(tri) is not None:
            continue
        for i in range(3):
            a, b = pi[sides[i]], pi[sides[(i + 1) % 3]]
            if a != b:
                B[a][b] += 1
                B[b][a] -= 1
    full_index = [a for a in range(T.n) if a != k] + [I1, I2]
    eps = tuple(tuple(B[pi[a]][pi[b]] for b in full_index) for a in full_index)
    # connected components of triangles glued along every arc except k
    parent = list(range(len(tris)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    where: dict[int, list[int]] = {}
    for t, sides in enumerate(tris):
        for a in sides:
            where.setdefault(a, []).append(t)
    for a, ts in where.items():
        if len(ts) == 2:
            parent[find(ts[0])] = find(ts[1])
    comps: dict[int, list[int]] = {}
    for t in range(len(tris)):
        comps.setdefault(find(t), []).append(t)
    pieces = []
    for ts in sorted(comps.values()):
        present = sorted({a for t in ts for a in tris[t]})
        idx = [full_index.index(a) for a in present]
        plabels = tuple(labels[i] for i in idx)
        frozen = tuple(i for i, lab in enumerate(plabels) if lab in ("i1", "i2"))
        peps = tuple(tuple(eps[i][j] for j in idx) for i in idx)
        pieces.append(CutPiece(plabels, frozen, peps))
    return CutResult(k, tuple(pieces), {k: ("i1", "i2")}, eps, labels)
