"""The Bass-Serre tree of the base splitting: coset vertices and geodesics.

Vertices come in two kinds.  A U-vertex carries a reduced word g and stands
for the trivial-stabilizer coset U.g; its neighbours are the n coset
vertices G_i.g.  A C-vertex carries a factor index i and a coset
representative; its canonical representative has no leading G_i syllable,
which pins the right coset G_i.g uniquely.  Geodesics are computed
arithmetically from normal forms (never by search): translating one
endpoint to the basepoint and reading the connecting word syllable by
syllable emits the alternating U/C chain.  The exponential BFS oracle
below exists to validate that arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import OracleUnavailableError, SystemMismatchError
from .factors import FactorElement
from .words import Word, empty_word, normal_form


@dataclass(frozen=True)
class TreeVertex:
    kind: str  # "u" or "c"
    factor: int  # 0 for U-vertices
    rep: Word

    def __str__(self) -> str:
        if self.kind == "u":
            return f"U({self.rep})"
        return f"C{self.factor}({self.rep})"


def u_vertex(rep: Word) -> TreeVertex:
    return TreeVertex("u", 0, rep)


def c_vertex(factor: int, rep: Word) -> TreeVertex:
    """Canonical coset vertex: a leading syllable of the own factor is absorbed."""
    rep.system.factor(factor)
    if rep.syllables and rep.syllables[0].factor == factor:
        rep = Word(rep.system, rep.syllables[1:])
    return TreeVertex("c", factor, rep)


def vertex_canon(kind: str, factor: int | None, rep: Word) -> TreeVertex:
    if kind == "u":
        return u_vertex(rep)
    if kind == "c" and factor is not None:
        return c_vertex(factor, rep)
    raise ValueError(f"unknown vertex kind {kind!r}")


def act_vertex(v: TreeVertex, g: Word) -> TreeVertex:
    """Right action by g; the result is canonical."""
    moved = v.rep * g
    if v.kind == "u":
        return u_vertex(moved)
    return c_vertex(v.factor, moved)


def _check_system(p: TreeVertex, q: TreeVertex) -> None:
    if p.rep.system != q.rep.system:
        raise SystemMismatchError("vertices belong to different factor systems")


def _strip_leading(w: Word, factor: int) -> Word:
    if w.syllables and w.syllables[0].factor == factor:
        return Word(w.system, w.syllables[1:])
    return w


def _strip_trailing(w: Word, factor: int) -> Word:
    if w.syllables and w.syllables[-1].factor == factor:
        return Word(w.system, w.syllables[:-1])
    return w


def distance(p: TreeVertex, q: TreeVertex) -> int:
    """Tree distance, computed from the normal form of the connecting word.

    distance(U(x), U(y)) = 2*syllables(y x^-1); a C endpoint first absorbs
    one syllable of its own factor and contributes one extra edge.
    """
    _check_system(p, q)
    if p.kind == "u" and q.kind == "u":
        return 2 * (q.rep * p.rep.inverse()).syllable_count()
    if p.kind == "u" and q.kind == "c":
        core = _strip_leading(q.rep * p.rep.inverse(), q.factor)
        return 2 * core.syllable_count() + 1
    if p.kind == "c" and q.kind == "u":
        return distance(q, p)
    if p == q:
        return 0
    core = _strip_leading(q.rep * p.rep.inverse(), q.factor)
    core = _strip_trailing(core, p.factor)
    return 2 * core.syllable_count() + 2


def _origin_to_u(w: Word) -> list[TreeVertex]:
    """Geodesic vertex chain from U(1) to U(w), built from suffixes of w."""
    system = w.system
    chain = [u_vertex(empty_word(system))]
    suffix = empty_word(system)
    for s in reversed(w.syllables):
        chain.append(TreeVertex("c", s.factor, suffix))
        suffix = Word(system, (s,) + suffix.syllables)
        chain.append(u_vertex(suffix))
    return chain


def _origin_to_c(factor: int, rep: Word) -> list[TreeVertex]:
    chain = _origin_to_u(rep)
    chain.append(TreeVertex("c", factor, rep))
    return chain


def geodesic(p: TreeVertex, q: TreeVertex) -> tuple[TreeVertex, ...]:
    """The unique path from p to q, both endpoints included."""
    _check_system(p, q)
    if p == q:
        return (p,)
    if p.kind == "u":
        shift = p.rep
        moved = act_vertex(q, shift.inverse())
        if moved.kind == "u":
            chain = _origin_to_u(moved.rep)
        else:
            chain = _origin_to_c(moved.factor, moved.rep)
        return tuple(act_vertex(v, shift) for v in chain)
    if q.kind == "u":
        return tuple(reversed(geodesic(q, p)))
    # C to C: pick the nearest U-neighbour of the source by absorbing a
    # trailing syllable of the source factor from the connecting word.
    shift = p.rep
    moved = act_vertex(q, shift.inverse())
    w = moved.rep
    system = w.system
    if w.syllables and w.syllables[-1].factor == p.factor:
        c = Word(system, (w.syllables[-1],))
        w_short = Word(system, w.syllables[:-1])
    else:
        c = empty_word(system)
        w_short = w
    inner = _origin_to_c(moved.factor, w_short)
    chain = [TreeVertex("c", p.factor, empty_word(system))]
    chain.extend(act_vertex(v, c) for v in inner)
    return tuple(act_vertex(v, shift) for v in chain)


def lies_between(x: TreeVertex, p: TreeVertex, q: TreeVertex) -> bool:
    """True when x sits on the geodesic from p to q (endpoints included)."""
    return x in geodesic(p, q)


@dataclass(frozen=True)
class Ball:
    """Induced subgraph on the metric ball around a center vertex."""

    center: TreeVertex
    radius: int
    vertices: tuple[TreeVertex, ...]
    adjacency: dict[TreeVertex, tuple[TreeVertex, ...]]


def _vertex_sort_key(v: TreeVertex):
    payloads = tuple((s.factor, s.payload) for s in v.rep.syllables)
    return (v.kind, v.factor, len(payloads), payloads)


def neighbors(v: TreeVertex) -> list[TreeVertex]:
    """Immediate neighbours: U.g touches every G_i.g; G_i.g touches U.(h g)."""
    system = v.rep.system
    if v.kind == "u":
        return [c_vertex(i, v.rep) for i in range(1, system.n + 1)]
    backend = system.factor(v.factor)
    if not backend.is_finite():
        raise OracleUnavailableError("oracle requires finite factors")
    out = []
    for payload in backend.payloads():
        head = FactorElement(v.factor, payload)
        out.append(u_vertex(normal_form(system, (head,) + v.rep.syllables)))
    return out


def bfs_ball(center: TreeVertex, radius: int) -> Ball:
    """Exact metric ball with induced adjacency; requires finite factors."""
    system = center.rep.system
    if not system.all_finite:
        raise OracleUnavailableError("oracle requires finite factors")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    depth = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if depth[v] == radius:
            continue
        for w in neighbors(v):
            if w not in depth:
                depth[w] = depth[v] + 1
                queue.append(w)
    vertices = tuple(sorted(depth, key=_vertex_sort_key))
    inside = set(vertices)
    adjacency = {
        v: tuple(sorted((w for w in neighbors(v) if w in inside), key=_vertex_sort_key))
        for v in vertices
    }
    return Ball(center, radius, vertices, adjacency)


def ball_distances(ball: Ball, source: TreeVertex) -> dict[TreeVertex, int]:
    """BFS distances inside the ball; inside a tree these are exact."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in ball.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist
