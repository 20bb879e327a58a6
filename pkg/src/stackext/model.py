"""Core model for stack layouts (book embeddings) and extension instances.

A stack layout of a graph places all vertices on a line (the spine) and
assigns every edge to one of ``ell`` pages so that edges sharing a page
can be drawn as arcs in a half-plane without crossings.  Two edges on the
same page cross exactly when their endpoints alternate along the spine.

An extension instance consists of a graph ``G``, a subgraph ``H`` and a
valid layout of ``H``.  The question is whether the layout can be
completed to a valid layout of ``G`` that keeps every spine position and
page choice made for ``H``.

Conventions used throughout the package:

* spine ranks are 1-based,
* gaps (candidate insertion intervals) are 1-based: gap ``i`` lies
  between spine positions ``i - 1`` and ``i``, so a spine with ``n``
  vertices has gaps ``1 .. n + 1``,
* pages are 1-based: ``1 .. ell``,
* face depth 0 is the outer face of a page.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional


Vertex = str
Edge = tuple[Vertex, Vertex]

# Gap and page indices are plain ints; the aliases document intent.
GapIndex = int
Page = int


class InputError(ValueError):
    """Raised for structurally invalid graphs, layouts or instances."""


def edge(u: Vertex, v: Vertex) -> Edge:
    """Normalized undirected edge: endpoints sorted, self-loops rejected."""
    if u == v:
        raise InputError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a fixed, duplicate-free vertex order."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise InputError(f"duplicate vertex {v!r}")
            seen.add(v)
        normalized = []
        known = set()
        for e in self.edges:
            e = edge(*e)
            if e in known:
                raise InputError(f"multi-edge {e!r}")
            if e[0] not in seen or e[1] not in seen:
                raise InputError(f"edge {e!r} has an unknown endpoint")
            known.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "_vset", frozenset(seen))
        object.__setattr__(self, "_eset", frozenset(known))

    @property
    def vertex_set(self) -> frozenset[Vertex]:
        return self._vset  # type: ignore[attr-defined]

    @property
    def edge_set(self) -> frozenset[Edge]:
        return self._eset  # type: ignore[attr-defined]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return edge(u, v) in self.edge_set


@dataclass(frozen=True)
class SpineOrder:
    """Total order of a vertex set along the spine, with 1-based ranks."""

    order: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        ranks = {}
        for i, v in enumerate(self.order, start=1):
            if v in ranks:
                raise InputError(f"vertex {v!r} appears twice on the spine")
            ranks[v] = i
        object.__setattr__(self, "_rank", MappingProxyType(ranks))

    def rank_of(self, v: Vertex) -> int:
        try:
            return self._rank[v]  # type: ignore[attr-defined]
        except KeyError:
            raise InputError(f"vertex {v!r} is not on the spine") from None

    def __contains__(self, v: Vertex) -> bool:
        return v in self._rank  # type: ignore[attr-defined]

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class Layout:
    """Spine order plus a page assignment, not necessarily crossing-free.

    ``page_of`` maps every assigned edge to a page in ``1 .. ell``.
    Whether the assignment is actually crossing-free is checked by
    :func:`is_valid`; keeping construction and validation separate lets
    solvers assemble candidate layouts cheaply.
    """

    spine: SpineOrder
    ell: int
    page_of: Mapping[Edge, int]

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise InputError(f"page count must be positive, got {self.ell}")
        fixed = {}
        for e, p in self.page_of.items():
            e = edge(*e)
            if e in fixed:
                raise InputError(f"multi-edge {e!r}")
            if not 1 <= p <= self.ell:
                raise InputError(f"page {p} of edge {e!r} outside 1..{self.ell}")
            if e[0] not in self.spine or e[1] not in self.spine:
                raise InputError(f"edge {e!r} has an endpoint off the spine")
            fixed[e] = p
        object.__setattr__(self, "page_of", MappingProxyType(fixed))
        by_page: list[list[Edge]] = [[] for _ in range(self.ell + 1)]
        for e, p in fixed.items():
            by_page[p].append(e)
        object.__setattr__(
            self, "_by_page", tuple(tuple(sorted(es)) for es in by_page)
        )

    def edges_on_page(self, p: Page) -> tuple[Edge, ...]:
        if not 1 <= p <= self.ell:
            raise InputError(f"page {p} outside 1..{self.ell}")
        return self._by_page[p]  # type: ignore[attr-defined]

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.page_of))

    def rank_of(self, v: Vertex) -> int:
        return self.spine.rank_of(v)


def make_layout(
    spine: Iterable[Vertex], ell: int, assignments: Iterable[tuple[Vertex, Vertex, int]]
) -> Layout:
    """Convenience constructor from ``(u, v, page)`` triples."""
    return Layout(
        SpineOrder(tuple(spine)),
        ell,
        {edge(u, v): p for u, v, p in assignments},
    )


# ---------------------------------------------------------------------------
# basic predicates


def crosses(spine: SpineOrder, e1: Edge, e2: Edge) -> bool:
    """Do two edges cross when drawn on the same page of this spine?

    Edges cross exactly when their four endpoints are distinct and
    alternate along the spine.  Edges sharing an endpoint never cross.
    """
    a, b = sorted((spine.rank_of(e1[0]), spine.rank_of(e1[1])))
    c, d = sorted((spine.rank_of(e2[0]), spine.rank_of(e2[1])))
    return a < c < b < d or c < a < d < b


def is_valid(graph: Graph, layout: Layout) -> bool:
    """Is ``layout`` a valid stack layout of ``graph``?

    Requires the spine to order exactly the graph's vertices, a page in
    range for every edge, and no same-page crossing.  Quadratic in the
    number of edges.
    """
    if len(layout.spine) != len(graph.vertices):
        return False
    if any(v not in layout.spine for v in graph.vertices):
        return False
    if set(layout.page_of) != graph.edge_set:
        return False
    for p in range(1, layout.ell + 1):
        page = layout.edges_on_page(p)
        for i, e1 in enumerate(page):
            for e2 in page[i + 1 :]:
                if crosses(layout.spine, e1, e2):
                    return False
    return True


def find_crossing(layout: Layout) -> Optional[tuple[Edge, Edge, Page]]:
    """First same-page crossing pair in canonical order, if any."""
    for p in range(1, layout.ell + 1):
        page = layout.edges_on_page(p)
        for i, e1 in enumerate(page):
            for e2 in page[i + 1 :]:
                if crosses(layout.spine, e1, e2):
                    return e1, e2, p
    return None


def extends(layout_g: Layout, layout_h: Layout) -> bool:
    """Does ``layout_g`` preserve every decision made in ``layout_h``?

    True when the smaller spine appears as a subsequence of the larger
    one and every assigned edge keeps its page.
    """
    it = iter(layout_g.spine)
    for v in layout_h.spine:
        for w in it:
            if w == v:
                break
        else:
            return False
    for e, p in layout_h.page_of.items():
        if layout_g.page_of.get(e) != p:
            return False
    return True


# ---------------------------------------------------------------------------
# visibility
#
# Positions are doubled so that gaps fit between vertex ranks as integers:
# vertex with rank r sits at 2r, gap g sits at 2g - 1.


def _gap_pos(g: GapIndex) -> int:
    return 2 * g - 1


def _blocked(pairs: Iterable[tuple[int, int]], a: int, b: int) -> bool:
    # a < b are positions; blocked iff some pair alternates with (a, b)
    for x, y in pairs:
        if x < a < y < b or a < x < b < y:
            return True
    return False


def _page_pairs(layout: Layout, p: Page) -> list[tuple[int, int]]:
    out = []
    for u, v in layout.edges_on_page(p):
        ru, rv = layout.rank_of(u), layout.rank_of(v)
        if ru > rv:
            ru, rv = rv, ru
        out.append((2 * ru, 2 * rv))
    return out

def sees(layout: Layout, u: Vertex, v: Vertex, p: Page) -> bool:
    """Could the edge ``uv`` be added to page ``p`` without a crossing?

    Edges incident to ``u`` or to ``v`` never block, matching the
    crossing rule.  Symmetric in ``u`` and ``v``.
    """
    a, b = sorted((2 * layout.rank_of(u), 2 * layout.rank_of(v)))
    return not _blocked(_page_pairs(layout, p), a, b)


def gap_sees_vertex(layout: Layout, g: GapIndex, u: Vertex, p: Page) -> bool:
    """Would a vertex dropped into gap ``g`` see ``u`` on page ``p``?

    Equivalent to :func:`sees` with one endpoint replaced by the gap
    position.  Used by the greedy solvers, which place new vertices gap
    by gap.
    """
    if not 1 <= g <= len(layout.spine) + 1:
        raise InputError(f"gap {g} outside 1..{len(layout.spine) + 1}")
    a, b = sorted((_gap_pos(g), 2 * layout.rank_of(u)))
    return not _blocked(_page_pairs(layout, p), a, b)


# ---------------------------------------------------------------------------
# pages as plane subdivisions


def page_width(layout: Layout) -> int:
    """Largest number of same-page edges strictly spanning a single gap."""
    n = len(layout.spine)
    best = 0
    for p in range(1, layout.ell + 1):
        diff = [0] * (n + 3)
        for a, b in _page_pairs(layout, p):
            lo, hi = a // 2 + 1, b // 2  # spanned gaps
            if lo <= hi:
                diff[lo] += 1
                diff[hi + 1] -= 1
        run = 0
        for g in range(1, n + 2):
            run += diff[g]
            if run > best:
                best = run
    return best


@dataclass(frozen=True)
class Face:
    """One region of a page: the outer face or the region below an edge.

    ``edge`` is ``None`` for the outer face.  ``gap_lo .. gap_hi`` is the
    run of gaps the face spans; the outer face spans every gap.  ``depth``
    counts how many edges lie above the face, 0 for the outer face.
    """

    page: Page
    edge: Optional[Edge]
    depth: int
    gap_lo: GapIndex
    gap_hi: GapIndex

    @property
    def is_outer(self) -> bool:
        return self.edge is None

    def spans(self, g: GapIndex) -> bool:
        return self.gap_lo <= g <= self.gap_hi


def faces(layout: Layout, p: Page) -> tuple[Face, ...]:
    """All faces of page ``p``: the outer face plus one per assigned edge.

    Only meaningful for layouts whose page ``p`` is crossing-free; the
    faces of a crossing-free page are laterally ordered by containment,
    and an edge's depth is the number of edges enclosing it (endpoints
    shared with the enclosing edge count as enclosed).
    """
    n = len(layout.spine)
    page = layout.edges_on_page(p)
    spans = []
    for u, v in page:
        ru, rv = layout.rank_of(u), layout.rank_of(v)
        if ru > rv:
            ru, rv = rv, ru
        spans.append((ru, rv))
    out = [Face(p, None, 0, 1, n + 1)]
    for e, (ru, rv) in zip(page, spans):
        depth = 1 + sum(
            1
            for f, (su, sv) in zip(page, spans)
            if f != e and su <= ru and rv <= sv
        )
        out.append(Face(p, e, depth, ru + 1, rv))
    out.sort(key=lambda f: (f.depth, f.gap_lo, f.gap_hi))
    return tuple(out)


def face_chain(layout: Layout, p: Page, g: GapIndex) -> tuple[Face, ...]:
    """Faces spanning gap ``g``, outermost first.

    On a crossing-free page the spanning faces are totally ordered by
    containment and their depths are exactly ``0 .. len(chain) - 1``.
    """
    chain = [f for f in faces(layout, p) if f.spans(g)]
    chain.sort(key=lambda f: f.depth)
    return tuple(chain)


def face_at_distance(
    layout: Layout, p: Page, g: GapIndex, d: int
) -> Optional[Face]:
    """The face at depth ``d`` over gap ``g``, or ``None`` if the stack
    of edges over ``g`` is shallower than ``d``."""
    chain = face_chain(layout, p, g)
    if 0 <= d < len(chain):
        return chain[d]
    return None


def _nested_pairs(layout: Layout, face: Face) -> list[tuple[int, int]]:
    # rank spans of the page's edges lying inside ``face``
    pairs = []
    for u, v in layout.edges_on_page(face.page):
        e = edge(u, v)
        if e == face.edge:
            continue
        ru, rv = layout.rank_of(u), layout.rank_of(v)
        if ru > rv:
            ru, rv = rv, ru
        if face.is_outer or (face.gap_lo - 1 <= ru and rv <= face.gap_hi):
            pairs.append((ru, rv))
    return pairs


def vertex_incident(layout: Layout, face: Face, w: Vertex) -> bool:
    """Is spine vertex ``w`` on the boundary of ``face``?

    A vertex belongs to the deepest face covering it: it must lie inside
    the face's span (endpoints of the bounding edge included) and no edge
    nested in the face may strictly cover it.
    """
    rw = layout.rank_of(w)
    if not face.is_outer:
        if not (face.gap_lo - 1 <= rw <= face.gap_hi):
            return False
    return not any(ru < rw < rv for ru, rv in _nested_pairs(layout, face))


def gap_incident(layout: Layout, face: Face, g: GapIndex) -> bool:
    """Is gap ``g`` open into ``face``?

    True exactly when the face spans the gap and no edge nested in the
    face spans it too, i.e. when the face is the deepest one over ``g``.
    """
    if not face.spans(g):
        return False
    return not any(
        ru + 1 <= g <= rv for ru, rv in _nested_pairs(layout, face)
    )


# ---------------------------------------------------------------------------
# extension instances


@dataclass(frozen=True)
class Instance:
    """An extension instance: graph ``g``, subgraph ``h``, layout of ``h``.

    Construction validates the containment relations and that
    ``layout_h`` is a valid layout of ``h``; derived views (new vertices,
    new edges, affected old vertices) are precomputed in deterministic
    order.
    """

    ell: int
    g: Graph
    h: Graph
    layout_h: Layout

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise InputError(f"page count must be positive, got {self.ell}")
        if self.layout_h.ell != self.ell:
            raise InputError(
                f"layout has {self.layout_h.ell} pages, instance has {self.ell}"
            )
        if not self.h.vertex_set <= self.g.vertex_set:
            extra = sorted(self.h.vertex_set - self.g.vertex_set)
            raise InputError(f"subgraph vertices {extra} missing from the graph")
        if not self.h.edge_set <= self.g.edge_set:
            extra = sorted(self.h.edge_set - self.g.edge_set)
            raise InputError(f"subgraph edges {extra} missing from the graph")
        if set(self.layout_h.spine.order) != set(self.h.vertices):
            raise InputError("layout spine does not order the subgraph vertices")
        if set(self.layout_h.page_of) != self.h.edge_set:
            raise InputError("layout pages do not cover the subgraph edges")
        conflict = find_crossing(self.layout_h)
        if conflict is not None:
            e1, e2, p = conflict
            raise InputError(f"given layout is invalid: {e1} crosses {e2} on page {p}")

        new_vs = tuple(v for v in self.g.vertices if v not in self.h.vertex_set)
        new_es = tuple(sorted(self.g.edge_set - self.h.edge_set))
        old = self.h.vertex_set
        new_old = tuple(e for e in new_es if e[0] in old and e[1] in old)
        inc = {w for e in new_es for w in e if w in old}
        object.__setattr__(self, "_new_vertices", new_vs)
        object.__setattr__(self, "_new_edges", new_es)
        object.__setattr__(self, "_new_old_edges", new_old)
        object.__setattr__(
            self,
            "_incident_old",
            tuple(sorted(inc, key=self.layout_h.rank_of)),
        )

    @property
    def new_vertices(self) -> tuple[Vertex, ...]:
        """Vertices of G missing from H, in G's vertex order."""
        return self._new_vertices  # type: ignore[attr-defined]

    @property
    def new_edges(self) -> tuple[Edge, ...]:
        """Edges of G missing from H, sorted."""
        return self._new_edges  # type: ignore[attr-defined]

    @property
    def new_old_edges(self) -> tuple[Edge, ...]:
        """New edges whose both endpoints already lie on the spine."""
        return self._new_old_edges  # type: ignore[attr-defined]

    @property
    def incident_old(self) -> tuple[Vertex, ...]:
        """Old vertices touched by a new edge, in spine order."""
        return self._incident_old  # type: ignore[attr-defined]

    @property
    def n_add(self) -> int:
        return len(self.new_vertices)

    @property
    def m_add(self) -> int:
        return len(self.new_edges)

    @property
    def kappa(self) -> int:
        return self.n_add + self.m_add

    @property
    def gap_count(self) -> int:
        return len(self.layout_h.spine) + 1

    def is_solution(self, layout: Layout) -> bool:
        return is_valid(self.g, layout) and extends(layout, self.layout_h)


def make_instance(
    ell: int,
    spine: Iterable[Vertex],
    h_edges: Iterable[tuple[Vertex, Vertex, int]],
    new_vertices: Iterable[Vertex] = (),
    new_edges: Iterable[tuple[Vertex, Vertex]] = (),
) -> Instance:
    """Assemble an :class:`Instance` from plain pieces."""
    spine = tuple(spine)
    h_edges = tuple(h_edges)
    new_vertices = tuple(new_vertices)
    new_edges = tuple(edge(u, v) for u, v in new_edges)
    h = Graph(spine, tuple(edge(u, v) for u, v, _ in h_edges))
    g = Graph(spine + new_vertices, tuple(sorted(set(h.edges) | set(new_edges))))
    if len(set(new_edges)) != len(new_edges):
        raise InputError("duplicate new edge")
    for e in new_edges:
        if e in h.edge_set:
            raise InputError(f"new edge {e!r} already present in the subgraph")
    layout = make_layout(spine, ell, h_edges)
    return Instance(ell, g, h, layout)


@dataclass(frozen=True)
class SuperInterval:
    """Maximal run of gaps delimited by consecutive affected old vertices.

    ``left``/``right`` are the delimiting vertices, ``None`` standing for
    the spine ends.  ``gap_lo .. gap_hi`` is the run of gaps, 1-based.
    """

    index: int
    left: Optional[Vertex]
    right: Optional[Vertex]
    gap_lo: GapIndex
    gap_hi: GapIndex

    def contains_gap(self, g: GapIndex) -> bool:
        return self.gap_lo <= g <= self.gap_hi


def super_intervals(inst: Instance) -> tuple[SuperInterval, ...]:
    """Partition of the gaps with boundaries at the affected old vertices.

    New vertices only ever need to be located up to the super interval
    containing them: moving a new vertex between gaps of the same super
    interval never changes which old edges its edges cross.  There are
    ``len(inst.incident_old) + 1`` super intervals, hence at most
    ``2 * m_add + 1``.
    """
    n = len(inst.layout_h.spine)
    marks = inst.incident_old
    out = []
    left: Optional[Vertex] = None
    lo = 1
    for i, w in enumerate(marks):
        r = inst.layout_h.rank_of(w)
        out.append(SuperInterval(i, left, w, lo, r))
        left, lo = w, r + 1
    out.append(SuperInterval(len(marks), left, None, lo, n + 1))
    return tuple(out)
