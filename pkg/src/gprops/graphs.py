"""Colored wheeled graphs with listings.

A graph is a connected, non-empty directed graph with half-edges: each vertex
carries an ordered list of colored input ports and output ports (the port
order *is* the vertex listing), and every port is the endpoint of exactly one
edge.  Edges are internal (out-port to in-port, loops allowed), input legs,
output legs, or one of the two vertex-free exceptional cells: the exceptional
edge (simultaneously a graph input and output) and the exceptional loop.
Graph-level listings order the input and output legs.

Two notions of isomorphism matter:

* weak - preserves structure and coloring but not listings.  A weak class is
  determined by the per-vertex colored port multisets together with the
  colored edge-count data, which is what :func:`canonical_key` serializes.
* strict - additionally preserves every listing.  Graphs are treated as
  strict-isomorphism-class representatives; equality of graphs in tests goes
  through :func:`iso` with ``mode="strict"`` rather than canonical strict
  forms.

Automorphism groups are materialized as explicit element lists at the flag
level (vertex bijection plus the induced edge bijection); an error is raised
above a configurable order cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .errors import AutomorphismLimitError, GraphInvariantError
from .profiles import Color, ProfilePair

INTERNAL = "internal"
IN_LEG = "in_leg"
OUT_LEG = "out_leg"
EXC_EDGE = "exc_edge"
EXC_LOOP = "exc_loop"

Port = tuple[int, int]


@dataclass(frozen=True)
class Vertex:
    ins: tuple[Color, ...]
    outs: tuple[Color, ...]

    def profile(self) -> ProfilePair:
        return ProfilePair(self.ins, self.outs)


@dataclass(frozen=True)
class Edge:
    kind: str
    color: Color
    src: Port | None = None  # (vertex, out-port index)
    tgt: Port | None = None  # (vertex, in-port index)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    in_listing: tuple[int, ...]
    out_listing: tuple[int, ...]

    def __post_init__(self):
        validate(self)

    def profile(self) -> ProfilePair:
        return graph_profile(self)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphInvariantError(msg)


def validate(g: Graph) -> None:
    """Reject any value violating a Graph invariant."""
    n = len(g.vertices)
    _check(n > 0 or len(g.edges) > 0, "graph must be non-empty")

    in_cover: dict[Port, int] = {}
    out_cover: dict[Port, int] = {}
    exceptional = 0
    for idx, e in enumerate(g.edges):
        if e.kind == INTERNAL:
            _check(e.src is not None and e.tgt is not None, "internal edge needs src and tgt")
            _check(e.src not in out_cover, f"out-port {e.src} used twice")
            _check(e.tgt not in in_cover, f"in-port {e.tgt} used twice")
            out_cover[e.src] = idx
            in_cover[e.tgt] = idx
            _check(_out_color(g, e.src) == e.color == _in_color(g, e.tgt),
                   f"edge {idx} color disagrees with its ports")
        elif e.kind == IN_LEG:
            _check(e.src is None and e.tgt is not None, "input leg has only a target")
            _check(e.tgt not in in_cover, f"in-port {e.tgt} used twice")
            in_cover[e.tgt] = idx
            _check(_in_color(g, e.tgt) == e.color, f"leg {idx} color disagrees with its port")
        elif e.kind == OUT_LEG:
            _check(e.src is not None and e.tgt is None, "output leg has only a source")
            _check(e.src not in out_cover, f"out-port {e.src} used twice")
            out_cover[e.src] = idx
            _check(_out_color(g, e.src) == e.color, f"leg {idx} color disagrees with its port")
        elif e.kind in (EXC_EDGE, EXC_LOOP):
            _check(e.src is None and e.tgt is None, "exceptional edges touch no vertex")
            exceptional += 1
        else:
            raise GraphInvariantError(f"unknown edge kind {e.kind!r}")

    if n == 0:
        _check(len(g.edges) == 1 and exceptional == 1,
               "a vertex-free graph is a single exceptional cell")
    else:
        _check(exceptional == 0, "exceptional edges occur only in vertex-free graphs")

    # every port covered exactly once
    for v, vert in enumerate(g.vertices):
        for i in range(len(vert.ins)):
            _check((v, i) in in_cover, f"in-port ({v},{i}) not on any edge")
        for i in range(len(vert.outs)):
            _check((v, i) in out_cover, f"out-port ({v},{i}) not on any edge")
    _check(len(in_cover) == sum(len(v.ins) for v in g.vertices), "stray in-port reference")
    _check(len(out_cover) == sum(len(v.outs) for v in g.vertices), "stray out-port reference")

    # connectivity of the vertex set through internal edges
    if n > 1:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in g.edges:
            if e.kind == INTERNAL:
                a, b = find(e.src[0]), find(e.tgt[0])
                if a != b:
                    parent[a] = b
        _check(len({find(v) for v in range(n)}) == 1, "graph is not connected")

    # listings enumerate exactly the graph inputs / outputs, each once
    ins = [i for i, e in enumerate(g.edges) if e.kind in (IN_LEG, EXC_EDGE)]
    outs = [i for i, e in enumerate(g.edges) if e.kind in (OUT_LEG, EXC_EDGE)]
    _check(sorted(g.in_listing) == sorted(ins), "input listing does not enumerate the input legs")
    _check(sorted(g.out_listing) == sorted(outs), "output listing does not enumerate the output legs")


def _in_color(g: Graph, port: Port) -> Color:
    v, i = port
    return g.vertices[v].ins[i]


def _out_color(g: Graph, port: Port) -> Color:
    v, i = port
    return g.vertices[v].outs[i]


def graph_profile(g: Graph) -> ProfilePair:
    """Colors of the input and output legs, in listing order."""
    return ProfilePair(
        tuple(g.edges[i].color for i in g.in_listing),
        tuple(g.edges[i].color for i in g.out_listing),
    )


def corolla(pp: ProfilePair) -> Graph:
    """One vertex whose every port is carried by a leg, listed in port order."""
    edges = [Edge(IN_LEG, c, tgt=(0, i)) for i, c in enumerate(pp.inputs)]
    edges += [Edge(OUT_LEG, c, src=(0, i)) for i, c in enumerate(pp.outputs)]
    m = len(pp.inputs)
    return Graph(
        vertices=(Vertex(pp.inputs, pp.outputs),),
        edges=tuple(edges),
        in_listing=tuple(range(m)),
        out_listing=tuple(range(m, m + len(pp.outputs))),
    )


def exceptional_edge(c: Color) -> Graph:
    return Graph((), (Edge(EXC_EDGE, c),), (0,), (0,))


def exceptional_loop(c: Color) -> Graph:
    return Graph((), (Edge(EXC_LOOP, c),), (), ())


def exceptional(kind: str, c: Color) -> Graph:
    if kind == "edge":
        return exceptional_edge(c)
    if kind == "loop":
        return exceptional_loop(c)
    raise GraphInvariantError(f"exceptional kind must be 'edge' or 'loop', got {kind!r}")


def internal_edges(g: Graph) -> list[int]:
    return [i for i, e in enumerate(g.edges) if e.kind == INTERNAL]


def is_loop(g: Graph, edge_idx: int) -> bool:
    e = g.edges[edge_idx]
    return e.kind == INTERNAL and e.src[0] == e.tgt[0]


# ---------------------------------------------------------------------------
# Weak invariants, refinement, canonical keys
# ---------------------------------------------------------------------------


def _vertex_invariant(g: Graph, v: int, marks: frozenset[int]) -> tuple:
    vert = g.vertices[v]
    in_leg = sorted(e.color for e in g.edges if e.kind == IN_LEG and e.tgt[0] == v)
    out_leg = sorted(e.color for e in g.edges if e.kind == OUT_LEG and e.src[0] == v)
    return (
        tuple(sorted(vert.ins)),
        tuple(sorted(vert.outs)),
        tuple(in_leg),
        tuple(out_leg),
        v in marks,
    )


def _edge_matrix(g: Graph) -> dict[tuple[Color, int, int], int]:
    mat: dict[tuple[Color, int, int], int] = {}
    for e in g.edges:
        if e.kind == INTERNAL:
            key = (e.color, e.src[0], e.tgt[0])
            mat[key] = mat.get(key, 0) + 1
    return mat


def _refine(g: Graph, colors: list) -> list:
    """WL-style refinement of vertex colors by colored in/out edge signatures."""
    mat = _edge_matrix(g)
    adj: dict[int, list] = {v: [] for v in range(len(g.vertices))}
    for (c, u, v), k in mat.items():
        adj[u].append(("o", c, v, k))
        adj[v].append(("i", c, u, k))
    while True:
        sigs = []
        for v in range(len(g.vertices)):
            nbr = sorted((d, c, colors[u], k) for (d, c, u, k) in adj[v])
            sigs.append((colors[v], tuple(nbr)))
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _initial_colors(g: Graph, marks: frozenset[int]) -> list:
    invs = [_vertex_invariant(g, v, marks) for v in range(len(g.vertices))]
    ranked = {s: i for i, s in enumerate(sorted(set(invs)))}
    return _refine(g, [ranked[s] for s in invs])


def _serialize_weak(g: Graph, order: list[int], marks: frozenset[int]) -> tuple:
    """Weak-class serialization under a vertex numbering (ports unordered)."""
    pos = {v: i for i, v in enumerate(order)}
    verts = tuple(_vertex_invariant(g, v, marks)[:2] + (v in marks,) for v in order)
    internal = sorted(
        (e.color, pos[e.src[0]], pos[e.tgt[0]]) for e in g.edges if e.kind == INTERNAL
    )
    in_legs = sorted((e.color, pos[e.tgt[0]]) for e in g.edges if e.kind == IN_LEG)
    out_legs = sorted((e.color, pos[e.src[0]]) for e in g.edges if e.kind == OUT_LEG)
    return (verts, tuple(internal), tuple(in_legs), tuple(out_legs))


def _orderings(g: Graph, colors: list):
    """Vertex orderings compatible with the refined partition (individualization)."""
    n = len(g.vertices)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    nontrivial = [vs for _, vs in sorted(cells.items()) if len(vs) > 1]
    if not nontrivial:
        yield [v for _, v in sorted(zip(colors, range(n)))]
        return
    target = nontrivial[0]
    for v in target:
        branched = list(colors)
        branched[v] = -1  # individualize in front of its cell
        yield from _orderings(g, _refine(g, _normalize_colors(branched)))


def _normalize_colors(colors: list) -> list:
    ranked = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [ranked[c] for c in colors]


@lru_cache(maxsize=65536)
def _canonical_key_cached(g: Graph, marks: frozenset[int]) -> bytes:
    if not g.vertices:
        e = g.edges[0]
        return repr(("exceptional", e.kind, e.color)).encode()
    best = None
    for order in _orderings(g, _initial_colors(g, marks)):
        ser = _serialize_weak(g, order, marks)
        if best is None or ser < best:
            best = ser
    return repr(best).encode()


def canonical_key(g: Graph, marks=None) -> bytes:
    """Deterministic key; equal keys iff weakly isomorphic (marks preserved)."""
    mk = frozenset(marks) if marks else frozenset()
    if not mk <= set(range(len(g.vertices))):
        raise GraphInvariantError("marks must be a subset of the vertex set")
    return _canonical_key_cached(g, mk)


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    """A weak (or strict) isomorphism: vertex and edge bijections."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def _vertex_bijections(g: Graph, h: Graph, g_marks: frozenset[int], h_marks: frozenset[int]):
    """All vertex bijections respecting colored edge counts, legs and marks."""
    n = len(g.vertices)
    if n != len(h.vertices):
        return
    if n == 0:
        yield ()
        return
    gi = [_vertex_invariant(g, v, g_marks) for v in range(n)]
    hi = [_vertex_invariant(h, v, h_marks) for v in range(n)]
    if sorted(gi) != sorted(hi):
        return
    gmat, hmat = _edge_matrix(g), _edge_matrix(h)

    def extend(mapping: dict[int, int], used: set[int]):
        if len(mapping) == n:
            yield tuple(mapping[v] for v in range(n))
            return
        v = len(mapping)
        for w in range(n):
            if w in used or gi[v] != hi[w]:
                continue
            ok = True
            for u, x in mapping.items():
                for c in {e.color for e in g.edges}:
                    if gmat.get((c, u, v), 0) != hmat.get((c, x, w), 0) or \
                       gmat.get((c, v, u), 0) != hmat.get((c, w, x), 0):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for c in {e.color for e in g.edges}:
                    if gmat.get((c, v, v), 0) != hmat.get((c, w, w), 0):
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used.add(w)
                yield from extend(mapping, used)
                del mapping[v]
                used.discard(w)

    yield from extend({}, set())


def _edge_bijection(g: Graph, h: Graph, vmap: tuple[int, ...]):
    """Deterministic edge bijection compatible with a weak vertex bijection."""
    emap = [-1] * len(g.edges)
    used: dict[tuple, list[int]] = {}
    for j, e in enumerate(h.edges):
        if e.kind == INTERNAL:
            key = (INTERNAL, e.color, e.src[0], e.tgt[0])
        elif e.kind == IN_LEG:
            key = (IN_LEG, e.color, e.tgt[0])
        elif e.kind == OUT_LEG:
            key = (OUT_LEG, e.color, e.src[0])
        else:
            key = (e.kind, e.color)
        used.setdefault(key, []).append(j)
    for i, e in enumerate(g.edges):
        if e.kind == INTERNAL:
            key = (INTERNAL, e.color, vmap[e.src[0]], vmap[e.tgt[0]])
        elif e.kind == IN_LEG:
            key = (IN_LEG, e.color, vmap[e.tgt[0]])
        elif e.kind == OUT_LEG:
            key = (OUT_LEG, e.color, vmap[e.src[0]])
        else:
            key = (e.kind, e.color)
        pool = used.get(key)
        if not pool:
            return None
        emap[i] = pool.pop()
    return tuple(emap)


def _strict_iso(g: Graph, h: Graph) -> Isomorphism | None:
    """Isomorphism preserving all listings (vertex port orders and graph listings)."""
    n = len(g.vertices)
    if n != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if len(g.in_listing) != len(h.in_listing) or len(g.out_listing) != len(h.out_listing):
        return None
    if n == 0:
        return Isomorphism((), (0,)) if g.edges[0] == h.edges[0] else None

    # legs pin their vertices through the graph listings
    forced: dict[int, int] = {}
    for ge_idx, he_idx in list(zip(g.in_listing, h.in_listing)) + list(
        zip(g.out_listing, h.out_listing)
    ):
        ge, he = g.edges[ge_idx], h.edges[he_idx]
        if ge.kind != he.kind or ge.color != he.color:
            return None
        gport = ge.tgt if ge.kind == IN_LEG else ge.src
        hport = he.tgt if he.kind == IN_LEG else he.src
        if gport[1] != hport[1]:
            return None
        if forced.setdefault(gport[0], hport[0]) != hport[0]:
            return None

    g_adj = {(e.src, e.tgt): e for e in g.edges if e.kind == INTERNAL}

    def compatible(v: int, w: int) -> bool:
        return g.vertices[v] == h.vertices[w]

    h_internal = {(e.src, e.tgt) for e in h.edges if e.kind == INTERNAL}
    h_inleg_ports = {e.tgt for e in h.edges if e.kind == IN_LEG}
    h_outleg_ports = {e.src for e in h.edges if e.kind == OUT_LEG}

    def consistent(mapping: dict[int, int]) -> bool:
        for (src, tgt) in g_adj:
            su, sp = src
            tv, tq = tgt
            if su in mapping and tv in mapping:
                if ((mapping[su], sp), (mapping[tv], tq)) not in h_internal:
                    return False
        for e in g.edges:
            if e.kind == IN_LEG and e.tgt[0] in mapping:
                if (mapping[e.tgt[0]], e.tgt[1]) not in h_inleg_ports:
                    return False
            if e.kind == OUT_LEG and e.src[0] in mapping:
                if (mapping[e.src[0]], e.src[1]) not in h_outleg_ports:
                    return False
        return True

    def extend(mapping: dict[int, int], used: set[int]):
        if len(mapping) == n:
            yield dict(mapping)
            return
        v = min(set(range(n)) - set(mapping))
        candidates = [forced[v]] if v in forced else [w for w in range(n) if w not in used]
        for w in candidates:
            if w in used or not compatible(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if consistent(mapping):
                yield from extend(mapping, used)
            del mapping[v]
            used.discard(w)

    for v, w in forced.items():
        if not compatible(v, w):
            return None
    seed = dict(forced)
    for mapping in extend(seed, set(seed.values())):
        vmap = tuple(mapping[v] for v in range(n))
        # ports are preserved index-wise, so edges map by their endpoints
        h_lookup: dict[tuple, int] = {}
        for j, e in enumerate(h.edges):
            if e.kind == INTERNAL:
                h_lookup[(INTERNAL, e.src, e.tgt)] = j
            elif e.kind == IN_LEG:
                h_lookup[(IN_LEG, e.tgt)] = j
            else:
                h_lookup[(OUT_LEG, e.src)] = j
        emap = []
        ok = True
        for e in g.edges:
            if e.kind == INTERNAL:
                key = (INTERNAL, (vmap[e.src[0]], e.src[1]), (vmap[e.tgt[0]], e.tgt[1]))
            elif e.kind == IN_LEG:
                key = (IN_LEG, (vmap[e.tgt[0]], e.tgt[1]))
            else:
                key = (OUT_LEG, (vmap[e.src[0]], e.src[1]))
            j = h_lookup.get(key)
            if j is None:
                ok = False
                break
            emap.append(j)
        if not ok:
            continue
        emap_t = tuple(emap)
        if tuple(emap_t[i] for i in g.in_listing) != h.in_listing:
            continue
        if tuple(emap_t[i] for i in g.out_listing) != h.out_listing:
            continue
        return Isomorphism(vmap, emap_t)
    return None


def iso(g: Graph, h: Graph, mode: str = "weak", marks=None) -> Isomorphism | None:
    """Find an isomorphism g -> h, or None.

    mode="weak" ignores listings; mode="strict" preserves them all.  When
    ``marks`` (a pair of vertex subsets) is given, distinguished vertices must
    map onto distinguished vertices.
    """
    g_marks = frozenset(marks[0]) if marks else frozenset()
    h_marks = frozenset(marks[1]) if marks else frozenset()
    if mode == "strict":
        found = _strict_iso(g, h)
        if found is None:
            return None
        if {found.vertex_map[v] for v in g_marks} != h_marks:
            return None
        return found
    if mode != "weak":
        raise GraphInvariantError(f"mode must be 'weak' or 'strict', got {mode!r}")
    if len(g.vertices) == 0 and len(h.vertices) == 0:
        return Isomorphism((), (0,)) if g.edges[0] == h.edges[0] else None
    for vmap in _vertex_bijections(g, h, g_marks, h_marks):
        if {vmap[v] for v in g_marks} != h_marks:
            continue
        emap = _edge_bijection(g, h, vmap)
        if emap is not None:
            return Isomorphism(vmap, emap)
    return None


# ---------------------------------------------------------------------------
# Automorphisms (flag level)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """Weak automorphism at the flag level.

    ``vertex_map[v]`` is the image vertex; ``edge_map[i]`` the image edge.
    Port bijections are induced: the port carrying edge ``i`` maps to the
    corresponding port of edge ``edge_map[i]``.
    """

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        return Automorphism(
            tuple(self.vertex_map[v] for v in other.vertex_map),
            tuple(self.edge_map[e] for e in other.edge_map),
        )

    def inverse(self) -> "Automorphism":
        vinv = [0] * len(self.vertex_map)
        for i, j in enumerate(self.vertex_map):
            vinv[j] = i
        einv = [0] * len(self.edge_map)
        for i, j in enumerate(self.edge_map):
            einv[j] = i
        return Automorphism(tuple(vinv), tuple(einv))


def identity_automorphism(g: Graph) -> Automorphism:
    return Automorphism(tuple(range(len(g.vertices))), tuple(range(len(g.edges))))


def automorphism_port_maps(g: Graph, a: Automorphism):
    """Per-vertex port bijections induced by an automorphism.

    Returns (in_maps, out_maps): in_maps[v][i] is the in-port index of
    vertex_map[v] that the in-port (v, i) maps to.
    """
    in_maps = [[-1] * len(v.ins) for v in g.vertices]
    out_maps = [[-1] * len(v.outs) for v in g.vertices]
    for i, e in enumerate(g.edges):
        img = g.edges[a.edge_map[i]]
        if e.kind == INTERNAL:
            out_maps[e.src[0]][e.src[1]] = img.src[1]
            in_maps[e.tgt[0]][e.tgt[1]] = img.tgt[1]
        elif e.kind == IN_LEG:
            in_maps[e.tgt[0]][e.tgt[1]] = img.tgt[1]
        elif e.kind == OUT_LEG:
            out_maps[e.src[0]][e.src[1]] = img.src[1]
    return ([tuple(m) for m in in_maps], [tuple(m) for m in out_maps])


def leg_permutations(g: Graph, a: Automorphism):
    """Positions the listed legs move to: (pi_in, pi_out) with pi[i] = new position."""
    in_pos = {e: i for i, e in enumerate(g.in_listing)}
    out_pos = {e: i for i, e in enumerate(g.out_listing)}
    pi_in = tuple(in_pos[a.edge_map[e]] for e in g.in_listing)
    pi_out = tuple(out_pos[a.edge_map[e]] for e in g.out_listing)
    return pi_in, pi_out


def automorphisms(g: Graph, marks=None, order_cap: int = 10_000) -> list[Automorphism]:
    """The full group of weak automorphisms fixing ``marks`` setwise.

    Elements are explicit; the group is closed under composition and inverse.
    Raises AutomorphismLimitError when the order would exceed ``order_cap``.
    """
    mk = frozenset(marks) if marks else frozenset()
    if not mk <= set(range(len(g.vertices))):
        raise GraphInvariantError("marks must be a subset of the vertex set")
    if not g.vertices:
        return [identity_automorphism(g)]

    # group edges into interchangeability classes per vertex bijection
    internal_cls: dict[tuple, list[int]] = {}
    inleg_cls: dict[tuple, list[int]] = {}
    outleg_cls: dict[tuple, list[int]] = {}
    for i, e in enumerate(g.edges):
        if e.kind == INTERNAL:
            internal_cls.setdefault((e.color, e.src[0], e.tgt[0]), []).append(i)
        elif e.kind == IN_LEG:
            inleg_cls.setdefault((e.color, e.tgt[0]), []).append(i)
        elif e.kind == OUT_LEG:
            outleg_cls.setdefault((e.color, e.src[0]), []).append(i)

    autos: list[Automorphism] = []
    for vmap in _vertex_bijections(g, g, mk, mk):
        if {vmap[v] for v in mk} != mk:
            continue
        # class-wise bijections; counts already match by construction
        groups = []
        feasible = True
        for cls, table in ((internal_cls, 2), (inleg_cls, 1), (outleg_cls, 1)):
            for key, src_edges in sorted(cls.items()):
                if table == 2:
                    c, u, v = key
                    tgt_edges = cls.get((c, vmap[u], vmap[v]))
                else:
                    c, v = key
                    tgt_edges = cls.get((c, vmap[v]))
                if tgt_edges is None or len(tgt_edges) != len(src_edges):
                    feasible = False
                    break
                groups.append((src_edges, tgt_edges))
            if not feasible:
                break
        if not feasible:
            continue
        count = 1
        for src_edges, _ in groups:
            count *= factorial(len(src_edges))
        if len(autos) + count > order_cap:
            raise AutomorphismLimitError(
                f"automorphism group exceeds order cap {order_cap}")
        for choice in product(*[permutations(t) for _, t in groups]):
            emap = [-1] * len(g.edges)
            for (src_edges, _), perm_tgt in zip(groups, choice):
                for i, j in zip(src_edges, perm_tgt):
                    emap[i] = j
            autos.append(Automorphism(vmap, tuple(emap)))
    return autos


# ---------------------------------------------------------------------------
# Relabeling helpers (produce weakly isomorphic variants)
# ---------------------------------------------------------------------------


def reindex(g: Graph, vperm: tuple[int, ...], eperm: tuple[int, ...]) -> Graph:
    """Renumber vertices and edges: vertex v becomes vperm[v], edge i becomes eperm[i]."""

    def mv(port):
        return None if port is None else (vperm[port[0]], port[1])

    new_vertices = [None] * len(g.vertices)
    for v, vert in enumerate(g.vertices):
        new_vertices[vperm[v]] = vert
    new_edges = [None] * len(g.edges)
    for i, e in enumerate(g.edges):
        new_edges[eperm[i]] = Edge(e.kind, e.color, mv(e.src), mv(e.tgt))
    return Graph(
        tuple(new_vertices),
        tuple(new_edges),
        tuple(eperm[i] for i in g.in_listing),
        tuple(eperm[i] for i in g.out_listing),
    )


def relist_vertex(g: Graph, v: int, sigma: tuple[int, ...], tau: tuple[int, ...]) -> Graph:
    """Permute the port order of vertex v: new in-port i is old in-port sigma[i],
    new out-port j is old out-port tau^{-1}[j] (the (sigma, tau) right action)."""
    vert = g.vertices[v]
    new_ins = tuple(vert.ins[sigma[i]] for i in range(len(vert.ins)))
    tau_inv = [0] * len(tau)
    for i, j in enumerate(tau):
        tau_inv[j] = i
    new_outs = tuple(vert.outs[tau_inv[j]] for j in range(len(vert.outs)))
    sigma_inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        sigma_inv[j] = i

    def move(port, is_in):
        if port is None or port[0] != v:
            return port
        if is_in:
            return (v, sigma_inv[port[1]])
        return (v, tau[port[1]])

    new_vertices = list(g.vertices)
    new_vertices[v] = Vertex(new_ins, new_outs)
    new_edges = tuple(
        Edge(e.kind, e.color, move(e.src, False), move(e.tgt, True)) for e in g.edges
    )
    return Graph(tuple(new_vertices), new_edges, g.in_listing, g.out_listing)


def relabel_listings(g: Graph, sigma: tuple[int, ...], tau: tuple[int, ...]) -> Graph:
    """Right action of (sigma, tau) on the graph listings: profile (c.sigma ; tau.d)."""
    tau_inv = [0] * len(tau)
    for i, j in enumerate(tau):
        tau_inv[j] = i
    return Graph(
        g.vertices,
        g.edges,
        tuple(g.in_listing[sigma[i]] for i in range(len(g.in_listing))),
        tuple(g.out_listing[tau_inv[j]] for j in range(len(g.out_listing))),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json(g: Graph) -> dict:
    """Bit-exact JSON graph format.

    Exceptional edges carry their color index (they touch no port, so the
    color is not otherwise recoverable); legs derive theirs from the port.
    """
    colors = sorted({e.color for e in g.edges} | {c for v in g.vertices for c in v.ins + v.outs})
    cidx = {c: i for i, c in enumerate(colors)}
    vertices = [
        {"in": [cidx[c] for c in v.ins], "out": [cidx[c] for c in v.outs]} for v in g.vertices
    ]
    edges = []
    for e in g.edges:
        if e.kind == INTERNAL:
            edges.append({"color": cidx[e.color], "kind": "internal",
                          "src": list(e.src), "tgt": list(e.tgt)})
        elif e.kind == IN_LEG:
            edges.append({"kind": "in_leg", "tgt": list(e.tgt)})
        elif e.kind == OUT_LEG:
            edges.append({"kind": "out_leg", "src": list(e.src)})
        else:
            edges.append({"kind": e.kind, "color": cidx[e.color]})
    return {
        "colors": colors,
        "vertices": vertices,
        "edges": edges,
        "in_listing": list(g.in_listing),
        "out_listing": list(g.out_listing),
    }


def from_json(data: dict) -> Graph:
    colors = data["colors"]
    vertices = tuple(
        Vertex(tuple(colors[i] for i in v["in"]), tuple(colors[i] for i in v["out"]))
        for v in data["vertices"]
    )
    edges = []
    for e in data["edges"]:
        kind = e["kind"]
        if kind == "internal":
            src, tgt = tuple(e["src"]), tuple(e["tgt"])
            edges.append(Edge(INTERNAL, colors[e["color"]], src, tgt))
        elif kind == "in_leg":
            tgt = tuple(e["tgt"])
            edges.append(Edge(IN_LEG, vertices[tgt[0]].ins[tgt[1]], tgt=tgt))
        elif kind == "out_leg":
            src = tuple(e["src"])
            edges.append(Edge(OUT_LEG, vertices[src[0]].outs[src[1]], src=src))
        elif kind in (EXC_EDGE, EXC_LOOP):
            edges.append(Edge(kind, colors[e["color"]]))
        else:
            raise GraphInvariantError(f"unknown edge kind {kind!r} in JSON")
    return Graph(vertices, tuple(edges),
                 tuple(data["in_listing"]), tuple(data["out_listing"]))


def to_dot(g: Graph) -> str:
    """DOT rendering for inspection; not a stable format."""
    lines = ["digraph G {", "  rankdir=BT;"]
    for v in range(len(g.vertices)):
        lines.append(f'  v{v} [shape=circle,label="v{v}"];')
    for i, e in enumerate(g.edges):
        if e.kind == INTERNAL:
            lines.append(f'  v{e.src[0]} -> v{e.tgt[0]} [label="{e.color}"];')
        elif e.kind == IN_LEG:
            lines.append(f'  in{i} [shape=point]; in{i} -> v{e.tgt[0]} [label="{e.color}"];')
        elif e.kind == OUT_LEG:
            lines.append(f'  out{i} [shape=point]; v{e.src[0]} -> out{i} [label="{e.color}"];')
        elif e.kind == EXC_EDGE:
            lines.append(f'  a [shape=point]; b [shape=point]; a -> b [label="{e.color}"];')
        else:
            lines.append(f'  l [shape=point]; l -> l [label="{e.color}"];')
    lines.append("}")
    return "\n".join(lines)
