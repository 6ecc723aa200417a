"""The embedded tree pair: a colored tree with a marked subtree.

Vertices are identified by their path from the base vertex (a tuple of
child indices), so identity is stable under lazy regeneration and
ancestor computations are cheap.  Distances are carried internally in
half-edge units: every edge has length 1/2, black (hyperspecial)
vertices sit at even depth, white (special) vertices at odd depth, and
black-to-black distances are integers.

Branching rules, with q the residue cardinality:
  * black vertex of the big tree: q^3 + 1 white neighbors,
  * white vertex: q + 1 black neighbors,
  * black vertex of the subtree: exactly q + 1 of its white neighbors
    lie in the subtree,
  * white vertex of the subtree: all q + 1 black neighbors lie in it.

Generation mutates an internal memo and is meant to be driven by one
task at a time; the derived vertex data (colors, flags, distances) is a
pure function of ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import RadiusExceeded

PathId = tuple[int, ...]


@dataclass(frozen=True)
class Vertex:
    id: PathId
    in_w: bool

    @property
    def depth(self) -> int:
        """Half-edge units from the base."""
        return len(self.id)

    @property
    def color(self) -> str:
        return "black" if self.depth % 2 == 0 else "white"

    @property
    def is_black(self) -> bool:
        return self.depth % 2 == 0

    def label(self) -> str:
        return ".".join(map(str, self.id)) if self.id else "base"


@dataclass(frozen=True)
class Invariant:
    """Orbit invariant of a hyperspecial pair: both entries in black units."""

    a: int
    b: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


class TreePair:
    """Lazily generated big tree with marked subtree, out to a radius.

    radius is in integer (black-to-black) units; vertices exist out to
    depth 2 * radius half-edges.
    """

    def __init__(self, q: int, radius: int):
        if radius < 1:
            raise ValueError("radius must be >= 1")
        self.q = q
        self.radius = radius
        self.max_depth = 2 * radius
        self._children: dict[PathId, list[PathId]] = {}
        self._vertices: dict[PathId, Vertex] = {(): Vertex((), True)}

    # -- structure rules ---------------------------------------------------

    def _child_count(self, vid: PathId) -> int:
        depth = len(vid)
        if depth % 2 == 0:  # black
            return self.q**3 + 1 if depth == 0 else self.q**3
        return self.q  # white: q children (+1 parent neighbor)

    def _child_in_w(self, parent: Vertex, index: int) -> bool:
        if not parent.in_w:
            return False
        depth = parent.depth
        if depth % 2 == 0:  # black
            limit = self.q + 1 if depth == 0 else self.q
            return index < limit
        return True  # white in the subtree: every black neighbor is in it

    def vertex(self, vid: PathId) -> Vertex:
        v = self._vertices.get(vid)
        if v is None:
            if len(vid) > self.max_depth:
                raise RadiusExceeded(f"depth {len(vid)} beyond radius {self.radius}")
            parent = self.vertex(vid[:-1])
            idx = vid[-1]
            if idx >= self._child_count(vid[:-1]):
                raise ValueError(f"child index {idx} out of range at {parent.label()}")
            v = Vertex(vid, self._child_in_w(parent, idx))
            self._vertices[vid] = v
        return v

    def children(self, v: Vertex) -> list[Vertex]:
        if v.depth + 1 > self.max_depth:
            raise RadiusExceeded(f"children at depth {v.depth + 1} beyond radius {self.radius}")
        ids = self._children.get(v.id)
        if ids is None:
            ids = [v.id + (i,) for i in range(self._child_count(v.id))]
            self._children[v.id] = ids
        return [self.vertex(i) for i in ids]

    def parent(self, v: Vertex) -> Vertex | None:
        return self.vertex(v.id[:-1]) if v.id else None

    def neighbors(self, v: Vertex, in_w_only: bool = False) -> list[Vertex]:
        out = []
        p = self.parent(v)
        if p is not None:
            out.append(p)
        out.extend(self.children(v))
        if in_w_only:
            out = [u for u in out if u.in_w]
        return out

    def generated_vertices(self) -> list[Vertex]:
        return list(self._vertices.values())

    # -- metric -------------------------------------------------------------

    @staticmethod
    def dist_half(u: Vertex, v: Vertex) -> int:
        a, b = u.id, v.id
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return (len(a) - k) + (len(b) - k)

    def dist(self, u: Vertex, v: Vertex):
        """Distance in integer units (exact half-integers allowed)."""
        h = self.dist_half(u, v)
        return h // 2 if h % 2 == 0 else h / 2

    def project_to_w(self, x: Vertex) -> Vertex:
        """Nearest subtree vertex: the deepest marked ancestor of x.

        The marked set is a connected subtree through the base, so the
        ancestor chain of x crosses into it exactly once and the gate is
        the closest marked vertex.  For black x the gate is black.
        """
        vid = x.id
        while True:
            v = self.vertex(vid)
            if v.in_w:
                return v
            vid = vid[:-1]

    def invariant(self, x_v: Vertex, x_w: Vertex) -> Invariant:
        if not x_v.is_black or not x_w.is_black:
            raise ValueError("invariants are defined for black vertices")
        if not x_w.in_w:
            raise ValueError("the second vertex must lie in the subtree")
        gate = self.project_to_w(x_v)
        a2 = self.dist_half(x_v, gate)
        b2 = self.dist_half(gate, x_w)
        assert a2 % 2 == 0 and b2 % 2 == 0
        return Invariant(a2 // 2, b2 // 2)

    # -- configurations -------------------------------------------------------

    def make_configuration(self, a: int, b: int) -> tuple[Vertex, Vertex]:
        """One representative pair with invariant (a, b).

        x_w walks b black-steps into the subtree; x_v walks a black-steps
        out of it, the first white step taken outside the subtree.
        """
        if a < 0 or b < 0:
            raise ValueError("invariants must be nonnegative")
        if a + b + 1 > self.radius:
            raise RadiusExceeded(f"configuration ({a}, {b}) needs radius {a + b + 1}")
        wid: PathId = ()
        for _ in range(b):
            wid = wid + (0, 0)  # marked white child, then its marked black child
        x_w = self.vertex(wid)
        assert x_w.in_w
        if a == 0:
            x_v = self.vertex(())
        else:
            vid: PathId = (self.q + 1, 0)  # first unmarked white child of the base
            for _ in range(a - 1):
                vid = vid + (0, 0)
            x_v = self.vertex(vid)
            assert not x_v.in_w
        return x_v, x_w

    # -- spheres ---------------------------------------------------------------

    def sphere(self, x: Vertex, r, in_w_only: bool = False) -> list[Vertex]:
        """All vertices at distance exactly r (integer or half-integer)."""
        h = int(round(2 * r))
        if h < 0 or abs(2 * r - h) > 1e-9:
            raise ValueError("radius must be a nonnegative half-integer")
        if x.depth + h > self.max_depth:
            raise RadiusExceeded(f"sphere of radius {r} at depth {x.depth} exceeds the tree radius")
        if h == 0:
            return [x]
        frontier = [(x, None)]
        for _ in range(h):
            nxt = []
            for v, prev in frontier:
                for u in self.neighbors(v, in_w_only=in_w_only):
                    if prev is None or u.id != prev.id:
                        nxt.append((u, v))
            frontier = nxt
        return [v for v, _ in frontier]

    def ball_count(self) -> int:
        return len(self._vertices)


class Apartment:
    """A bi-infinite geodesic through the base, realized out to a radius.

    Positions are half-edge units: position 0 is the base, positive
    positions run along ray_plus.  ray_plus / ray_minus give the first
    child index at each step (black steps use index pairs implicitly:
    rays are lists of child indices, one per half-step).
    """

    def __init__(self, tree: TreePair, plus_steps: list[int], minus_steps: list[int]):
        if plus_steps[0] == minus_steps[0]:
            raise ValueError("the two rays must leave the base through different children")
        self.tree = tree
        self.by_pos: dict[int, PathId] = {0: ()}
        vid: PathId = ()
        for k, idx in enumerate(plus_steps, start=1):
            vid = vid + (idx,)
            self.by_pos[k] = vid
        vid = ()
        for k, idx in enumerate(minus_steps, start=1):
            vid = vid + (idx,)
            self.by_pos[-k] = vid
        self.positions = {v: k for k, v in self.by_pos.items()}
        self.extent_plus = len(plus_steps)
        self.extent_minus = len(minus_steps)

    def vertex_at(self, pos: int) -> Vertex:
        vid = self.by_pos.get(pos)
        if vid is None:
            raise RadiusExceeded(f"apartment not realized at position {pos}")
        return self.tree.vertex(vid)

    def contains(self, v: Vertex) -> bool:
        return v.id in self.positions

    def position_of(self, v: Vertex) -> int:
        return self.positions[v.id]

    def confluence(self, x: Vertex) -> Vertex:
        """Deepest apartment vertex on the ancestor chain of x.

        Both rays descend from the base, so the apartment meets the
        ancestor chain, and the deepest such vertex is where the
        geodesic from x to either end joins the apartment.
        """
        vid = x.id
        while vid not in self.positions:
            vid = vid[:-1]
        return self.tree.vertex(vid)

    def retract(self, x: Vertex, end: int = +1) -> Vertex:
        """Fold x onto the apartment away from the chosen end.

        end = +1 retracts from the +infinity end: the image sits at
        position pos(confluence) - dist(x, confluence).
        """
        if end not in (+1, -1):
            raise ValueError("end must be +1 or -1")
        m = self.confluence(x)
        d = self.tree.dist_half(x, m)
        pos = self.positions[m.id] - end * d
        return self.vertex_at(pos)


def standard_apartment(tree: TreePair, in_w: bool = True) -> Apartment:
    """Apartment through the base; both rays inside the subtree by default."""
    n = tree.max_depth
    plus = [0 if i % 2 == 0 else 0 for i in range(n)]
    minus = [1 if i == 0 else 0 for i in range(n)]
    apt = Apartment(tree, plus, minus)
    if in_w:
        for pos, vid in apt.by_pos.items():
            assert tree.vertex(vid).in_w, f"apartment leaves the subtree at {pos}"
    return apt


def special_apartment(tree: TreePair) -> Apartment:
    """Apartment meeting the subtree in exactly the negative half-line."""
    n = tree.max_depth
    plus = [tree.q + 1 if i == 0 else 0 for i in range(n)]  # leaves the subtree at once
    minus = [0] * n
    return Apartment(tree, plus, minus)


def retraction_tally(tree: TreePair, r: int, in_w: bool = False, apartment: Apartment | None = None) -> dict[int, int]:
    """Multiplicities of the retraction image of the radius-r sphere.

    Returns {integer apartment position m: count of sphere vertices
    retracting to position m}, retraction taken from the +infinity end.
    Enumerates the sphere explicitly; see satake.walk_tally for the
    closed-form companion.
    """
    apt = apartment or standard_apartment(tree, in_w=in_w)
    base = tree.vertex(())
    out: dict[int, int] = {}
    for v in tree.sphere(base, r, in_w_only=in_w):
        img = apt.retract(v, end=+1)
        pos = apt.position_of(img)
        assert pos % 2 == 0
        out[pos // 2] = out.get(pos // 2, 0) + 1
    return out
