"""Unpunctured marked surfaces, ideal triangulations and their matrices.

Orientation conventions (fixed once, everything else is derived from them):

* A triangle is stored as a cyclic triple of directed sides; consecutive
  sides chain head-to-tail.  For stored-consecutive edges (alpha then beta)
  the exchange matrix gets epsilon[alpha][beta] += +1.  On the triangle with
  cyclic order (1, 2, 3) this yields Z_1 Z_2 = q^(-1) Z_2 Z_1 in the
  square-root torus.
* The corner of a triangle between consecutive sides s_i -> s_{i+1} sits at
  the marked point head(s_i); in the linear order of edge ends around that
  point, the end of s_i immediately precedes the end of s_{i+1}.
* The compatibility matrix counts ordered end pairs at shared marked points:
  pi[alpha][beta] += +1 when alpha's end comes later than beta's end in the
  corner order, -1 when earlier.  On the triangle this gives Pi = -epsilon.
* Boundary edges are traversed by their unique triangle in the direction
  m_plus -> m_minus, so the terminal point of a boundary interval is the
  head of its triangle side.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class FlipNotAllowed(ValueError):
    """Raised when flipping an edge would create a degenerate triangle."""


Side = tuple[str, int]  # (edge id, +1/-1)
End = tuple[str, int]  # (edge id, 0 = tail / 1 = head)


@dataclass(frozen=True)
class MarkedSurface:
    """Compact oriented surface, marked points on the boundary only."""

    genus: int
    boundary: tuple[int, ...]  # special-point count per boundary component

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if not self.boundary:
            raise ValueError("need at least one boundary component (unpunctured scope)")
        if any(c < 1 for c in self.boundary):
            raise ValueError("(S1): every boundary component needs a marked point")
        if -2 * self.euler_char + self.num_special < 1:
            raise ValueError("(S2): -2*chi + |M| must be positive")

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    @property
    def num_special(self) -> int:
        return sum(self.boundary)

    @property
    def num_edges(self) -> int:
        return -3 * self.euler_char + 2 * self.num_special

    @property
    def num_interior_edges(self) -> int:
        return -3 * self.euler_char + self.num_special

    @property
    def num_triangles(self) -> int:
        return -2 * self.euler_char + self.num_special

    @staticmethod
    def disk(n: int) -> "MarkedSurface":
        if n < 3:
            raise ValueError("marked disks need at least 3 special points")
        return MarkedSurface(0, (n,))

    @staticmethod
    def annulus_11() -> "MarkedSurface":
        return MarkedSurface(0, (1, 1))

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": list(self.boundary)}

    @staticmethod
    def from_json(data: dict) -> "MarkedSurface":
        return MarkedSurface(data["genus"], tuple(data["boundary"]))


def _head_end(side: Side) -> End:
    return (side[0], 1 if side[1] > 0 else 0)


def _tail_end(side: Side) -> End:
    return (side[0], 0 if side[1] > 0 else 1)


class IdealTriangulation:
    """Combinatorial ideal triangulation without self-folded triangles."""

    def __init__(
        self,
        surface: MarkedSurface,
        edges: Mapping[str, str],
        triangles: Sequence[Sequence[Side]],
        fresh_counter: int = 0,
    ):
        self.surface = surface
        self.edge_kind = dict(edges)
        self.triangles: list[tuple[Side, Side, Side]] = [
            tuple((str(e), int(d)) for e, d in tri) for tri in triangles
        ]
        self._fresh_counter = fresh_counter
        self._validate_incidence()
        self._build_vertices()
        self._build_corner_table()
        self._validate_counts()

    # -- construction helpers ------------------------------------------------

    @property
    def edge_order(self) -> tuple[str, ...]:
        return tuple(sorted(self.edge_kind))

    @property
    def boundary_edges(self) -> list[str]:
        return [e for e in self.edge_order if self.edge_kind[e] == "boundary"]

    @property
    def interior_edges(self) -> list[str]:
        return [e for e in self.edge_order if self.edge_kind[e] == "interior"]

    def _validate_incidence(self) -> None:
        seen: dict[str, list[int]] = {}
        for tri in self.triangles:
            if len(tri) != 3 or len({e for e, _ in tri}) != 3:
                raise ValueError(f"self-folded or malformed triangle {tri}")
            for e, d in tri:
                if e not in self.edge_kind:
                    raise ValueError(f"unknown edge {e}")
                seen.setdefault(e, []).append(d)
        for e, kind in self.edge_kind.items():
            dirs = seen.get(e, [])
            if kind == "interior":
                if sorted(dirs) != [-1, 1]:
                    raise ValueError(f"interior edge {e} must be traversed once each way")
            elif dirs != [1]:
                raise ValueError(f"boundary edge {e} must be traversed once, positively")

    def _build_vertices(self) -> None:
        parent: dict[End, End] = {}

        def find(x: End) -> End:
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: End, y: End) -> None:
            parent[find(x)] = find(y)

        for e in self.edge_kind:
            find((e, 0))
            find((e, 1))
        for tri in self.triangles:
            for i in range(3):
                union(_head_end(tri[i]), _tail_end(tri[(i + 1) % 3]))
        classes: dict[End, list[End]] = {}
        for e in self.edge_kind:
            for k in (0, 1):
                classes.setdefault(find((e, k)), []).append((e, k))
        named = sorted(classes.values(), key=lambda ends: min(ends))
        self.vertex_of_end: dict[End, str] = {}
        self.vertices: list[str] = []
        for i, ends in enumerate(named):
            name = f"m{i}"
            self.vertices.append(name)
            for end in ends:
                self.vertex_of_end[end] = name

    def _build_corner_table(self) -> None:
        succ: dict[End, End] = {}
        pred: dict[End, End] = {}
        self.corner_of: dict[tuple[int, int], tuple[str, End, End]] = {}
        for t, tri in enumerate(self.triangles):
            for i in range(3):
                x, y = _head_end(tri[i]), _tail_end(tri[(i + 1) % 3])
                if x in succ or y in pred:
                    raise ValueError("inconsistent corner structure")
                succ[x] = y
                pred[y] = x
                self.corner_of[(t, i)] = (self.vertex_of_end[x], x, y)
        self.corner_table: dict[str, list[End]] = {}
        starts = [x for e in self.edge_kind for k in (0, 1) if (x := (e, k)) not in pred]
        for start in starts:
            chain = [start]
            while chain[-1] in succ:
                chain.append(succ[chain[-1]])
            v = self.vertex_of_end[start]
            if v in self.corner_table:
                raise ValueError(f"two corner chains at marked point {v}")
            if self.edge_kind[start[0]] != "boundary" or self.edge_kind[chain[-1][0]] != "boundary":
                raise ValueError("corner chains must start and end on the boundary")
            self.corner_table[v] = chain
        if set(self.corner_table) != set(self.vertices):
            raise ValueError("some marked point has no corner chain")

    def _validate_counts(self) -> None:
        s = self.surface
        if len(self.edge_kind) != s.num_edges:
            raise ValueError("edge count violates the Euler-characteristic formula")
        if len(self.interior_edges) != s.num_interior_edges:
            raise ValueError("interior edge count violates the Euler formula")
        if len(self.triangles) != s.num_triangles:
            raise ValueError("triangle count violates the Euler formula")
        if len(self.vertices) != s.num_special:
            raise ValueError("marked point count mismatch")

    # -- boundary structure ----------------------------------------------------

    def m_minus(self, boundary_edge: str) -> str:
        """Terminal marked point of a boundary interval (head of its side)."""
        return self.vertex_of_end[(boundary_edge, 1)]

    def m_plus(self, boundary_edge: str) -> str:
        return self.vertex_of_end[(boundary_edge, 0)]

    def incoming_boundary(self, vertex: str) -> str:
        """The boundary interval whose terminal point is the given vertex."""
        return self.corner_table[vertex][0][0]

    def outgoing_boundary(self, vertex: str) -> str:
        return self.corner_table[vertex][-1][0]

    # -- triangle lookups ------------------------------------------------------

    def triangles_with_edge(self, e: str) -> list[int]:
        return [t for t, tri in enumerate(self.triangles) if any(x == e for x, _ in tri)]

    def triangle_edges(self, t: int) -> tuple[str, str, str]:
        return tuple(e for e, _ in self.triangles[t])

    def rotated_to_front(self, t: int, e: str) -> tuple[Side, Side, Side]:
        tri = self.triangles[t]
        for i in range(3):
            if tri[i][0] == e:
                return (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3])
        raise ValueError(f"edge {e} not in triangle {t}")

    def corner_pair(self, t: int, a: str, b: str) -> tuple[str, str]:
        """Stored order (first, second) of the corner of t between edges a, b."""
        edges = self.triangle_edges(t)
        for i in range(3):
            x, y = edges[i], edges[(i + 1) % 3]
            if {x, y} == {a, b}:
                return (x, y)
        raise ValueError(f"edges {a},{b} do not form a corner of triangle {t}")

    def corner_vertex(self, t: int, a: str, b: str) -> str:
        x, _ = self.corner_pair(t, a, b)
        i = [e for e, _ in self.triangles[t]].index(x)
        return self.corner_of[(t, i)][0]

    # -- matrices ----------------------------------------------------------------

    def exchange_matrix(self) -> dict[str, dict[str, int]]:
        eps = {a: {b: 0 for b in self.edge_kind} for a in self.edge_kind}
        for tri in self.triangles:
            for i in range(3):
                a, b = tri[i][0], tri[(i + 1) % 3][0]
                eps[a][b] += 1
                eps[b][a] -= 1
        return eps

    def compatibility_matrix(self) -> dict[str, dict[str, int]]:
        pi = {a: {b: 0 for b in self.edge_kind} for a in self.edge_kind}
        for chain in self.corner_table.values():
            for i, (a, _) in enumerate(chain):
                for j in range(i + 1, len(chain)):
                    b = chain[j][0]
                    pi[b][a] += 1  # b comes later in the corner order
                    pi[a][b] -= 1
        return pi

    def p_matrix(self) -> dict[str, dict[str, int]]:
        p = self.exchange_matrix()
        for e in self.boundary_edges:
            p[e][e] -= 1
        return p

    def form_matrix(self, matrix: Mapping[str, Mapping[str, int]], scale: int = 1) -> list[list[int]]:
        order = self.edge_order
        return [[scale * matrix[a][b] for b in order] for a in order]

    # -- flips ---------------------------------------------------------------------

    def flip(self, kappa: str, new_id: str | None = None) -> tuple["IdealTriangulation", dict[str, str]]:
        if self.edge_kind.get(kappa) != "interior":
            raise FlipNotAllowed(f"edge {kappa} is not interior")
        t1, t2 = self.triangles_with_edge(kappa)
        k1, a, b = self.rotated_to_front(t1, kappa)
        k2, c, d = self.rotated_to_front(t2, kappa)
        if k1[1] == k2[1]:
            raise FlipNotAllowed("inconsistent gluing around the flipped edge")
        if len({b[0], c[0]}) < 2 or len({d[0], a[0]}) < 2:
            raise FlipNotAllowed("flip would create a self-folded triangle")
        counter = self._fresh_counter
        if new_id is None:
            while (new_id := f"e{counter}") in self.edge_kind:
                counter += 1
            counter += 1
        edges = {e: k for e, k in self.edge_kind.items() if e != kappa}
        edges[new_id] = "interior"
        new_tris = []
        for t, tri in enumerate(self.triangles):
            if t == t1:
                new_tris.append(((new_id, -1), b, c))
            elif t == t2:
                new_tris.append(((new_id, 1), d, a))
            else:
                new_tris.append(tri)
        out = IdealTriangulation(self.surface, edges, new_tris, counter)
        return out, {kappa: new_id}

    def quadrilateral(self, kappa: str) -> dict:
        """The flip square around kappa: sides s1..s4 with triangle provenance.

        Returns {"t1": t1, "t2": t2, "sides": [(t, slot, edge), ...]} where the
        cyclic boundary of the square is s1 s2 s3 s4, s1 and s2 bounding t1.
        slot is 1 or 2 (position after kappa in the kappa-first rotation).
        """
        t1, t2 = self.triangles_with_edge(kappa)
        _, a, b = self.rotated_to_front(t1, kappa)
        _, c, d = self.rotated_to_front(t2, kappa)
        return {
            "t1": t1,
            "t2": t2,
            "sides": [(t1, 1, a[0]), (t1, 2, b[0]), (t2, 1, c[0]), (t2, 2, d[0])],
        }

    # -- misc ------------------------------------------------------------------------

    def is_balanced(self, vector: Mapping[str, int] | Sequence[int]) -> bool:
        vec = vector if isinstance(vector, Mapping) else dict(zip(self.edge_order, vector))
        for tri in self.triangles:
            if sum(vec.get(e, 0) for e, _ in tri) % 2:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "edges": [{"id": e, "kind": self.edge_kind[e]} for e in self.edge_order],
            "triangles": [[{"edge": e, "dir": d} for e, d in tri] for tri in self.triangles],
            "intervals": [
                {"id": e, "m_plus": self.m_plus(e), "m_minus": self.m_minus(e)}
                for e in self.boundary_edges
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "IdealTriangulation":
        surface = MarkedSurface.from_json(data["surface"])
        edges = {rec["id"]: rec["kind"] for rec in data["edges"]}
        triangles = [[(s["edge"], s["dir"]) for s in tri] for tri in data["triangles"]]
        return IdealTriangulation(surface, edges, triangles)

    @staticmethod
    def loads(text: str) -> "IdealTriangulation":
        return IdealTriangulation.from_json(json.loads(text))


# -- canonical builders ------------------------------------------------------------


def disk_triangulation(n: int, diagonals: Iterable[tuple[int, int]] | None = None) -> IdealTriangulation:
    """Triangulated n-gon; vertices v0..v_{n-1} counterclockwise.

    Boundary edges b{i} run v_i -> v_{i+1}; diagonals d{i}_{j} (i < j) are the
    given non-crossing chords (default: the fan at v0).
    """
    surface = MarkedSurface.disk(n)
    if diagonals is None:
        diagonals = [(0, j) for j in range(2, n - 1)]
    chords = {tuple(sorted(ch)) for ch in diagonals}
    if len(chords) != n - 3:
        raise ValueError("a disk triangulation needs exactly n-3 diagonals")

    def edge_id(i: int, j: int) -> str:
        i, j = min(i, j), max(i, j)
        if (j - i) % n in (1, n - 1):
            return f"b{i}" if j == i + 1 else f"b{j}"
        return f"d{i}_{j}"

    edge_set = {(i, (i + 1) % n) for i in range(n)} | chords
    present = chords | {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}

    def has(i: int, j: int) -> bool:
        return tuple(sorted((i, j))) in present

    triangles: list[tuple[Side, Side, Side]] = []

    def fill(i: int, j: int) -> None:
        # triangulate the sub-polygon with ear edge (i, j), i < j
        if j == i + 1:
            return
        for k in range(i + 1, j):
            if has(i, k) and has(k, j):
                def side(x: int, y: int) -> Side:
                    e = edge_id(x, y)
                    return (e, 1 if x < y or (x, y) == (n - 1, 0) else -1)

                triangles.append((side(i, k), side(k, j), side(j, i)))
                fill(i, k)
                fill(k, j)
                return
        raise ValueError("diagonals do not triangulate the polygon (crossing chords?)")

    fill(0, n - 1)
    edges = {}
    for i, j in edge_set:
        e = edge_id(i, j)
        edges[e] = "boundary" if e.startswith("b") else "interior"
    return IdealTriangulation(surface, edges, triangles)


def polygon_triangulations(n: int) -> list[frozenset[tuple[int, int]]]:
    """All maximal non-crossing diagonal sets of the n-gon (Catalan many)."""

    def helper(verts: tuple[int, ...]) -> list[frozenset[tuple[int, int]]]:
        if len(verts) < 3:
            return [frozenset()]
        i, j = verts[0], verts[-1]
        out = []
        for idx in range(1, len(verts) - 1):
            k = verts[idx]
            extra = []
            for x, y in ((i, k), (k, j)):
                a, b = min(x, y), max(x, y)
                if (b - a) % n not in (1, n - 1):
                    extra.append((a, b))
            for left in helper(verts[: idx + 1]):
                for right in helper(verts[idx:]):
                    out.append(left | right | frozenset(extra))
        return out

    return sorted(set(helper(tuple(range(n)))), key=sorted)


def all_disk_triangulations(n: int) -> list[IdealTriangulation]:
    return [disk_triangulation(n, sorted(ch)) for ch in polygon_triangulations(n)]


def annulus_triangulation(base: int = 0) -> IdealTriangulation:
    """A_{1,1} with spanning arcs arc{base}, arc{base+1} (standard: base=0).

    In the strip cover with arc_m lifted to (t,0)->(t + 1/3 - m, 1), the
    triangle at b0 has arc_{base+1} as its right side (traversed upward).
    """
    surface = MarkedSurface.annulus_11()
    lo, hi = f"arc{base}", f"arc{base + 1}"
    edges = {"b0": "boundary", "b1": "boundary", lo: "interior", hi: "interior"}
    triangles = [
        (("b0", 1), (hi, 1), (lo, -1)),
        (("b1", 1), (hi, -1), (lo, 1)),
    ]
    return IdealTriangulation(surface, edges, triangles)


# -- matrix utilities -----------------------------------------------------------------


def mutate_exchange(eps: Mapping[str, Mapping[str, int]], kappa: str) -> dict[str, dict[str, int]]:
    """Fomin-Zelevinsky matrix mutation at kappa (index kept in place)."""
    labels = list(eps)
    out = {a: dict(eps[a]) for a in labels}
    for a in labels:
        for b in labels:
            if a == kappa or b == kappa:
                out[a][b] = -eps[a][b]
            else:
                out[a][b] = eps[a][b] + (
                    abs(eps[a][kappa]) * eps[kappa][b] + eps[a][kappa] * abs(eps[kappa][b])
                ) // 2
    return out


def matrix_product_check(
    p: Mapping[str, Mapping[str, int]],
    pi: Mapping[str, Mapping[str, int]],
    eps: Mapping[str, Mapping[str, int]],
) -> bool:
    """Verify sum_{c,d} p[a][c] pi[c][d] p[b][d] == -4 eps[a][b]."""
    labels = list(p)
    for a in labels:
        for b in labels:
            total = 0
            for c in labels:
                pac = p[a][c]
                if not pac:
                    continue
                for d in labels:
                    total += pac * pi[c][d] * p[b][d]
            if total != -4 * eps[a][b]:
                return False
    return True


def compatibility_check(
    eps: Mapping[str, Mapping[str, int]],
    pi: Mapping[str, Mapping[str, int]],
    interior: Iterable[str],
) -> bool:
    """Verify sum_c eps[a][c] pi[c][b] == 4 delta_{ab} for interior a."""
    labels = list(eps)
    for a in interior:
        for b in labels:
            total = sum(eps[a][c] * pi[c][b] for c in labels)
            if total != (4 if a == b else 0):
                return False
    return True


def invert_rational(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of an integer matrix over Q (Gauss-Jordan)."""
    n = len(matrix)
    aug = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular over the rationals")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
