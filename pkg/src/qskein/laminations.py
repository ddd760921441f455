"""Curves, laminations and tropical coordinates on marked disks and A_{1,1}.

A curve is presented relative to an ideal triangulation as its crossing word
(the sequence of interior edges it meets), plus interval anchors for arcs.
Isotopy classes are certified constructively: on the disk, arcs are chords
between boundary intervals (class = the interval pair); on the annulus the
classes are the core loop z, spanning arcs tau_k, and the peripheral arcs
u0, u1 hugging the two boundary circles.

The negative M-shift moves an arc endpoint from a boundary interval b to the
initial marked point m_plus(b), i.e. against the boundary orientation.  The
shear sign convention: a crossing of an interior edge kappa contributes
h1 + h2 - 1, where h_i records whether the adjacent segment in each triangle
cuts the corner (kappa, next side) in the stored cyclic order.  Both choices
are pinned by the elementary-lamination anchor x(l_alpha) = delta_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .surface import IdealTriangulation

COVER_APEX = Fraction(1, 3)  # x-offset of m1-lifts in the annulus cover


@dataclass(frozen=True)
class CurveWord:
    """A simple curve in minimal position w.r.t. a triangulation."""

    kind: str  # "arc" | "loop"
    word: tuple[str, ...]
    start: tuple[str, Fraction] | None = None  # (interval id, position in (0,1))
    end: tuple[str, Fraction] | None = None
    peripheral_at: str | None = None  # encircled marked point, arcs only
    loop_base: int | None = None  # triangle index fixing the loop resolution

    def __post_init__(self):
        if self.kind == "arc":
            if self.start is None or self.end is None:
                raise ValueError("arcs need start and end anchors")
        elif self.kind == "loop":
            if not self.word:
                raise ValueError("essential loops cross at least one edge")
            if self.start is not None or self.end is not None:
                raise ValueError("loops have no endpoints")
        else:
            raise ValueError("kind must be 'arc' or 'loop'")
        for a, b in zip(self.word, self.word[1:]):
            if a == b:
                raise ValueError("word has an immediate backtrack (bigon)")
        if self.kind == "loop" and len(self.word) > 1 and self.word[0] == self.word[-1]:
            raise ValueError("cyclic word has an immediate backtrack (bigon)")

    def crossings(self) -> dict[str, int]:
        count: dict[str, int] = {}
        for e in self.word:
            count[e] = count.get(e, 0) + 1
        return count

    def to_json(self) -> dict:
        out = {"kind": self.kind, "word": list(self.word)}
        if self.kind == "arc":
            out["start"] = [self.start[0], str(self.start[1])]
            out["end"] = [self.end[0], str(self.end[1])]
        if self.peripheral_at is not None:
            out["peripheral_at"] = self.peripheral_at
        if self.loop_base is not None:
            out["loop_base"] = self.loop_base
        return out

    @staticmethod
    def from_json(data: dict) -> "CurveWord":
        def anchor(key):
            if key not in data or data[key] is None:
                return None
            b, pos = data[key]
            return (b, Fraction(pos))

        return CurveWord(
            kind=data["kind"],
            word=tuple(data["word"]),
            start=anchor("start"),
            end=anchor("end"),
            peripheral_at=data.get("peripheral_at"),
            loop_base=data.get("loop_base"),
        )


@dataclass(frozen=True)
class Segment:
    """One piece of a curve inside a triangle, cutting a single corner."""

    triangle: int
    first: str  # stored-first edge of the cut corner
    second: str
    enter: str  # edge (or interval) the segment comes from
    exit: str


class ResolutionError(ValueError):
    """Raised when a word cannot be realized on the triangulation."""


def resolve(curve: CurveWord, tri: IdealTriangulation) -> list[Segment]:
    """Split the curve into corner segments by walking through triangles."""

    def other_triangle(edge: str, t: int) -> int:
        ts = tri.triangles_with_edge(edge)
        if len(ts) != 2:
            raise ResolutionError(f"cannot cross boundary edge {edge}")
        return ts[0] if ts[1] == t else ts[1]

    def segment(t: int, a: str, b: str) -> Segment:
        first, second = tri.corner_pair(t, a, b)
        return Segment(t, first, second, a, b)

    if curve.kind == "arc":
        stops = [curve.start[0], *curve.word, curve.end[0]]
        t = tri.triangles_with_edge(curve.start[0])[0]
        segments = []
        for i in range(len(stops) - 1):
            segments.append(segment(t, stops[i], stops[i + 1]))
            if i + 1 < len(stops) - 1:
                t = other_triangle(stops[i + 1], t)
        return segments

    word = curve.word
    candidates = tri.triangles_with_edge(word[0]) if curve.loop_base is None else [curve.loop_base]
    for t0 in sorted(candidates):
        try:
            # segment i runs from the crossing of word[i] to that of word[i+1];
            # t0 is the triangle entered after crossing word[0]
            t = t0
            segments = []
            for i in range(len(word)):
                nxt = word[(i + 1) % len(word)]
                segments.append(segment(t, word[i], nxt))
                t = other_triangle(nxt, t)
            if t == t0:
                return segments
        except (ResolutionError, ValueError):
            continue
    raise ResolutionError(f"loop word {word} does not close up")


# -- laminations ---------------------------------------------------------------


@dataclass(frozen=True)
class ALamination:
    """Weighted disjoint curves; peripheral arcs may carry negative weights."""

    components: tuple[tuple[CurveWord, int], ...]

    def __post_init__(self):
        for curve, w in self.components:
            if w == 0:
                raise ValueError("weights must be nonzero")
            if w < 0 and curve.peripheral_at is None:
                raise ValueError("only peripheral arcs may have negative weight")

    def to_json(self) -> dict:
        return {"components": [{"curve": c.to_json(), "weight": w} for c, w in self.components]}

    @staticmethod
    def from_json(data: dict) -> "ALamination":
        return ALamination(
            tuple((CurveWord.from_json(rec["curve"]), rec["weight"]) for rec in data["components"])
        )


@dataclass(frozen=True)
class PLamination:
    """Non-peripheral weighted curves plus integer pinnings per interval."""

    components: tuple[tuple[CurveWord, int], ...]
    pinning: tuple[tuple[str, int], ...]  # (boundary interval, integer)

    def __post_init__(self):
        for curve, w in self.components:
            if w <= 0:
                raise ValueError("P-lamination weights must be positive")
            if curve.peripheral_at is not None:
                raise ValueError("P-laminations have no peripheral components")

    def pinning_dict(self) -> dict[str, int]:
        return dict(self.pinning)

    def to_json(self) -> dict:
        return {
            "components": [{"curve": c.to_json(), "weight": w} for c, w in self.components],
            "pinning": {b: v for b, v in self.pinning},
        }

    @staticmethod
    def from_json(data: dict) -> "PLamination":
        return PLamination(
            tuple((CurveWord.from_json(rec["curve"]), rec["weight"]) for rec in data["components"]),
            tuple(sorted(data["pinning"].items())),
        )


# -- coordinates ----------------------------------------------------------------


def curve_intersections(curve: CurveWord, tri: IdealTriangulation) -> dict[str, int]:
    """Geometric intersection numbers with every edge (endpoints count)."""
    count = {e: 0 for e in tri.edge_order}
    for e, k in curve.crossings().items():
        count[e] += k
    if curve.kind == "arc":
        count[curve.start[0]] += 1
        count[curve.end[0]] += 1
    return count


def a_coords(lam: ALamination, tri: IdealTriangulation) -> dict[str, Fraction]:
    coords = {e: Fraction(0) for e in tri.edge_order}
    for curve, w in lam.components:
        for e, k in curve_intersections(curve, tri).items():
            coords[e] += Fraction(w * k, 2)
    return coords


def is_congruent(lam: ALamination, tri: IdealTriangulation) -> bool:
    return all(c.denominator == 1 for c in a_coords(lam, tri).values())


def shear_of_curve(curve: CurveWord, tri: IdealTriangulation) -> dict[str, int]:
    coords = {e: 0 for e in tri.edge_order}
    segments = resolve(curve, tri)
    n = len(segments)
    for i, e in enumerate(curve.word):
        if curve.kind == "arc":
            before, after = segments[i], segments[i + 1]
        else:
            before, after = segments[(i - 1) % n], segments[i]
        h1 = 1 if before.first == e else 0
        h2 = 1 if after.first == e else 0
        coords[e] += h1 + h2 - 1
    if curve.kind == "arc":
        for seg, b in ((segments[0], curve.start[0]), (segments[-1], curve.end[0])):
            if seg.first == b:  # end segment cuts the corner at m_minus(b)
                coords[b] += 1
    return coords


def shear_coords(lp: PLamination, tri: IdealTriangulation) -> dict[str, int]:
    coords = {e: 0 for e in tri.edge_order}
    for b, v in lp.pinning:
        coords[b] += v
    for curve, w in lp.components:
        for e, c in shear_of_curve(curve, tri).items():
            coords[e] += w * c
    return coords


# -- tropical ensemble ------------------------------------------------------------


def tropical_ensemble(lam: ALamination, tri: IdealTriangulation) -> PLamination:
    """Forget peripherals; pin their weights at the terminal-point intervals."""
    pinning = {b: 0 for b in tri.boundary_edges}
    comps = []
    for curve, w in lam.components:
        if curve.peripheral_at is not None:
            pinning[tri.incoming_boundary(curve.peripheral_at)] += w
        else:
            comps.append((curve, w))
    return PLamination(tuple(comps), tuple(sorted(pinning.items())))


def inverse_tropical_ensemble(lp: PLamination, tri: IdealTriangulation) -> ALamination:
    comps = list(lp.components)
    for b, v in lp.pinning:
        if v:
            comps.append((peripheral_arc(tri, tri.m_minus(b)), v))
    return ALamination(tuple(comps))


# -- tropical cluster transformations ----------------------------------------------


def tropical_mutate_x(
    coords: Mapping[str, int],
    kappa: str,
    eps: Mapping[str, Mapping[str, int]],
    new_id: str,
) -> dict[str, int]:
    xk = coords[kappa]
    out = {}
    for a, x in coords.items():
        if a == kappa:
            continue
        e = eps[a][kappa]
        if e:
            sgn = 1 if e > 0 else -1
            out[a] = x - e * max(-sgn * xk, 0)
        else:
            out[a] = x
    out[new_id] = -xk
    return out


def tropical_mutate_a(
    coords: Mapping[str, Fraction],
    kappa: str,
    eps: Mapping[str, Mapping[str, int]],
    new_id: str,
) -> dict[str, Fraction]:
    plus = sum((coords[b] * max(eps[kappa][b], 0) for b in coords), Fraction(0))
    minus = sum((coords[b] * max(-eps[kappa][b], 0) for b in coords), Fraction(0))
    out = {a: c for a, c in coords.items() if a != kappa}
    out[new_id] = -coords[kappa] + max(plus, minus)
    return out


# -- canonical curves ----------------------------------------------------------------


def _dual_path(tri: IdealTriangulation, t_from: int, t_to: int) -> tuple[str, ...]:
    """Unique path in the dual tree of a disk triangulation."""
    if t_from == t_to:
        return ()
    parent: dict[int, tuple[int, str]] = {t_from: (-1, "")}
    frontier = [t_from]
    while frontier:
        nxt = []
        for t in frontier:
            for e, _ in tri.triangles[t]:
                if tri.edge_kind[e] != "interior":
                    continue
                for t2 in tri.triangles_with_edge(e):
                    if t2 != t and t2 not in parent:
                        parent[t2] = (t, e)
                        nxt.append(t2)
        frontier = nxt
    if t_to not in parent:
        raise ResolutionError("disconnected dual graph")
    path = []
    t = t_to
    while t != t_from:
        t, e = parent[t]
        path.append(e)
    return tuple(reversed(path))


def disk_arc(tri: IdealTriangulation, b1: str, b2: str, pos: Fraction = Fraction(1, 2)) -> CurveWord:
    """The chord-class arc between two distinct boundary intervals."""
    if b1 == b2:
        raise ValueError("arcs between equal intervals are inessential on a disk")
    t1 = tri.triangles_with_edge(b1)[0]
    t2 = tri.triangles_with_edge(b2)[0]
    word = _dual_path(tri, t1, t2)
    peripheral = None
    if tri.m_minus(b1) == tri.m_plus(b2):
        peripheral = tri.m_minus(b1)
    if tri.m_minus(b2) == tri.m_plus(b1):
        peripheral = tri.m_minus(b2)
    return CurveWord("arc", word, (b1, pos), (b2, pos), peripheral_at=peripheral)


def peripheral_arc(tri: IdealTriangulation, vertex: str, pos: Fraction = Fraction(1, 2)) -> CurveWord:
    """The corner arc encircling one marked point (crosses its whole fan)."""
    chain = tri.corner_table[vertex]
    word = tuple(e for e, _ in chain[1:-1])
    b_in, b_out = chain[0][0], chain[-1][0]
    return CurveWord("arc", word, (b_in, pos), (b_out, pos), peripheral_at=vertex)


# -- annulus-specific constructors (exact strip-cover geometry) ----------------------


def _annulus_pair(tri: IdealTriangulation) -> tuple[int, str, str]:
    """Return (j, lower_arc, upper_arc) for an A_{1,1} triangulation.

    The b0-triangle has cyclic order (b0, hi, lo); arc indices satisfy
    index(hi) = index(lo) + 1 in the tau-winding indexing.
    """
    if tri.surface.boundary != (1, 1):
        raise ValueError("not an A_{1,1} triangulation")
    t_b0 = tri.triangles_with_edge("b0")[0]
    _, hi, lo = tri.rotated_to_front(t_b0, "b0")
    j = _arc_index(lo[0])
    return j, lo[0], hi[0]


def _arc_index(edge_id: str) -> int:
    if edge_id.startswith("arc"):
        return int(edge_id[3:])
    raise ValueError(f"annulus arc ids must look like 'arc<k>': {edge_id}")


def annulus_tau_word(tri: IdealTriangulation, k: int, xi: Fraction = Fraction(1, 100)) -> CurveWord:
    """Spanning arc tau_k: M-shift is the ideal arc arc_k; anchored on b0, b1.

    In the strip cover, arc_m lifts to (t,0)->(t + APEX - m, 1); the curve is
    the segment (xi,0)->(APEX - k - xi, 1), its endpoints pushed positively
    off the marked points (0,0) and (APEX - k, 1).
    """
    j, lo, hi = _annulus_pair(tri)
    crossings = []
    for m, edge in ((j, lo), (j + 1, hi)):
        denom = m - k - 2 * xi  # y(t) = (t - xi) / denom
        lo_t, hi_t = min(0, m - k), max(0, m - k)
        for t in range(lo_t - 2, hi_t + 3):
            y = (t - xi) / denom
            if 0 < y < 1:
                crossings.append((y, edge))
    crossings.sort()
    return CurveWord("arc", tuple(e for _, e in crossings), ("b0", xi), ("b1", xi))


def annulus_z_word(tri: IdealTriangulation) -> CurveWord:
    """The core loop; crosses each spanning edge once."""
    j, lo, hi = _annulus_pair(tri)
    xs = sorted((((COVER_APEX - m) / 2) % 1, e) for m, e in ((j, lo), (j + 1, hi)))
    return CurveWord("loop", tuple(e for _, e in xs))


def annulus_u_word(tri: IdealTriangulation, which: int, pos: Fraction = Fraction(1, 2)) -> CurveWord:
    """Peripheral arc u0/u1 hugging boundary component 0/1."""
    return peripheral_arc(tri, tri.m_minus(f"b{which}"), pos)


def annulus_flip(tri: IdealTriangulation, edge: str) -> tuple[IdealTriangulation, dict[str, str]]:
    """Flip an A_{1,1} spanning arc, keeping the arc{k} naming scheme."""
    j, lo, hi = _annulus_pair(tri)
    new_index = j + 2 if edge == lo else j - 1
    return tri.flip(edge, new_id=f"arc{new_index}")


# -- class keys and compatibility ------------------------------------------------------


def curve_class(curve: CurveWord, tri: IdealTriangulation) -> tuple:
    """Canonical isotopy-class key on the disk or the annulus."""
    if tri.surface.genus == 0 and len(tri.surface.boundary) == 1:
        b1, b2 = sorted((curve.start[0], curve.end[0]))
        return ("chord", b1, b2)
    if curve.kind == "loop":
        return ("z",)
    if curve.peripheral_at is not None:
        return ("u", 0 if curve.peripheral_at == tri.m_minus("b0") else 1)
    return ("tau", _annulus_winding(curve, tri))


def _annulus_winding(curve: CurveWord, tri: IdealTriangulation) -> int:
    """Recover k for a spanning arc from its crossing numbers."""
    j, lo, hi = _annulus_pair(tri)
    counts = curve.crossings()
    n_lo, n_hi = counts.get(lo, 0), counts.get(hi, 0)

    def f(d: int) -> int:
        return d + 1 if d >= 0 else -d - 1

    for k in range(j - n_lo - n_hi - 2, j + n_lo + n_hi + 3):
        if f(k - j) == n_lo and f(k - j - 1) == n_hi:
            return k
    raise ResolutionError(f"crossing numbers ({n_lo},{n_hi}) match no spanning class")


def classes_compatible(c1: tuple, c2: tuple) -> bool:
    if c1[0] == "chord" and c2[0] == "chord":
        return not _chords_cross(c1[1:], c2[1:])
    kinds = {c1[0], c2[0]}
    if "u" in kinds:
        return True
    if c1[0] == "z" and c2[0] == "z":
        return True
    if kinds == {"z", "tau"}:
        return False
    if c1[0] == "tau" and c2[0] == "tau":
        return abs(c1[1] - c2[1]) <= 1
    return False


def _chords_cross(p1: Sequence[str], p2: Sequence[str]) -> bool:
    def idx(b: str) -> int:
        return int(b[1:])

    a, b = sorted((idx(p1[0]), idx(p1[1])))
    c, d = sorted((idx(p2[0]), idx(p2[1])))
    return (a < c < b < d) or (c < a < d < b)


def build_curve(tri: IdealTriangulation, key: tuple, pos: Fraction = Fraction(1, 2)) -> CurveWord:
    """Canonical curve word for a class key."""
    if key[0] == "chord":
        return disk_arc(tri, key[1], key[2], pos)
    if key[0] == "z":
        return annulus_z_word(tri)
    if key[0] == "u":
        return annulus_u_word(tri, key[1], pos)
    if key[0] == "tau":
        return annulus_tau_word(tri, key[1], pos / 50)
    raise ValueError(f"unknown curve class {key}")


def lamination_from_classes(
    tri: IdealTriangulation, weighted_classes: Iterable[tuple[tuple, int]]
) -> ALamination:
    items = list(weighted_classes)
    keys = [k for k, _ in items]
    if len(set(keys)) != len(keys):
        raise ValueError("components must be pairwise non-isotopic")
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if not classes_compatible(keys[i], keys[j]):
                raise ValueError(f"classes {keys[i]} and {keys[j]} cannot be disjoint")
    comps = []
    for n, (key, w) in enumerate(items):
        curve = build_curve(tri, key, Fraction(2 * n + 1, 2 * len(items) + 2))
        comps.append((curve, w))
    return ALamination(tuple(comps))


# -- M-shift ------------------------------------------------------------------------


def m_shift(curve: CurveWord, tri: IdealTriangulation) -> tuple:
    """Negative shift of an arc's endpoints onto marked points -> ideal arc key.

    Disk: ('chord', i, j) marked-point indices; annulus: ('arc', k) or
    ('beta', 0/1).  Loops are returned unchanged as ('z',).
    """
    if curve.kind == "loop":
        return ("z",)
    if tri.surface.boundary == (1, 1):
        if curve.peripheral_at is not None:
            return ("beta", 0 if curve.peripheral_at == tri.m_minus("b0") else 1)
        return ("arc", _annulus_winding(curve, tri))
    v1 = tri.m_plus(curve.start[0])
    v2 = tri.m_plus(curve.end[0])
    i, j = sorted((int(v1[1:]), int(v2[1:])))
    return ("chord", i, j)


# -- transport across a flip -----------------------------------------------------------


def flip_transport_curve(
    curve: CurveWord,
    tri: IdealTriangulation,
    kappa: str,
    new_tri: IdealTriangulation,
    new_id: str,
) -> CurveWord:
    """Rewrite the crossing word through the flipped quadrilateral."""
    quad = tri.quadrilateral(kappa)
    t1, t2 = quad["t1"], quad["t2"]
    occ_of: dict[tuple[int, str], int] = {}
    for pos, (t, slot, e) in enumerate(quad["sides"]):
        occ_of[(t, e)] = pos  # 0..3 for s1..s4

    segments = resolve(curve, tri)
    nseg = len(segments)
    if curve.kind == "arc":
        events: list[tuple[str, str]] = [("anchor", curve.start[0])]
        events += [("cross", e) for e in curve.word]
        events.append(("anchor", curve.end[0]))
        seg_before = {i: segments[i - 1] if i > 0 else None for i in range(len(events))}
        seg_after = {i: segments[i] if i < nseg else None for i in range(len(events))}
    else:
        events = [("cross", e) for e in curve.word]
        seg_before = {i: segments[(i - 1) % nseg] for i in range(len(events))}
        seg_after = {i: segments[i] for i in range(len(events))}

    def occurrence(seg: Segment | None, e: str) -> int | None:
        """Q-side occurrence of an event edge, relative to a passage segment."""
        if seg is None or seg.triangle not in (t1, t2):
            return None
        return occ_of.get((seg.triangle, e))

    # unordered side pairs: {s1,s3},{s2,s4} keep the diagonal crossing,
    # {s1,s4},{s2,s3} lose it, corner pairs {s1,s2},{s3,s4} gain one
    keep = {frozenset({0, 2}), frozenset({1, 3})}
    drop = {frozenset({0, 3}), frozenset({1, 2})}
    insert = {frozenset({0, 1}), frozenset({2, 3})}

    out: list[tuple[str, str]] = []
    n = len(events)
    for i, ev in enumerate(events):
        if ev[1] == kappa and ev[0] == "cross":
            continue
        out.append(ev)
        j = (i + 1) % n
        if curve.kind == "arc" and i == n - 1:
            break
        between_kappa = events[j][1] == kappa and events[j][0] == "cross"
        if between_kappa:
            j = (j + 1) % n
        o1 = occurrence(seg_after[i], events[i][1])
        o2 = occurrence(seg_before[j], events[j][1])
        if o1 is None or o2 is None:
            if between_kappa:
                raise ResolutionError("kappa crossing without quadrilateral context")
            continue
        pair = frozenset({o1, o2})
        if between_kappa:
            if pair in keep:
                out.append(("cross", new_id))
            elif pair not in drop:
                raise ResolutionError(f"invalid passage {sorted(pair)} through the flip square")
        elif pair in insert:
            out.append(("cross", new_id))

    word = tuple(e for kind, e in out if kind == "cross")
    if curve.kind == "arc":
        new_curve = CurveWord("arc", word, curve.start, curve.end, curve.peripheral_at)
    else:
        new_curve = CurveWord("loop", word)
    resolve(new_curve, new_tri)  # validates minimal position
    return new_curve


def transport_lamination(
    lam: ALamination,
    tri: IdealTriangulation,
    kappa: str,
    new_tri: IdealTriangulation,
    new_id: str,
) -> ALamination:
    return ALamination(
        tuple(
            (flip_transport_curve(c, tri, kappa, new_tri, new_id), w)
            for c, w in lam.components
        )
    )


def transport_plamination(
    lp: PLamination,
    tri: IdealTriangulation,
    kappa: str,
    new_tri: IdealTriangulation,
    new_id: str,
) -> PLamination:
    return PLamination(
        tuple(
            (flip_transport_curve(c, tri, kappa, new_tri, new_id), w)
            for c, w in lp.components
        ),
        lp.pinning,
    )


# -- random sampling ----------------------------------------------------------------


def random_alamination(
    tri: IdealTriangulation,
    rng,
    max_components: int = 3,
    max_weight: int = 3,
    require_congruent: bool = False,
    max_tries: int = 400,
) -> ALamination:
    disk = len(tri.surface.boundary) == 1
    n = tri.surface.num_special
    for _ in range(max_tries):
        keys: list[tuple] = []
        target = rng.randint(1, max_components)
        for _ in range(4 * target):
            if len(keys) >= target:
                break
            if disk:
                i = rng.randrange(n)
                j = rng.randrange(n)
                if i == j:
                    continue
                key = ("chord", f"b{min(i, j)}", f"b{max(i, j)}")
            else:
                key = rng.choice(
                    [("z",), ("u", 0), ("u", 1)]
                    + [("tau", k) for k in range(-2, 3)]
                )
            if key in keys or any(not classes_compatible(key, k) for k in keys):
                continue
            keys.append(key)
        if not keys:
            continue
        weighted = []
        for key in keys:
            peripheral = key[0] == "u" or (
                key[0] == "chord" and _adjacent_intervals(key[1], key[2], n)
            )
            w = rng.randint(1, max_weight)
            if peripheral and rng.random() < 0.4:
                w = -w
            weighted.append((key, w))
        try:
            lam = lamination_from_classes(tri, weighted)
        except ValueError:
            continue
        if not require_congruent or is_congruent(lam, tri):
            return lam
    raise RuntimeError("failed to sample a lamination within the try budget")


def _adjacent_intervals(b1: str, b2: str, n: int) -> bool:
    i, j = int(b1[1:]), int(b2[1:])
    return (j - i) % n in (1, n - 1) or (i - j) % n in (1, n - 1)
