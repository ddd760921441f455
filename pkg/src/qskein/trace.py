"""Quantum trace state sums and rational transport under flips.

The trace of a curve with respect to a triangulation is a sum over state
assignments (+,-) to its edge crossings (arc endpoints carry fixed states).
Each corner segment between stored-consecutive edges (first, second)
contributes Z_first^(-s1) Z_second^(-s2); the segment vanishes for the
pattern (s_first, s_second) = (+, -).  A surviving state contributes the
Weyl basis monomial of its total exponent vector with coefficient 1; these
conventions are pinned by the triangle anchor and flip compatibility.

Quantum Poisson mutation acts termwise as B_lam -> B_(mu'(lam)) * F where F
collects factors (1 + v^(2j-1) X_kappa) determined by the commutation
exponent, realized through the q-difference relation of the dilogarithm.
Negative exponents are carried in an explicit denominator, so equality of
transported elements is tested by exact cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .laminations import ALamination, CurveWord, a_coords, is_congruent, resolve
from .qscalar import QScalar
from .qtorus import NotPointed, SkewLattice, TorusElement, chebyshev_eval, pointed_normalize
from .surface import IdealTriangulation

KILL_FIRST, KILL_SECOND = 1, -1  # vanishing corner pattern (s_first, s_second)


class OddExponent(ValueError):
    """Raised when a non-congruent element is pushed into the X-torus."""


class NotCongruent(ValueError):
    """Raised when a duality-map input has non-integral a-coordinates."""


def z_lattice(tri: IdealTriangulation) -> SkewLattice:
    if "_z_lattice" not in tri.__dict__:
        eps = tri.exchange_matrix()
        tri.__dict__["_z_lattice"] = SkewLattice.build(tri.edge_order, tri.form_matrix(eps, -1))
    return tri.__dict__["_z_lattice"]


def x_lattice(tri: IdealTriangulation) -> SkewLattice:
    if "_x_lattice" not in tri.__dict__:
        eps = tri.exchange_matrix()
        tri.__dict__["_x_lattice"] = SkewLattice.build(tri.edge_order, tri.form_matrix(eps, -4))
    return tri.__dict__["_x_lattice"]


def trace_curve(
    curve: CurveWord,
    tri: IdealTriangulation,
    endpoint_states: tuple[int, int] = (-1, -1),
) -> TorusElement:
    """Triangle-local state sum of a single reduced curve, in the Z-torus.

    Each surviving state contributes the ordered product (along the curve,
    start to end) of its Weyl corner monomials.  When every edge is crossed
    at most once this reduces to the bare Weyl monomial of the total
    exponent vector; repeated crossings pick up the q-powers needed for
    flip compatibility.
    """
    lattice = z_lattice(tri)
    index = {e: i for i, e in enumerate(lattice.labels)}
    segments = resolve(curve, tri)
    k = len(curve.word)
    terms: dict[tuple[int, ...], QScalar] = {}

    if curve.kind == "arc":
        # event states: [start endpoint, crossings..., end endpoint]
        fixed_start, fixed_end = endpoint_states
        event_edges = [curve.start[0], *curve.word, curve.end[0]]
        seg_events = [(i, i + 1) for i in range(len(segments))]
    else:
        event_edges = list(curve.word)
        seg_events = [(i, (i + 1) % k) for i in range(k)]

    # per-triangle pairing of segment monomials: the state weight lives in the
    # tensor product of triangle tori, whose form is block diagonal
    local_eps: list[dict[tuple[str, str], int]] = []
    for t_sides in tri.triangles:
        eps_t: dict[tuple[str, str], int] = {}
        es = [e for e, _ in t_sides]
        for i in range(3):
            eps_t[(es[i], es[(i + 1) % 3])] = 1
            eps_t[(es[(i + 1) % 3], es[i])] = -1
        local_eps.append(eps_t)

    def seg_states(seg, s_enter: int, s_exit: int) -> tuple[int, int] | None:
        s_first = s_enter if seg.enter == seg.first else s_exit
        s_second = s_exit if seg.enter == seg.first else s_enter
        if s_first == KILL_FIRST and s_second == KILL_SECOND:
            return None
        return s_first, s_second

    for assignment in product((-1, 1), repeat=k):
        if curve.kind == "arc":
            states = [fixed_start, *assignment, fixed_end]
        else:
            states = list(assignment)
        seg_data = []
        for seg, (i, j) in zip(segments, seg_events):
            fs = seg_states(seg, states[i], states[j])
            if fs is None:
                break
            seg_data.append((seg, fs))
        else:
            half_power = 0
            for a in range(len(seg_data)):
                seg_a, (f_a, s_a) = seg_data[a]
                va = {seg_a.first: -f_a, seg_a.second: -s_a}
                eps_t = local_eps[seg_a.triangle]
                for b in range(a + 1, len(seg_data)):
                    seg_b, (f_b, s_b) = seg_data[b]
                    if seg_b.triangle != seg_a.triangle:
                        continue
                    vb = {seg_b.first: -f_b, seg_b.second: -s_b}
                    for e, ce in va.items():
                        for f, cf in vb.items():
                            half_power -= ce * eps_t.get((e, f), 0) * cf
            vec = [0] * lattice.rank
            for e, s in zip(event_edges, states):
                vec[index[e]] -= s
            key = tuple(vec)
            contrib = QScalar.q_power(half_power)
            prev = terms.get(key)
            u = contrib if prev is None else prev + contrib
            if u:
                terms[key] = u
            else:
                terms.pop(key, None)
    return TorusElement(lattice, terms)


def to_congruent_x(elt: TorusElement, tri: IdealTriangulation) -> TorusElement:
    """Reinterpret an even-exponent Z-torus element through X_a = Z_a^(-2)."""
    xlat = x_lattice(tri)
    terms = {}
    for vec, s in elt.terms.items():
        if any(c % 2 for c in vec):
            raise OddExponent(f"odd exponent vector {vec}")
        terms[tuple(-c // 2 for c in vec)] = s
    return TorusElement(xlat, terms)


def x_to_balanced_z(elt: TorusElement, tri: IdealTriangulation) -> TorusElement:
    return TorusElement(z_lattice(tri), {tuple(-2 * c for c in vec): s for vec, s in elt.terms.items()})


# -- duality map I_A ----------------------------------------------------------------


def duality_A(lam: ALamination, tri: IdealTriangulation) -> TorusElement:
    """Trace of the constant-elevation skein lift; pointed X-torus element."""
    coords = a_coords(lam, tri)
    if any(c.denominator != 1 for c in coords.values()):
        raise NotCongruent(f"a-coordinates are not integral: {coords}")
    total = TorusElement.one(z_lattice(tri))
    for curve, w in lam.components:
        if curve.kind == "loop":
            part = chebyshev_eval("first", w, trace_curve(curve, tri))
        elif w > 0:
            part = trace_curve(curve, tri, (-1, -1)) ** w
        else:
            minus = trace_curve(curve, tri, (-1, -1))
            if not minus.is_monomial():
                raise NotCongruent("negative weight on a non-peripheral arc")
            (vec, _), = minus.terms.items()
            part = TorusElement.monomial(minus.lattice, tuple(w * c for c in vec))
        total = total * part
    balanced, _ = pointed_normalize(total, step=-2)
    return to_congruent_x(balanced, tri)


def lowest_term_exponent(x_elt: TorusElement) -> tuple[int, ...]:
    _, m = pointed_normalize(x_elt, step=1)
    return m


# -- quantum mutation transport --------------------------------------------------------


@dataclass
class RationalTorus:
    """numerator * denominator^(-1), denominator a polynomial in one monomial.

    The denominator is stored as a multiset of factors (1 + v^o * B_pvec)
    with odd integers o; all such factors commute with each other, so the
    fraction is well-defined with the inverse on the right.
    """

    numerator: TorusElement
    pvec: tuple[int, ...]
    factors: tuple[int, ...] = ()

    def denominator(self) -> TorusElement:
        lat = self.numerator.lattice
        den = TorusElement.one(lat)
        for o in self.factors:
            den = den * _dilog_factor(lat, self.pvec, o)
        return den

    def equals(self, other: "RationalTorus") -> bool:
        if self.numerator.lattice != other.numerator.lattice:
            return False
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def equals_element(self, elt: TorusElement) -> bool:
        return self.numerator == elt * self.denominator()


def _dilog_factor(lattice: SkewLattice, pvec: tuple[int, ...], o: int) -> TorusElement:
    return TorusElement.one(lattice) + TorusElement.monomial(lattice, pvec, QScalar.v_power(o))


def mu_prime_x(
    tri: IdealTriangulation, kappa: str, new_tri: IdealTriangulation, new_id: str
):
    """Lattice mutation N^(tri') -> N^(tri): e_k' -> -e_k, e_a -> e_a + [eps_ak]+ e_k."""
    eps = tri.exchange_matrix()
    old_order = tri.edge_order
    new_order = new_tri.edge_order
    k_idx = old_order.index(kappa)
    images = []
    for a in new_order:
        vec = [0] * len(old_order)
        if a == new_id:
            vec[k_idx] = -1
        else:
            vec[old_order.index(a)] = 1
            vec[k_idx] = max(eps[a][kappa], 0)
        images.append(tuple(vec))
    return images


def apply_lattice_map(images: Sequence[tuple[int, ...]], vec: Sequence[int]) -> tuple[int, ...]:
    n = len(images[0])
    out = [0] * n
    for c, img in zip(vec, images):
        if c:
            for i, x in enumerate(img):
                out[i] += c * x
    return tuple(out)


def transport_element(
    elt: TorusElement,
    images: Sequence[tuple[int, ...]],
    target: SkewLattice,
    pvec: tuple[int, ...],
) -> RationalTorus:
    """Termwise mutation transport with dilogarithm factors.

    elt lives over the flipped chart; images describe the lattice mutation
    into the target chart; pvec is the exponent vector of the mutating
    monomial P (X_kappa, or its ensemble image) in the target lattice.
    The commutation exponent n is -omega(pvec, mu'(lam)) / 4.
    """
    num = TorusElement.zero(target)
    with_n: list[tuple[tuple[int, ...], QScalar, int]] = []
    max_neg = 0
    for vec, s in elt.terms.items():
        mvec = apply_lattice_map(images, vec)
        omega = target.pairing(pvec, mvec)
        if omega % 4:
            raise ValueError("non-integral commutation exponent in transport")
        n = -omega // 4
        with_n.append((mvec, s, n))
        max_neg = max(max_neg, -n)
    factors = tuple(-(2 * j - 1) for j in range(1, max_neg + 1))
    for mvec, s, n in with_n:
        term = TorusElement.monomial(target, mvec, s)
        for j in range(1, n + 1):
            term = term * _dilog_factor(target, pvec, 2 * j - 1)
        # complete this term's denominator prefix {-1,-3,...} to the common one
        for j in range(max(0, -n) + 1, max_neg + 1):
            term = term * _dilog_factor(target, pvec, -(2 * j - 1))
        num = num + term
    return RationalTorus(num, pvec, factors)


def transport_X(
    elt: TorusElement,
    tri: IdealTriangulation,
    kappa: str,
    new_tri: IdealTriangulation,
    new_id: str,
    kind: str = "z",
) -> RationalTorus:
    """Pull back a (balanced Z- or X-) torus element along the flip at kappa."""
    images = mu_prime_x(tri, kappa, new_tri, new_id)
    if kind == "z":
        target = z_lattice(tri)
        pvec = target.basis_vector(target.index(kappa), -2)  # X_kappa = Z_kappa^(-2)
    else:
        target = x_lattice(tri)
        pvec = target.basis_vector(target.index(kappa), 1)
    return transport_element(elt, images, target, pvec)
