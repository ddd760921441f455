"""Based quantum tori over skew-symmetric integer lattices.

A torus element is a Z[q^(+-1/2)]-combination of basis monomials B_lam indexed
by integer lattice vectors, with multiplication

    B_lam * B_mu = q^(omega(lam, mu)/2) * B_(lam+mu).

The form omega is stored in q-units: omega(e_i, e_j) = form[i][j] counts
half-exponents, so the Z-torus of a triangulation carries form -epsilon, the
X-torus carries -4*epsilon (its natural parameter v = q^(-2) has even
v-exponents materialized through the half-exponent scaling), and the A-torus
carries the compatibility matrix Pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .qscalar import QScalar


class LatticeMismatch(ValueError):
    """Raised when combining torus elements over different lattices."""


class NotPointed(ValueError):
    """Raised when an element has no unique divisibility-lowest term."""


@dataclass(frozen=True)
class SkewLattice:
    """Free Z-lattice with labelled basis and antisymmetric q-unit form."""

    labels: tuple[str, ...]
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.form) != n or any(len(row) != n for row in self.form):
            raise ValueError("form must be a square matrix over the labels")
        for i in range(n):
            if self.form[i][i] != 0:
                raise ValueError("form must have zero diagonal")
            for j in range(n):
                if self.form[i][j] != -self.form[j][i]:
                    raise ValueError("form must be antisymmetric")

    @staticmethod
    def build(labels: Sequence[str], form: Sequence[Sequence[int]]) -> "SkewLattice":
        return SkewLattice(tuple(labels), tuple(tuple(int(x) for x in row) for row in form))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def pairing(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """omega(lam, mu) in q-units (half-exponents)."""
        total = 0
        for i, a in enumerate(lam):
            if not a:
                continue
            row = self.form[i]
            for j, b in enumerate(mu):
                if b:
                    total += a * row[j] * b
        return total

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def basis_vector(self, i: int, coeff: int = 1) -> tuple[int, ...]:
        v = [0] * self.rank
        v[i] = coeff
        return tuple(v)

    def vector(self, coords: Mapping[str, int] | Sequence[int]) -> tuple[int, ...]:
        if isinstance(coords, Mapping):
            v = [0] * self.rank
            for label, c in coords.items():
                v[self.index(label)] = int(c)
            return tuple(v)
        if len(coords) != self.rank:
            raise ValueError("coordinate length does not match lattice rank")
        return tuple(int(c) for c in coords)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "form": [list(r) for r in self.form]}

    @staticmethod
    def from_json(data: dict) -> "SkewLattice":
        return SkewLattice.build(data["labels"], data["form"])


@dataclass(frozen=True)
class LatticeVector:
    """A lattice point remembering its owner; thin wrapper over tuples."""

    owner: SkewLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.owner.rank:
            raise ValueError("coordinate length does not match lattice rank")


class TorusElement:
    """Sparse element of the based quantum torus of a SkewLattice."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: SkewLattice, terms: Mapping[tuple[int, ...], QScalar] | None = None):
        self.lattice = lattice
        self.terms: dict[tuple[int, ...], QScalar] = {}
        if terms:
            for v, s in terms.items():
                if s:
                    self.terms[tuple(v)] = s

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(lattice: SkewLattice) -> "TorusElement":
        return TorusElement(lattice)

    @staticmethod
    def one(lattice: SkewLattice) -> "TorusElement":
        return TorusElement(lattice, {lattice.zero(): QScalar.one()})

    @staticmethod
    def monomial(lattice: SkewLattice, coords, scalar: QScalar | None = None) -> "TorusElement":
        vec = lattice.vector(coords) if not isinstance(coords, tuple) else coords
        return TorusElement(lattice, {vec: QScalar.one() if scalar is None else scalar})

    @staticmethod
    def generator(lattice: SkewLattice, label: str, power: int = 1) -> "TorusElement":
        return TorusElement.monomial(lattice, lattice.basis_vector(lattice.index(label), power))

    # -- algebra -----------------------------------------------------------

    def _check(self, other: "TorusElement") -> None:
        if self.lattice is not other.lattice and self.lattice != other.lattice:
            raise LatticeMismatch("torus elements live over different lattices")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        terms = dict(self.terms)
        for v, s in other.terms.items():
            t = terms.get(v)
            u = s if t is None else t + s
            if u:
                terms[v] = u
            else:
                terms.pop(v, None)
        out = TorusElement.__new__(TorusElement)
        out.lattice, out.terms = self.lattice, terms
        return out

    def __neg__(self) -> "TorusElement":
        out = TorusElement.__new__(TorusElement)
        out.lattice = self.lattice
        out.terms = {v: -s for v, s in self.terms.items()}
        return out

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other: "TorusElement | QScalar | int") -> "TorusElement":
        if isinstance(other, (QScalar, int)):
            return self.scale(other)
        self._check(other)
        pairing = self.lattice.pairing
        terms: dict[tuple[int, ...], QScalar] = {}
        for v, s in self.terms.items():
            for w, t in other.terms.items():
                key = tuple(a + b for a, b in zip(v, w))
                contrib = (s * t) * QScalar.q_power(pairing(v, w))
                prev = terms.get(key)
                u = contrib if prev is None else prev + contrib
                if u:
                    terms[key] = u
                else:
                    terms.pop(key, None)
        out = TorusElement.__new__(TorusElement)
        out.lattice, out.terms = self.lattice, terms
        return out

    def scale(self, c: "QScalar | int") -> "TorusElement":
        if isinstance(c, int):
            c = QScalar.integer(c)
        out = TorusElement.__new__(TorusElement)
        out.lattice = self.lattice
        out.terms = {}
        for v, s in self.terms.items():
            u = s * c
            if u:
                out.terms[v] = u
        return out

    def __pow__(self, n: int) -> "TorusElement":
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = TorusElement.one(self.lattice)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self) -> "TorusElement":
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the torus")
        (v, s), = self.terms.items()
        return TorusElement(self.lattice, {tuple(-a for a in v): s.inverse_monomial()})

    # -- views ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, coords) -> QScalar:
        vec = self.lattice.vector(coords) if not isinstance(coords, tuple) else coords
        return self.terms.get(vec, QScalar.zero())

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def map_lattice(self, lattice: SkewLattice, f) -> "TorusElement":
        """Monomial relabeling B_v -> B_f(v) into another lattice (no q-factors)."""
        terms: dict[tuple[int, ...], QScalar] = {}
        for v, s in self.terms.items():
            key = tuple(f(v))
            prev = terms.get(key)
            u = s if prev is None else prev + s
            if u:
                terms[key] = u
            else:
                terms.pop(key, None)
        return TorusElement(lattice, terms)

    def bar_terms(self) -> "TorusElement":
        return TorusElement(self.lattice, {v: s.bar() for v, s in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.lattice == other.lattice and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.lattice.labels, frozenset((v, s) for v, s in self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for v in sorted(self.terms):
            mono = "*".join(
                f"{lab}^{c}" if c != 1 else lab
                for lab, c in zip(self.lattice.labels, v)
                if c
            ) or "1"
            bits.append(f"({self.terms[v]})*B[{mono}]")
        return " + ".join(bits)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "terms": [
                {"coords": list(v), "scalar": self.terms[v].to_json()}
                for v in sorted(self.terms)
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "TorusElement":
        lattice = SkewLattice.from_json(data["lattice"])
        return TorusElement(
            lattice,
            {tuple(t["coords"]): QScalar.from_json(t["scalar"]) for t in data["terms"]},
        )


def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    return x * y


def weyl_product(lattice: SkewLattice, vectors: Iterable[Sequence[int]]) -> TorusElement:
    """Order-independent normalized product: just B of the sum of exponents."""
    total = list(lattice.zero())
    for v in vectors:
        vec = lattice.vector(v) if not isinstance(v, tuple) else v
        for i, a in enumerate(vec):
            total[i] += a
    return TorusElement.monomial(lattice, tuple(total))


def ordered_product(lattice: SkewLattice, vectors: Iterable[Sequence[int]]) -> TorusElement:
    """Plain ordered product B_v1 * B_v2 * ... (accumulates q-powers)."""
    result = TorusElement.one(lattice)
    for v in vectors:
        result = result * TorusElement.monomial(lattice, lattice.vector(v))
    return result


@dataclass(frozen=True)
class ChebyshevPoly:
    """Chebyshev polynomial data: coeffs[k] is the x^k coefficient."""

    kind: str  # "first" | "second"
    degree: int
    coeffs: tuple[int, ...]


def chebyshev_coeffs(kind: str, n: int) -> ChebyshevPoly:
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    if kind not in ("first", "second"):
        raise ValueError("kind must be 'first' or 'second'")
    p0 = [2] if kind == "first" else [1]
    p1 = [0, 1]
    if n == 0:
        return ChebyshevPoly(kind, 0, tuple(p0))
    if n == 1:
        return ChebyshevPoly(kind, 1, tuple(p1))
    for _ in range(n - 1):
        nxt = [0] + p1  # x * p1
        for i, c in enumerate(p0):
            nxt[i] -= c
        p0, p1 = p1, nxt
    return ChebyshevPoly(kind, n, tuple(p1))


def chebyshev_eval(kind: str, n: int, x: TorusElement) -> TorusElement:
    """T_n(x) or S_n(x) via the shared recurrence p_{k+2} = x*p_{k+1} - p_k."""
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    one = TorusElement.one(x.lattice)
    p0 = one.scale(2) if kind == "first" else one
    if kind not in ("first", "second"):
        raise ValueError("kind must be 'first' or 'second'")
    if n == 0:
        return p0
    p1 = x
    for _ in range(n - 1):
        p0, p1 = p1, x * p1 - p0
    return p1


def monomials_to_chebyshev_first(max_power: int) -> list[dict[int, int]]:
    """x^m = sum_k c[m][k] * T_k(x) with T_0 read as the constant 2.

    Returned as dicts {k: coeff} where k = 0 stands for the constant 1 (so the
    T_0-part is stored already multiplied out: x^m = c[m][0]*1 + sum_{k>0} ...).
    All coefficients are nonnegative (central binomials).
    """
    from math import comb

    table = []
    for m in range(max_power + 1):
        d: dict[int, int] = {}
        for j in range(m // 2 + 1):
            k = m - 2 * j
            c = comb(m, j)
            if k == 0:
                d[0] = d.get(0, 0) + c // 1  # j = m/2 term, count once
            else:
                d[k] = d.get(k, 0) + c
        table.append(d)
    return table


def _axis_membership(diff: tuple[int, ...], steps: dict[int, int]) -> bool:
    for i, d in enumerate(diff):
        if d == 0:
            continue
        s = steps.get(i)
        if s is None or d % s != 0 or d // s < 0:
            return False
    return True


def pointed_normalize(
    x: TorusElement,
    positive_directions: Iterable[int] | None = None,
    step: int = 1,
) -> tuple[TorusElement, tuple[int, ...]]:
    """Normalize a pointed element to lowest coefficient exactly 1.

    Finds the unique exponent m such that every term of x equals m plus a
    nonnegative integer multiple of step on each designated axis (all axes by
    default), then divides x by the q-power coefficient at m.  Raises
    NotPointed if no such m exists or the coefficient at m is not a q-power.
    """
    if x.is_zero():
        raise NotPointed("zero element has no lowest term")
    n = x.lattice.rank
    dirs = range(n) if positive_directions is None else sorted(set(positive_directions))
    steps = {i: step for i in dirs}
    vs = list(x.terms)
    m = list(vs[0])
    for v in vs[1:]:
        for i in range(n):
            if i in steps:
                m[i] = min(m[i], v[i]) if step > 0 else max(m[i], v[i])
            elif v[i] != m[i]:
                raise NotPointed(f"terms disagree on frozen coordinate {i}")
    mt = tuple(m)
    for v in vs:
        if not _axis_membership(tuple(a - b for a, b in zip(v, mt)), steps):
            raise NotPointed("support is not contained in the positive cone")
    c = x.terms.get(mt)
    if c is None:
        raise NotPointed("no term at the cone apex")
    if not c.is_q_power():
        raise NotPointed(f"lowest coefficient {c} is not a q-power")
    return x.scale(c.inverse_monomial()), mt
