"""Exact Laurent polynomials in q^(1/2) over the integers.

Every coefficient in the library lives in Z[q^(+-1/2)].  Exponents are stored
as integer counts of q^(1/2), so the monomial q^(k/2) has key k.  The second
quantum parameter v = q^(-2) is never a separate symbol: a polynomial written
in v is materialized by scaling all half-exponents by -4.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class QScalar:
    """Element of Z[q^(+-1/2)], stored as {half_exponent: nonzero int}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms is None:
            self.terms: dict[int, int] = {}
        else:
            self.terms = {int(e): int(c) for e, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "QScalar":
        return QScalar()

    @staticmethod
    def one() -> "QScalar":
        return QScalar({0: 1})

    @staticmethod
    def integer(n: int) -> "QScalar":
        return QScalar({0: n})

    @staticmethod
    def q_power(half_exponent: int, coeff: int = 1) -> "QScalar":
        """coeff * q^(half_exponent / 2)."""
        return QScalar({half_exponent: coeff})

    @staticmethod
    def v_power(v_exponent: int, coeff: int = 1) -> "QScalar":
        """coeff * v^v_exponent with v = q^(-2)."""
        return QScalar({-4 * v_exponent: coeff})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "QScalar") -> "QScalar":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = QScalar.__new__(QScalar)
        out.terms = terms
        return out

    def __neg__(self) -> "QScalar":
        out = QScalar.__new__(QScalar)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "QScalar") -> "QScalar":
        return self + (-other)

    def __mul__(self, other: "QScalar | int") -> "QScalar":
        if isinstance(other, int):
            if other == 0:
                return QScalar()
            out = QScalar.__new__(QScalar)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        terms: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = QScalar.__new__(QScalar)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            inv = self.inverse_monomial()
            return inv ** (-n)
        result = QScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse_monomial(self) -> "QScalar":
        """Inverse, defined only for +-q^(k/2) monomials."""
        if len(self.terms) != 1:
            raise ValueError(f"not an invertible monomial: {self}")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise ValueError(f"not an invertible monomial: {self}")
        return QScalar({-e: c})

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def is_q_power(self) -> bool:
        """True iff the scalar is q^(k/2) with coefficient exactly 1."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    def is_nonnegative(self) -> bool:
        """True iff all integer coefficients are >= 0."""
        return all(c >= 0 for c in self.terms.values())

    def coefficient(self, half_exponent: int) -> int:
        return self.terms.get(half_exponent, 0)

    def half_exponents(self) -> Iterator[int]:
        return iter(sorted(self.terms))

    def scale_exponents(self, factor: int) -> "QScalar":
        """Substitute q^(1/2) -> q^(factor/2); used for the v = q^(-2) view."""
        return QScalar({e * factor: c for e, c in self.terms.items()})

    def bar(self) -> "QScalar":
        """The bar involution q^(1/2) -> q^(-1/2)."""
        return self.scale_exponents(-1)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            else:
                exp = f"q^{e // 2}" if e % 2 == 0 else f"q^{e}/2".replace("/", "/")
                exp = f"q^({e}/2)" if e % 2 else (f"q^{e // 2}" if e != 2 else "q")
                if c == 1:
                    bits.append(exp)
                elif c == -1:
                    bits.append(f"-{exp}")
                else:
                    bits.append(f"{c}*{exp}")
        return " + ".join(bits).replace("+ -", "- ")

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list[list[int]]:
        return [[e, self.terms[e]] for e in sorted(self.terms)]

    @staticmethod
    def from_json(data: Iterable[Iterable[int]]) -> "QScalar":
        return QScalar({int(e): int(c) for e, c in data})


ZERO = QScalar.zero()
ONE = QScalar.one()
