"""Exact scalars over Q and over cyclotomic extensions Q(zeta_m).

A cyclotomic element is stored by its coefficient vector in the power basis
of Q[x]/Phi_m(x), so it is a tuple of phi(m) Fractions.  Rational scalars are
the m=None case with a single coefficient.  Arithmetic is exact and results
are kept reduced mod Phi_m, which makes equality a tuple comparison.

There is deliberately no factorization machinery and no automatic compositum:
mixing two cyclotomic orders is an error, while plain rationals embed into
any cyclotomic field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


class FieldError(ValueError):
    """Incompatible field specs (e.g. two different cyclotomic orders)."""


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = num[:]
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        factor = num[shift + len(den) - 1] * inv_lead
        if factor == 0:
            continue
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
    return _poly_trim(quot), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_m (lowest degree first), computed by the
    recursive division x^m - 1 = prod_{d | m} Phi_d."""
    if m < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@dataclass(frozen=True)
class Field:
    """Field spec: rational (m=None) or the cyclotomic field Q(zeta_m)."""

    m: int | None = None

    @staticmethod
    def rational() -> "Field":
        return Field(None)

    @staticmethod
    def cyclotomic(m: int) -> "Field":
        if m < 2:
            return Field(None)
        return Field(m)  # m=2 is a degree-1 field with zeta = -1

    @property
    def degree(self) -> int:
        return 1 if self.m is None else euler_phi(self.m)

    @property
    def is_rational(self) -> bool:
        return self.m is None

    def zero(self) -> "Scalar":
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "Scalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def scalar(self, value: RationalLike | str | "Scalar") -> "Scalar":
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            if value.field.is_rational:
                return self.scalar(value.coeffs[0])
            raise FieldError(f"cannot coerce {value.field} into {self}")
        if isinstance(value, str):
            value = Fraction(value)
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return Scalar(self, tuple(coeffs))

    def zeta(self) -> "Scalar":
        """The generator zeta_m (for m=3 this is the cube root omega)."""
        if self.m is None:
            raise FieldError("rational field has no root of unity generator")
        coeffs = [Fraction(0)] * self.degree
        if self.degree == 1:
            # Q(zeta_2) = Q with zeta = -1
            coeffs[0] = Fraction(-1)
        else:
            coeffs[1] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable[RationalLike | str]) -> "Scalar":
        vec = tuple(Fraction(c) for c in coeffs)
        if len(vec) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(vec)}")
        return Scalar(self, vec)

    def random_scalar(self, rng, bound: int = 97) -> "Scalar":
        """Random small-height element: each power-basis coefficient is a
        fraction with numerator and denominator bounded by `bound`."""
        coeffs = tuple(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            for _ in range(self.degree)
        )
        return Scalar(self, coeffs)

    def __str__(self) -> str:
        return "Q" if self.m is None else f"Q(zeta_{self.m})"


QQ = Field.rational()


def _merge_fields(a: Field, b: Field) -> Field:
    if a == b:
        return a
    if a.is_rational:
        return b
    if b.is_rational:
        return a
    raise FieldError(f"incompatible cyclotomic orders {a.m} and {b.m}")


@lru_cache(maxsize=None)
def _reduction_rows(m: int, extra: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^(deg+i) mod Phi_m for i = 0..extra-1, as power-basis rows."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    # x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^(deg-1))
    cur = [-c for c in phi[:-1]]
    for _ in range(extra):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top != 0:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


class Scalar:
    """Immutable exact field element.  Supports +, -, *, /, ==, hash.

    Ints and Fractions coerce from either side, and rational Scalars embed
    into cyclotomic ones.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Scalar is immutable")

    # -- coercion ---------------------------------------------------------

    def _pair(self, other) -> tuple["Scalar", "Scalar"] | None:
        if isinstance(other, Scalar):
            if self.field == other.field:
                return self, other
            field = _merge_fields(self.field, other.field)
            left = self if self.field == field else field.scalar(self)
            right = other if other.field == field else field.scalar(other)
            return left, right
        if isinstance(other, (int, Fraction)):
            return self, self.field.scalar(other)
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        deg = a.field.degree
        if deg == 1:
            return Scalar(a.field, (a.coeffs[0] * b.coeffs[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y != 0:
                    prod[i + j] += x * y
        out = prod[:deg]
        if any(c != 0 for c in prod[deg:]):
            rows = _reduction_rows(a.field.m, deg - 1)
            for i, c in enumerate(prod[deg:]):
                if c != 0:
                    row = rows[i]
                    for j in range(deg):
                        out[j] += c * row[j]
        return Scalar(a.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.field.degree == 1:
            return Scalar(self.field, (1 / self.coeffs[0],))
        # extended Euclid in Q[x] against Phi_m
        phi = list(cyclotomic_polynomial(self.field.m))
        a = _poly_trim(list(self.coeffs))
        r0, r1 = phi, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            # s_next = s0 - q*s1
            s = list(s0)
            for i, qc in enumerate(q):
                if qc == 0:
                    continue
                for j, sc in enumerate(s1):
                    k = i + j
                    while len(s) <= k:
                        s.append(Fraction(0))
                    s[k] -= qc * sc
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s)
            if len(r0) == 1:
                break
        # now r0 is a nonzero constant: inverse = s0 / r0
        inv_const = 1 / r0[0]
        coeffs = [c * inv_const for c in s0]
        coeffs += [Fraction(0)] * (self.field.degree - len(coeffs))
        return Scalar(self.field, tuple(coeffs[: self.field.degree]))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational_value(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    # -- serialization ------------------------------------------------

    def to_json(self):
        if self.field.is_rational:
            return str(self.coeffs[0])
        return {"m": self.field.m, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "Scalar":
        if isinstance(obj, str):
            return QQ.scalar(Fraction(obj))
        field = Field.cyclotomic(int(obj["m"]))
        return field.from_coeffs(obj["coeffs"])

    def __repr__(self):
        if self.field.is_rational:
            return str(self.coeffs[0])
        sym = "w" if self.field.m == 3 else f"z{self.field.m}"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = sym if i == 1 else f"{sym}^{i}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")


def parse_field(text: str) -> Field:
    """Parse a CLI field spec: "q" for rationals, "cyclo:m" for Q(zeta_m)."""
    if text in ("q", "Q", "rational"):
        return Field.rational()
    match = re.fullmatch(r"cyclo:(\d+)", text)
    if match:
        return Field.cyclotomic(int(match.group(1)))
    raise ValueError(f"unknown field spec {text!r} (use 'q' or 'cyclo:m')")
