"""
COLOR ALGEBRA ENGINE - CYCLOTOMIC SCALARS
=========================================
Exact arithmetic in Q(zeta_L), reduced modulo the L-th cyclotomic polynomial.

Every structure constant, commutation-factor value and matrix entry in the
engine is a CycloScalar. Coefficients are Fractions over the power basis
1, z, ..., z^(phi(L)-1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from errors import DivisionByZero, MixedRootOrder

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# Integer polynomial helpers (coefficients low -> high)
# ---------------------------------------------------------------------------

def _trim(poly: List) -> List:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _exact_monic_division(dividend: Sequence[int], divisor: Sequence[int]) -> List[int]:
    """Quotient of dividend by a monic divisor; the remainder must vanish"""
    rem = list(dividend)
    dd = len(divisor) - 1
    quotient = [0] * (len(rem) - dd)
    for shift in range(len(rem) - 1 - dd, -1, -1):
        c = rem[shift + dd]
        quotient[shift] = c
        if c:
            for k, d in enumerate(divisor):
                rem[shift + k] -= c * d
    assert not any(rem[:dd]), "cyclotomic division left a remainder"
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> Tuple[int, ...]:
    """
    Monic integer polynomial Phi_L, coefficients from the constant term up.

    x^L - 1 divided by Phi_d for every proper divisor d of L.
    """
    if L < 1:
        raise ValueError(f"root order must be >= 1, got {L}")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in range(1, L):
        if L % d == 0:
            poly = _exact_monic_division(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(L: int) -> int:
    return len(cyclotomic_polynomial(L)) - 1


@lru_cache(maxsize=None)
def _power_table(L: int) -> Tuple[Tuple[int, ...], ...]:
    """Reduced coefficient vectors of z^0 .. z^(L-1)"""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    current = [1] + [0] * (deg - 1)
    table = []
    for _ in range(L):
        table.append(tuple(current))
        shifted = [0] + current
        top = shifted[deg]
        if top:
            for k in range(deg):
                shifted[k] -= top * phi[k]
        current = shifted[:deg]
    return tuple(table)


def _poly_divmod(num: List[Fraction], den: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    num = _trim(list(num))
    den = _trim(list(den))
    if len(num) < len(den):
        return [Fraction(0)], num
    lead = den[-1]
    quotient = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1] / lead
        quotient[shift] = c
        if c:
            for k, d in enumerate(den):
                rem[shift + k] -= c * d
    rem = _trim(rem[:len(den) - 1] or [Fraction(0)])
    return _trim(quotient), rem


def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


# ---------------------------------------------------------------------------
# CycloScalar
# ---------------------------------------------------------------------------

class CycloScalar:
    """Element of Q(zeta_L) in reduced power-basis form"""

    __slots__ = ("root_order", "coeffs")

    def __init__(self, root_order: int, coeffs: Sequence[Number]):
        expected = euler_phi(root_order)
        if len(coeffs) != expected:
            raise ValueError(
                f"Q(zeta_{root_order}) needs {expected} coefficients, got {len(coeffs)}"
            )
        self.root_order = root_order
        self.coeffs: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)

    # Constructors
    @classmethod
    def _raw(cls, root_order: int, coeffs: Tuple[Fraction, ...]) -> CycloScalar:
        obj = cls.__new__(cls)
        obj.root_order = root_order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, L: int) -> CycloScalar:
        return cls._raw(L, (Fraction(0),) * euler_phi(L))

    @classmethod
    def one(cls, L: int) -> CycloScalar:
        return cls.rational(L, 1)

    @classmethod
    def rational(cls, L: int, value: Number) -> CycloScalar:
        coeffs = [Fraction(0)] * euler_phi(L)
        coeffs[0] = Fraction(value)
        return cls._raw(L, tuple(coeffs))

    @classmethod
    def from_polynomial(cls, L: int, poly: Iterable[Number]) -> CycloScalar:
        """Reduce an arbitrary polynomial in z modulo Phi_L"""
        table = _power_table(L)
        out = [Fraction(0)] * euler_phi(L)
        for k, c in enumerate(poly):
            if c:
                c = Fraction(c)
                for i, t in enumerate(table[k % L]):
                    if t:
                        out[i] += c * t
        return cls._raw(L, tuple(out))

    @classmethod
    def from_terms(cls, L: int, terms: Iterable[Tuple[Number, int]]) -> CycloScalar:
        """Sum of value * z^power pairs"""
        table = _power_table(L)
        out = [Fraction(0)] * euler_phi(L)
        for value, power in terms:
            value = Fraction(value)
            if value:
                for i, t in enumerate(table[power % L]):
                    if t:
                        out[i] += value * t
        return cls._raw(L, tuple(out))

    # Predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # Coercion
    def _coerce(self, other) -> Optional[CycloScalar]:
        if isinstance(other, CycloScalar):
            if other.root_order != self.root_order:
                raise MixedRootOrder(
                    f"cannot combine Q(zeta_{self.root_order}) with Q(zeta_{other.root_order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloScalar.rational(self.root_order, other)
        return None

    # Field operations
    def __add__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloScalar._raw(
            self.root_order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self) -> CycloScalar:
        return CycloScalar._raw(self.root_order, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloScalar._raw(
            self.root_order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> CycloScalar:
        if isinstance(other, (int, Fraction)):
            return CycloScalar._raw(self.root_order, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return CycloScalar._raw(self.root_order, (a[0] * b[0],))
        raw = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CycloScalar.from_polynomial(self.root_order, raw)

    __rmul__ = __mul__

    def inverse(self) -> CycloScalar:
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in Q(zeta_{self.root_order})")
        if len(self.coeffs) == 1:
            return CycloScalar._raw(self.root_order, (1 / self.coeffs[0],))
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.root_order)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant since Phi_L is irreducible
        scale = 1 / r0[0]
        return CycloScalar.from_polynomial(self.root_order, [c * scale for c in s0])

    def __truediv__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycloScalar:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> CycloScalar:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = CycloScalar.one(self.root_order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, CycloScalar):
            return self.root_order == other.root_order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.root_order, self.coeffs))

    # Field embedding
    def lift(self, new_order: int) -> CycloScalar:
        """Same element inside Q(zeta_new_order), via z_L -> z_new^(new/L)"""
        if new_order == self.root_order:
            return self
        if new_order % self.root_order:
            raise MixedRootOrder(
                f"Q(zeta_{self.root_order}) does not embed in Q(zeta_{new_order})"
            )
        step = new_order // self.root_order
        return CycloScalar.from_terms(
            new_order, ((c, k * step) for k, c in enumerate(self.coeffs) if c)
        )

    # Serialization
    def to_terms(self) -> List[Dict[str, int]]:
        return [
            {"num": c.numerator, "den": c.denominator, "zeta_pow": k}
            for k, c in enumerate(self.coeffs) if c
        ]

    def __repr__(self) -> str:
        return f"CycloScalar({self.root_order}, {str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                power = f"z{self.root_order}" + (f"^{k}" if k > 1 else "")
                if c == 1:
                    parts.append(power)
                elif c == -1:
                    parts.append(f"-{power}")
                else:
                    parts.append(f"{c}*{power}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def root_of_unity(L: int, k: int) -> CycloScalar:
    """zeta_L^(k mod L) in reduced form"""
    if L < 1:
        raise ValueError(f"root order must be >= 1, got {L}")
    return CycloScalar._raw(L, tuple(Fraction(t) for t in _power_table(L)[k % L]))


def scalar_arithmetic(op: str, x: CycloScalar, y: Optional[CycloScalar] = None):
    """Dispatch one of add, sub, mul, neg, inv, eq, is_zero"""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "eq":
        if y.root_order != x.root_order:
            raise MixedRootOrder(
                f"cannot compare Q(zeta_{x.root_order}) with Q(zeta_{y.root_order})"
            )
        return x == y
    if op == "is_zero":
        return x.is_zero()
    raise ValueError(f"unknown scalar operation: {op}")
