"""Dirichlet characters mod a with exact evaluation as roots of unity.

Characters are represented by exponent tuples against a fixed cyclic
decomposition of the unit group (Z/aZ)*, and evaluated through a dense
discrete-log table, so every value is an exact ``UnitRoot``.  Sums of
character values are handled by ``RootSum``, an exact element of the
ring of integers of a cyclotomic field: equality and integrality are
decided by polynomial reduction, never by floating-point rounding.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError

PRINCIPAL = "principal"
QUADRATIC = "quadratic"
HIGHER_ORDER = "higher-order"


@dataclass(frozen=True)
class UnitRoot:
    """Exact root of unity e^(2*pi*i*num/den), or the absorbing ZERO.

    num/den is kept reduced with 0 <= num < den; ZERO (the value of a
    character off its units) is encoded as den == 0 and absorbs
    multiplication.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den == 0:
            if self.num != 0:
                raise ValueError("ZERO root must be UnitRoot(0, 0)")
            return
        if self.den < 0 or not 0 <= self.num < self.den:
            raise ValueError(f"exponent {self.num}/{self.den} not normalized")
        if gcd(self.num, self.den) != 1 and self.num != 0:
            raise ValueError(f"exponent {self.num}/{self.den} not reduced")

    @staticmethod
    def make(num: int, den: int) -> "UnitRoot":
        """Root with exponent num/den, reduced mod 1."""
        if den <= 0:
            raise ValueError(f"denominator must be positive, got {den}")
        num %= den
        g = gcd(num, den)
        if num == 0:
            return ONE
        return UnitRoot(num // g, den // g)

    @property
    def is_zero(self) -> bool:
        return self.den == 0

    @property
    def is_one(self) -> bool:
        return self.den == 1

    def __mul__(self, other: "UnitRoot") -> "UnitRoot":
        if self.is_zero or other.is_zero:
            return ZERO
        return UnitRoot.make(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    def __pow__(self, k: int) -> "UnitRoot":
        if self.is_zero:
            if k == 0:
                raise ValueError("ZERO**0 undefined")
            return ZERO
        return UnitRoot.make(self.num * k, self.den)

    def conjugate(self) -> "UnitRoot":
        if self.is_zero:
            return ZERO
        return UnitRoot.make(-self.num, self.den)

    def as_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def as_int(self) -> int:
        """The value as an integer, for ZERO / +1 / -1 roots only."""
        if self.is_zero:
            return 0
        if self.den == 1:
            return 1
        if self.den == 2:
            return -1
        raise ValueError(f"root of order {self.den} is not an integer")


ZERO = UnitRoot(0, 0)
ONE = UnitRoot(0, 1)
MINUS_ONE = UnitRoot(1, 2)


# ---------------------------------------------------------------------------
# Exact cyclotomic sums

@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    poly = [0] * (m + 1)
    poly[0], poly[m] = -1, 1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials, requiring a zero remainder."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q, r = divmod(num[i], lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[i - dd] = q
        if q:
            for j in range(dd + 1):
                num[i - dd + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("non-zero remainder in exact polynomial division")
    return out


def _poly_mod(coeffs: list[int], mod: tuple[int, ...]) -> list[int]:
    """Remainder of an integer polynomial modulo a monic modulus."""
    coeffs = list(coeffs)
    dd = len(mod) - 1
    for i in range(len(coeffs) - 1, dd - 1, -1):
        q = coeffs[i]
        if q:
            for j in range(dd + 1):
                coeffs[i - dd + j] -= q * mod[j]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class RootSum:
    """Exact integer combination of roots of unity.

    Stored as {exponent fraction (num, den) -> integer coefficient}.
    Ring operations are exact; ``as_integer`` reduces against the
    appropriate cyclotomic polynomial and raises ConsistencyError if the
    value is not a rational integer.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None):
        self.coeffs = coeffs or {}

    @staticmethod
    def zero() -> "RootSum":
        return RootSum()

    @staticmethod
    def integer(c: int) -> "RootSum":
        return RootSum({(0, 1): c} if c else {})

    @staticmethod
    def from_root(r: UnitRoot, coeff: int = 1) -> "RootSum":
        if r.is_zero or coeff == 0:
            return RootSum()
        return RootSum({(r.num, r.den): coeff})

    def add_root(self, r: UnitRoot, coeff: int = 1) -> None:
        """In-place accumulate coeff * r."""
        if r.is_zero or coeff == 0:
            return
        key = (r.num, r.den)
        c = self.coeffs.get(key, 0) + coeff
        if c:
            self.coeffs[key] = c
        else:
            del self.coeffs[key]

    def __add__(self, other: "RootSum") -> "RootSum":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return RootSum(out)

    def __sub__(self, other: "RootSum") -> "RootSum":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                del out[key]
        return RootSum(out)

    def __mul__(self, other: "RootSum") -> "RootSum":
        out: dict[tuple[int, int], int] = {}
        for (n1, d1), c1 in self.coeffs.items():
            for (n2, d2), c2 in other.coeffs.items():
                r = UnitRoot.make(n1 * d2 + n2 * d1, d1 * d2)
                key = (r.num, r.den)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return RootSum(out)

    def scaled(self, c: int) -> "RootSum":
        if c == 0:
            return RootSum()
        return RootSum({key: v * c for key, v in self.coeffs.items()})

    def conjugate(self) -> "RootSum":
        out = {}
        for (n, d), c in self.coeffs.items():
            out[((d - n) % d, d)] = c
        return RootSum(out)

    def _order(self) -> int:
        m = 1
        for _, d in self.coeffs:
            m = m * d // gcd(m, d)
        return m

    def _reduced(self) -> tuple[list[int], int]:
        """Canonical form: remainder mod the m-th cyclotomic polynomial."""
        m = self._order()
        vec = [0] * m
        for (n, d), c in self.coeffs.items():
            vec[n * (m // d)] += c
        return _poly_mod(vec, cyclotomic_polynomial(m)), m

    def is_zero(self) -> bool:
        return not self._reduced()[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RootSum.integer(other)
        if not isinstance(other, RootSum):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("RootSum is unhashable")

    def as_integer(self) -> int:
        """The exact integer value; ConsistencyError if not an integer."""
        red, _ = self._reduced()
        if not red:
            return 0
        if len(red) == 1:
            return red[0]
        raise ConsistencyError(
            f"cyclotomic sum is not a rational integer (residual {red})"
        )

    def as_complex(self) -> complex:
        return sum((UnitRoot(n, d).as_complex() * c
                    for (n, d), c in self.coeffs.items()), 0j)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RootSum(0)"
        parts = [f"{c}*e({n}/{d})" for (n, d), c in sorted(self.coeffs.items())]
        return "RootSum(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# The unit group (Z/aZ)* and its characters

class CharacterGroup:
    """The group of Dirichlet characters modulo ``a``.

    ``components`` lists (generator residue, cyclic order) pairs whose
    direct product is (Z/aZ)*; ``dlog`` maps every residue coprime to a
    to its exponent tuple against those generators.
    """

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        self.modulus = modulus
        self.components = _unit_group_generators(modulus)
        self.orders = tuple(order for _, order in self.components)
        self.phi = 1
        for order in self.orders:
            self.phi *= order
        self.dlog: dict[int, tuple[int, ...]] = {1 % modulus: (0,) * len(self.orders)}
        for i, (g, order) in enumerate(self.components):
            snapshot = list(self.dlog.items())
            gk = 1
            for k in range(1, order):
                gk = gk * g % modulus
                for r, exps in snapshot:
                    e = list(exps)
                    e[i] = k
                    self.dlog[r * gk % modulus] = tuple(e)
        if len(self.dlog) != self.phi:
            raise ConsistencyError(
                f"discrete log table mod {modulus} has {len(self.dlog)} entries, "
                f"expected phi = {self.phi}"
            )

    def characters(self) -> list["DirichletCharacter"]:
        """All phi(a) characters, principal first."""
        out = [DirichletCharacter(self, (0,) * len(self.orders))]
        for chi in _exponent_tuples(self.orders):
            if any(chi):
                out.append(DirichletCharacter(self, chi))
        return out

    def principal(self) -> "DirichletCharacter":
        return DirichletCharacter(self, (0,) * len(self.orders))

    def real_characters(self) -> list["DirichletCharacter"]:
        """Characters with chi^2 = chi0 (the principal one included)."""
        return [chi for chi in self.characters() if chi.kind != HIGHER_ORDER]

    def quadratic_characters(self) -> list["DirichletCharacter"]:
        return [chi for chi in self.characters() if chi.kind == QUADRATIC]

    def __repr__(self) -> str:
        return f"CharacterGroup(modulus={self.modulus}, orders={self.orders})"


def _exponent_tuples(orders: tuple[int, ...]):
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for tail in _exponent_tuples(orders[1:]):
            yield (head,) + tail


def _multiplicative_order(g: int, q: int, phi_q: int) -> int:
    order = phi_q
    for p, _ in _small_factor(phi_q):
        while order % p == 0 and pow(g, order // p, q) == 1:
            order //= p
    return order


def _small_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(q: int, phi_q: int) -> int:
    # brute-force search; moduli are small by the CLI guard (a <= 10^4)
    for g in range(2, q):
        if gcd(g, q) == 1 and _multiplicative_order(g, q, phi_q) == phi_q:
            return g
    raise ConsistencyError(f"no primitive root modulo {q}")


def _crt_lift(g: int, q: int, modulus: int) -> int:
    """Residue mod ``modulus`` that is g mod q and 1 mod modulus/q."""
    rest = modulus // q
    if rest == 1:
        return g % modulus
    inv_q = pow(q, -1, rest)
    # x = g + q * t with t chosen so x = 1 (mod rest)
    t = (1 - g) * inv_q % rest
    return (g + q * t) % modulus


def _unit_group_generators(modulus: int) -> tuple[tuple[int, int], ...]:
    """Cyclic decomposition of (Z/modulus Z)* as (generator, order) pairs."""
    comps = []
    for p, k in _small_factor(modulus):
        q = p**k
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                comps.append((_crt_lift(3, 4, modulus), 2))
            else:
                comps.append((_crt_lift(q - 1, q, modulus), 2))
                comps.append((_crt_lift(5, q, modulus), 2 ** (k - 2)))
        else:
            phi_q = q // p * (p - 1)
            g = _primitive_root(q, phi_q)
            comps.append((_crt_lift(g, q, modulus), phi_q))
    return tuple(comps)


@lru_cache(maxsize=256)
def character_group(a: int) -> CharacterGroup:
    """The (cached, immutable) character group modulo a."""
    return CharacterGroup(a)


class DirichletCharacter:
    """One character, fixed by its exponent tuple against the group's generators."""

    __slots__ = ("group", "exponents", "_values")

    def __init__(self, group: CharacterGroup, exponents: tuple[int, ...]):
        if len(exponents) != len(group.orders):
            raise ValueError("exponent tuple does not match group components")
        for e, order in zip(exponents, group.orders):
            if not 0 <= e < order:
                raise ValueError(f"exponent {e} out of range for order {order}")
        self.group = group
        self.exponents = exponents
        self._values: tuple[UnitRoot, ...] | None = None

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def label(self) -> str:
        exps = ".".join(map(str, self.exponents)) or "0"
        return f"chi{self.modulus}.{exps}"

    def value_table(self) -> tuple[UnitRoot, ...]:
        """Dense residue -> value table (built once, O(1) lookups after)."""
        if self._values is None:
            a = self.modulus
            vals = [ZERO] * a
            for r, ks in self.group.dlog.items():
                num, den = 0, 1
                for e, k, order in zip(self.exponents, ks, self.group.orders):
                    num = num * order + e * k * den
                    den *= order
                vals[r] = UnitRoot.make(num, den)
            if a == 1:
                vals = [ONE]
            self._values = tuple(vals)
        return self._values

    def __call__(self, n: int) -> UnitRoot:
        return self.value_table()[n % self.modulus]

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def kind(self) -> str:
        """principal / quadratic / higher-order (see ``classify``)."""
        if self.is_principal:
            return PRINCIPAL
        if all(2 * e % order == 0 for e, order in zip(self.exponents, self.group.orders)):
            return QUADRATIC
        return HIGHER_ORDER

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple((-e) % order for e, order in zip(self.exponents, self.group.orders))
        return DirichletCharacter(self.group, exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError(
                f"cannot multiply characters mod {self.modulus} and mod {other.modulus}"
            )
        exps = tuple((e1 + e2) % order for e1, e2, order
                     in zip(self.exponents, other.exponents, self.group.orders))
        return DirichletCharacter(self.group, exps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def sign_table(self) -> tuple[int, ...]:
        """Residue -> value in {-1, 0, 1}; only for real-valued characters."""
        if self.kind == HIGHER_ORDER:
            raise ValueError(f"{self.label} takes non-real values")
        return tuple(v.as_int() for v in self.value_table())

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.label}, {self.kind})"


def all_characters(group: CharacterGroup) -> list[DirichletCharacter]:
    return group.characters()


def evaluate(chi: DirichletCharacter, n: int) -> UnitRoot:
    return chi(n)


def classify(chi: DirichletCharacter) -> str:
    return chi.kind


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.conjugate()


def multiply(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    return chi1 * chi2
