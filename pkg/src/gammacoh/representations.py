"""Coefficient modules: symmetric powers of the standard representation and its dual.

A weight-k polynomial is stored as its k+1 coefficients in descending order
of the first variable: ``x^k, x^(k-1) y, ..., y^k`` (or ``ex``/``ey``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .linalg import format_rational, rational
from .modular import (IntMatrix2, THETA_COSET_REPS, check_coset_reps, theta_coset_index)

STANDARD = "standard"
DUAL = "dual"
VARIANTS = (STANDARD, DUAL)

_VARS = {STANDARD: ("x", "y"), DUAL: ("ex", "ey")}


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return variant


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _linear_power(u: int, v: int, e: int) -> list[int]:
    # (u X + v Y)^e, descending in X
    return [comb(e, t) * u ** (e - t) * v ** t for t in range(e + 1)]


@lru_cache(maxsize=None)
def _substitution_matrix(a: int, b: int, c: int, d: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of f(X, Y) -> f(aX + cY, bX + dY) on degree-k coefficient vectors."""
    cols = []
    for t in range(k + 1):
        i, j = k - t, t
        cols.append(_poly_mul(_linear_power(a, c, i), _linear_power(b, d, j)))
    return tuple(tuple(cols[t][r] for t in range(k + 1)) for r in range(k + 1))


def action_matrix(g: IntMatrix2, k: int, variant: str) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of ``g`` acting on degree-k polynomials (column convention)."""
    if _check_variant(variant) == STANDARD:
        return _substitution_matrix(g.a, g.b, g.c, g.d, k)
    # e_x -> d e_x - b e_y, e_y -> -c e_x + a e_y
    return _substitution_matrix(g.d, -g.c, -g.b, g.a, k)


@dataclass(frozen=True)
class HomogeneousPoly:
    degree: int
    variant: str
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        _check_variant(self.variant)
        coeffs = tuple(rational(x) for x in self.coefficients)
        if len(coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} needs {self.degree + 1} coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, degree: int, variant: str) -> HomogeneousPoly:
        return cls(degree, variant, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, i: int, j: int, variant: str, coeff=1) -> HomogeneousPoly:
        """``coeff * X^i Y^j``."""
        k = i + j
        coeffs = [0] * (k + 1)
        coeffs[k - i] = coeff
        return cls(k, variant, tuple(coeffs))

    @classmethod
    def linear_power(cls, u, v, e: int, variant: str) -> HomogeneousPoly:
        """``(u X + v Y)^e``."""
        u, v = rational(u), rational(v)
        return cls(e, variant, tuple(comb(e, t) * u ** (e - t) * v ** t for t in range(e + 1)))

    def __add__(self, o: HomogeneousPoly) -> HomogeneousPoly:
        self._compatible(o)
        return HomogeneousPoly(self.degree, self.variant,
                               tuple(a + b for a, b in zip(self.coefficients, o.coefficients)))

    def __sub__(self, o: HomogeneousPoly) -> HomogeneousPoly:
        return self + (-o)

    def __neg__(self) -> HomogeneousPoly:
        return self.scale(-1)

    def scale(self, s) -> HomogeneousPoly:
        s = rational(s)
        return HomogeneousPoly(self.degree, self.variant, tuple(s * a for a in self.coefficients))

    def __mul__(self, o: HomogeneousPoly) -> HomogeneousPoly:
        if self.variant != o.variant:
            raise ValueError("cannot multiply polynomials in different variables")
        out = [Fraction(0)] * (self.degree + o.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(o.coefficients):
                    out[i + j] += a * b
        return HomogeneousPoly(self.degree + o.degree, self.variant, tuple(out))

    def __pow__(self, m: int) -> HomogeneousPoly:
        out = HomogeneousPoly(0, self.variant, (1,))
        for _ in range(m):
            out = out * self
        return out

    def _compatible(self, o: HomogeneousPoly):
        if (self.degree, self.variant) != (o.degree, o.variant):
            raise ValueError(f"module mismatch: ({self.degree}, {self.variant}) vs ({o.degree}, {o.variant})")

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def terms(self):
        """Nonzero terms as (exponent of X, exponent of Y, coefficient)."""
        k = self.degree
        for t, c in enumerate(self.coefficients):
            if c:
                yield k - t, t, c

    def to_json(self) -> dict[str, str]:
        X, Y = _VARS[self.variant]
        out = {}
        for i, j, c in self.terms():
            parts = ([f"{X}^{i}"] if i else []) + ([f"{Y}^{j}"] if j else [])
            out["*".join(parts) or "1"] = format_rational(c)
        return out

    @classmethod
    def from_json(cls, data: dict[str, str], degree: int, variant: str) -> HomogeneousPoly:
        X, Y = _VARS[_check_variant(variant)]
        coeffs = [Fraction(0)] * (degree + 1)
        for key, value in data.items():
            i = j = 0
            if key != "1":
                for part in key.split("*"):
                    name, _, e = part.partition("^")
                    e = int(e or 1)
                    if name == X:
                        i += e
                    elif name == Y:
                        j += e
                    else:
                        raise ValueError(f"unknown variable {name!r} in {key!r}")
            if i + j != degree:
                raise ValueError(f"monomial {key!r} is not of degree {degree}")
            coeffs[degree - i] += rational(value)
        return cls(degree, variant, tuple(coeffs))

    def __str__(self):
        X, Y = _VARS[self.variant]
        return _format_terms(((c, _monomial_text([(X, i), (Y, j)])) for i, j, c in self.terms()))


def _monomial_text(powers) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in powers if e]
    return "*".join(parts)


def _format_terms(terms) -> str:
    out = ""
    for c, mono in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not out:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out or "0"


def act(g: IntMatrix2, f: HomogeneousPoly) -> HomogeneousPoly:
    m = action_matrix(g, f.degree, f.variant)
    v = f.coefficients
    return HomogeneousPoly(f.degree, f.variant,
                           tuple(sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in m))


def s_gamma(g: IntMatrix2) -> HomogeneousPoly:
    """``b x^2 + (d - a) x y - c y^2``; fixed by ``g``."""
    return HomogeneousPoly(2, STANDARD, (g.b, g.d - g.a, -g.c))


def pairing_weight(k: int, i: int) -> Fraction:
    """``<ex^i ey^(k-i), x^i y^(k-i)> = i! (k-i)! / k!``."""
    return Fraction(factorial(i) * factorial(k - i), factorial(k))


def pairing(w: HomogeneousPoly, v: HomogeneousPoly) -> Fraction:
    """Invariant pairing of a dual polynomial with a standard one of equal degree."""
    if w.variant != DUAL or v.variant != STANDARD:
        raise ValueError("pairing takes (dual, standard)")
    if w.degree != v.degree:
        raise ValueError(f"degree mismatch: {w.degree} vs {v.degree}")
    k = w.degree
    return sum((a * b / comb(k, k - t) for t, (a, b) in enumerate(zip(w.coefficients, v.coefficients))),
               Fraction(0))


def gram_matrix(k: int) -> list[list[Fraction]]:
    return [[pairing(HomogeneousPoly.monomial(k - s, s, DUAL), HomogeneousPoly.monomial(k - t, t, STANDARD))
             for t in range(k + 1)] for s in range(k + 1)]


# -- one-variable specialisations -------------------------------------------------

@dataclass(frozen=True)
class OneVariablePoly:
    """``coefficient * var^degree``."""

    var: str
    degree: int
    coefficient: Fraction

    def is_zero(self) -> bool:
        return self.coefficient == 0

    def __str__(self):
        return _format_terms([(self.coefficient, _monomial_text([(self.var, self.degree)]))]
                             if self.coefficient else [])

    def to_json(self) -> dict[str, str]:
        if not self.coefficient:
            return {}
        key = f"{self.var}^{self.degree}" if self.degree else "1"
        return {key: format_rational(self.coefficient)}


def delta_star(f: HomogeneousPoly) -> OneVariablePoly:
    """Diagonal specialisation ``ex, ey -> e``."""
    if f.variant != DUAL:
        raise ValueError("delta_star is defined on dual polynomials")
    return OneVariablePoly("e", f.degree, sum(f.coefficients, Fraction(0)))


def pr_x(f: HomogeneousPoly) -> OneVariablePoly:
    """Projection ``ey -> 0``."""
    if f.variant != DUAL:
        raise ValueError("pr_x is defined on dual polynomials")
    return OneVariablePoly("ex", f.degree, f.coefficients[0])


# -- modules ---------------------------------------------------------------------

class SymPower:
    """``Sym^k`` of the standard representation or of its dual."""

    def __init__(self, degree: int, variant: str):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.degree = degree
        self.variant = _check_variant(variant)
        self.dim = degree + 1

    def matrix(self, g: IntMatrix2):
        return action_matrix(g, self.degree, self.variant)

    def vector(self, f: HomogeneousPoly) -> tuple[Fraction, ...]:
        if (f.degree, f.variant) != (self.degree, self.variant):
            raise ValueError("polynomial does not live in this module")
        return f.coefficients

    def element(self, v: Sequence) -> HomogeneousPoly:
        return HomogeneousPoly(self.degree, self.variant, tuple(v))

    def __eq__(self, o):
        return isinstance(o, SymPower) and (o.degree, o.variant) == (self.degree, self.variant)

    def __hash__(self):
        return hash((self.degree, self.variant))

    def __repr__(self):
        return f"SymPower({self.degree}, {self.variant!r})"


@dataclass(frozen=True)
class CoinducedElement:
    base: SymPower
    components: tuple[HomogeneousPoly, ...]


class Coinduced:
    """Coinduction of ``Sym^k`` from the theta group to SL(2, Z).

    Functions F with ``F(h g) = h F(g)`` for h in theta, recorded on right
    coset representatives; ``(g F)(x) = F(x g)``. Writing ``r_i g = h r_j``,
    block (i, j) of the action matrix is the action of ``h``.
    """

    def __init__(self, base: SymPower, reps: Sequence[IntMatrix2] = THETA_COSET_REPS):
        reps = tuple(reps)
        check_coset_reps(reps)
        self.base = base
        self.reps = reps
        self.degree = base.degree
        self.variant = base.variant
        self.dim = 3 * base.dim
        self._cache: dict[IntMatrix2, tuple] = {}

    def matrix(self, g: IntMatrix2):
        if g in self._cache:
            return self._cache[g]
        n = self.base.dim
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, r in enumerate(self.reps):
            x = r @ g
            j = theta_coset_index(x, self.reps)
            h = x @ self.reps[j].inverse()
            block = self.base.matrix(h)
            for s in range(n):
                row = out[i * n + s]
                row[j * n:(j + 1) * n] = block[s]
        result = tuple(tuple(r) for r in out)
        self._cache[g] = result
        return result

    def act(self, g: IntMatrix2, f: CoinducedElement) -> CoinducedElement:
        v = [c for comp in f.components for c in comp.coefficients]
        m = self.matrix(g)
        w = [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in m]
        n = self.base.dim
        return CoinducedElement(self.base, tuple(self.base.element(w[i * n:(i + 1) * n]) for i in range(3)))

    def __repr__(self):
        return f"Coinduced({self.base!r})"


def coinduce(degree: int, variant: str, coset_reps: Sequence[IntMatrix2] = THETA_COSET_REPS) -> Coinduced:
    return Coinduced(SymPower(degree, variant), coset_reps)
