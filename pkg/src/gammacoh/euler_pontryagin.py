"""Polynomials in Euler classes e_1..e_d and Pontryagin classes p_{j,i}.

Variables are ordered ``e_1, ..., e_d`` followed by ``p_{j,i}`` for
``j = 1..n//2`` (outer) and ``i = 1..d`` (inner). ``e_i`` has degree n+1 and
``p_{j,i}`` degree 4j.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .linalg import determinant, format_rational, rational

Exponents = tuple[int, ...]


class EulerPontryaginPoly:
    __slots__ = ("d", "n", "terms")

    def __init__(self, d: int, n: int, terms: Mapping[Exponents, object] | None = None):
        if n < 1 or n % 2 == 0:
            raise ValueError("n must be an odd natural number")
        self.d = d
        self.n = n
        nv = self.nvars
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nv or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono}")
            c = rational(c)
            if c:
                clean[mono] = c
        self.terms = clean

    @property
    def npont(self) -> int:
        return self.n // 2

    @property
    def nvars(self) -> int:
        return self.d * (1 + self.npont)

    def p_index(self, j: int, i: int) -> int:
        """Position of p_{j,i} (1-based j and i)."""
        return self.d + (j - 1) * self.d + (i - 1)

    @classmethod
    def euler(cls, d: int, n: int, i: int) -> EulerPontryaginPoly:
        mono = [0] * (d * (1 + n // 2))
        mono[i - 1] = 1
        return cls(d, n, {tuple(mono): 1})

    @classmethod
    def pontryagin(cls, d: int, n: int, j: int, i: int) -> EulerPontryaginPoly:
        out = cls(d, n)
        mono = [0] * out.nvars
        mono[out.p_index(j, i)] = 1
        return cls(d, n, {tuple(mono): 1})

    @classmethod
    def constant(cls, d: int, n: int, c=1) -> EulerPontryaginPoly:
        return cls(d, n, {(0,) * (d * (1 + n // 2)): c})

    def _same_ring(self, o: EulerPontryaginPoly):
        if (self.d, self.n) != (o.d, o.n):
            raise ValueError("polynomials live in different rings")

    def __add__(self, o):
        self._same_ring(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return EulerPontryaginPoly(self.d, self.n, out)

    def __neg__(self):
        return EulerPontryaginPoly(self.d, self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, EulerPontryaginPoly):
            s = rational(o)
            return EulerPontryaginPoly(self.d, self.n, {m: s * c for m, c in self.terms.items()})
        self._same_ring(o)
        out: dict[Exponents, Fraction] = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                out[tuple(a + b for a, b in zip(m1, m2))] += c1 * c2
        return EulerPontryaginPoly(self.d, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = EulerPontryaginPoly.constant(self.d, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        return (isinstance(o, EulerPontryaginPoly) and (self.d, self.n) == (o.d, o.n)
                and self.terms == o.terms)

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.terms.items())))

    def degree_of(self, mono: Exponents) -> int:
        d = self.d
        deg = (self.n + 1) * sum(mono[:d])
        for j in range(1, self.npont + 1):
            deg += 4 * j * sum(mono[self.p_index(j, 1):self.p_index(j, 1) + d])
        return deg

    def truncate(self, cap: int | None = None) -> EulerPontryaginPoly:
        """Drop monomials of total degree above ``cap`` (default 4(n+1))."""
        if cap is None:
            cap = 4 * (self.n + 1)
        return EulerPontryaginPoly(self.d, self.n,
                                   {m: c for m, c in self.terms.items() if self.degree_of(m) <= cap})

    def variable_names(self) -> list[str]:
        names = [f"e{i}" for i in range(1, self.d + 1)]
        names += [f"p{j}_{i}" for j in range(1, self.npont + 1) for i in range(1, self.d + 1)]
        return names

    def to_json(self) -> dict[str, str]:
        names = self.variable_names()
        out = {}
        for m in sorted(self.terms, reverse=True):
            key = "*".join(f"{v}^{e}" for v, e in zip(names, m) if e) or "1"
            out[key] = format_rational(self.terms[m])
        return out

    def __repr__(self):
        return f"EulerPontryaginPoly(d={self.d}, n={self.n}, {self.to_json()})"

    def substitute(self, images: Sequence[EulerPontryaginPoly]) -> EulerPontryaginPoly:
        """Ring endomorphism sending variable ``t`` to ``images[t]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        out = EulerPontryaginPoly(self.d, self.n)
        for mono, c in self.terms.items():
            term = EulerPontryaginPoly.constant(self.d, self.n, c)
            for t, e in enumerate(mono):
                if e:
                    term = term * images[t] ** e
            out = out + term
        return out


# -- the hyperoctahedral group -----------------------------------------------------

SignedPermutation = tuple[int, ...]


def signed_permutation_matrix(sigma: SignedPermutation) -> list[list[int]]:
    """Column j carries sign(sigma(j)) in row |sigma(j)|."""
    d = len(sigma)
    if sorted(abs(s) for s in sigma) != list(range(1, d + 1)):
        raise ValueError(f"{sigma} is not a signed permutation of 1..{d}")
    m = [[0] * d for _ in range(d)]
    for j, s in enumerate(sigma):
        m[abs(s) - 1][j] = 1 if s > 0 else -1
    return m


def compose(sigma: SignedPermutation, tau: SignedPermutation) -> SignedPermutation:
    """``sigma o tau``."""
    return tuple((1 if t > 0 else -1) * sigma[abs(t) - 1] for t in tau)


def signed_permutations(d: int, det_one: bool = True) -> list[SignedPermutation]:
    out = []
    for perm in permutations(range(1, d + 1)):
        for signs in range(2 ** d):
            sigma = tuple(p if not (signs >> i) & 1 else -p for i, p in enumerate(perm))
            if not det_one or determinant(signed_permutation_matrix(sigma)) == 1:
                out.append(sigma)
    return out


def sigma_act(sigma: SignedPermutation, f: EulerPontryaginPoly, cap: int | None = None) -> EulerPontryaginPoly:
    """``e_j -> sign * e_|sigma(j)|`` and ``p_{j,i} -> p_{j,|sigma(i)|}``."""
    if len(sigma) != f.d:
        raise ValueError("signed permutation has the wrong size")
    if determinant(signed_permutation_matrix(sigma)) != 1:
        raise ValueError(f"{sigma} has determinant -1")
    d, n = f.d, f.n
    images = []
    for s in sigma:
        e = EulerPontryaginPoly.euler(d, n, abs(s))
        images.append(e if s > 0 else -e)
    for j in range(1, n // 2 + 1):
        for s in sigma:
            images.append(EulerPontryaginPoly.pontryagin(d, n, j, abs(s)))
    out = f.substitute(images)
    return out.truncate(cap) if cap is not None else out


# -- transvections ---------------------------------------------------------------

def transvection_matrix(d: int, i: int, j: int, power: int = 1) -> list[list[int]]:
    if i == j:
        raise ValueError("a transvection needs i != j")
    m = [[int(r == c) for c in range(d)] for r in range(d)]
    m[i - 1][j - 1] = power
    return m


def dual_linear_act(m: Sequence[Sequence[int]], f: EulerPontryaginPoly,
                    cap: int | None = None) -> EulerPontryaginPoly:
    """Act on the Euler span by the inverse transpose of ``m``; Pontryagin classes are fixed."""
    d, n = f.d, f.n
    if len(m) != d or determinant(m) != 1:
        raise ValueError("expected a determinant-one d x d matrix")
    inv_t = _inverse_transpose(m)
    images = []
    for c in range(d):
        img = EulerPontryaginPoly(d, n)
        for r in range(d):
            if inv_t[r][c]:
                img = img + EulerPontryaginPoly.euler(d, n, r + 1) * inv_t[r][c]
        images.append(img)
    for j in range(1, n // 2 + 1):
        for i in range(1, d + 1):
            images.append(EulerPontryaginPoly.pontryagin(d, n, j, i))
    out = f.substitute(images)
    return out.truncate(cap) if cap is not None else out


def transvection_act(d: int, i: int, j: int, f: EulerPontryaginPoly, power: int = 1,
                     cap: int | None = None) -> EulerPontryaginPoly:
    if d != f.d:
        raise ValueError("transvection size does not match the ring")
    return dual_linear_act(transvection_matrix(d, i, j, power), f, cap)


def _inverse_transpose(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    d = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(d)] for r, row in enumerate(m)]
    for c in range(d):
        p = next(r for r in range(c, d) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    inv = [row[d:] for row in aug]
    return [[inv[c][r] for c in range(d)] for r in range(d)]


# -- Euler-only subring ---------------------------------------------------------

def include_euler(f: EulerPontryaginPoly) -> EulerPontryaginPoly:
    """Identity on Euler monomials; checks ``f`` carries no Pontryagin factors."""
    d = f.d
    for m in f.terms:
        if any(m[d:]):
            raise ValueError("not a polynomial in the Euler classes alone")
    return EulerPontryaginPoly(d, f.n, f.terms)


def euler_polynomial(d: int, n: int, terms: Mapping[tuple[int, ...], object]) -> EulerPontryaginPoly:
    """Embed a polynomial given on e_1..e_d exponents into the full ring."""
    pad = (0,) * (d * (n // 2))
    return EulerPontryaginPoly(d, n, {tuple(m) + pad: c for m, c in terms.items()})


def project_euler(f: EulerPontryaginPoly) -> EulerPontryaginPoly:
    """Set every Pontryagin class to zero."""
    d = f.d
    return EulerPontryaginPoly(d, f.n, {m: c for m, c in f.terms.items() if not any(m[d:])})
