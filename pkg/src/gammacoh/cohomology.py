"""H^0 and H^1 of presented groups with coefficients in finite-dimensional Q-modules.

A 1-cocycle is a derivation ``f(gh) = f(g) + g f(h)``, recorded by its values
on the generators; the relators impose the Fox-calculus conditions
``sum_g rho(d r / d g) f(g) = 0``. Higher cohomology is not computed: both
groups have virtual cohomological dimension 1, so over Q it vanishes.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import (EchelonBasis, format_rational, independent_subset, kernel_of_rows,
                     rank_of_rows, solve_rows)
from .modular import (GroupPresentation, GroupWord, I, IntMatrix2, NotInGroupError, SL2Z,
                      classify, cusp_orbits, evaluate_word)
from .representations import (DUAL, STANDARD, Coinduced, HomogeneousPoly, SymPower, pairing,
                              s_gamma)

Vector = tuple[Fraction, ...]

DEFAULT_MAX_DEGREE = 40


def max_degree() -> int:
    return int(os.environ.get("GAMMACOH_MAX_DEGREE", DEFAULT_MAX_DEGREE))


def check_degree(k: int) -> None:
    if k < 0:
        raise ValueError("module degree must be nonnegative")
    cap = max_degree()
    if k > cap:
        raise ValueError(f"degree {k} exceeds GAMMACOH_MAX_DEGREE={cap}")


# -- Fox calculus -------------------------------------------------------------------

def fox_derivative(r: GroupWord, g: str) -> dict[GroupWord, int]:
    """Fox derivative of a word as a formal Z-combination of words (prefixes)."""
    out: dict[GroupWord, int] = defaultdict(int)
    prefix = GroupWord()
    for name, e in r.letters:
        if name == g:
            if e > 0:
                for t in range(e):
                    out[prefix * GroupWord.gen(name, t)] += 1
            else:
                for t in range(1, -e + 1):
                    out[prefix * GroupWord.gen(name, -t)] -= 1
        prefix = prefix * GroupWord.gen(name, e)
    return {w: c for w, c in out.items() if c}


def _zero_rows(n: int, m: int) -> list[list[int]]:
    return [[0] * m for _ in range(n)]


def group_ring_matrix(element: dict[GroupWord, int], pres: GroupPresentation, module) -> list[list[int]]:
    """Sum of ``coefficient * rho(word)`` as an integer matrix."""
    by_matrix: dict[IntMatrix2, int] = defaultdict(int)
    for w, c in element.items():
        by_matrix[evaluate_word(w, pres)] += c
    n = module.dim
    out = _zero_rows(n, n)
    for g, c in by_matrix.items():
        if not c:
            continue
        m = module.matrix(g)
        for i in range(n):
            row, mrow = out[i], m[i]
            for j in range(n):
                if mrow[j]:
                    row[j] += c * mrow[j]
    return out


def fox_matrix(pres: GroupPresentation, module) -> list[list[int]]:
    """Stacked cocycle conditions; columns are the generator values in order."""
    n = module.dim
    gens = pres.gen_names
    rows = []
    for r in pres.relators:
        blocks = [group_ring_matrix(fox_derivative(r, g), pres, module) for g in gens]
        for i in range(n):
            rows.append([x for b in blocks for x in b[i]])
    return rows


def coboundary_rows(pres: GroupPresentation, module) -> list[list[int]]:
    """Principal derivations ``g -> v - g v`` for each basis vector v, as rows."""
    n = module.dim
    mats = [module.matrix(m) for _, m in pres.generators]
    rows = []
    for s in range(n):
        row = []
        for m in mats:
            row.extend(int(i == s) - m[i][s] for i in range(n))
        rows.append(row)
    return rows


def _matvec(m, v) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a), Fraction(0)) for row in m]


# -- cocycles ----------------------------------------------------------------------

def module_key(module) -> tuple:
    if isinstance(module, SymPower):
        return (module.degree, module.variant)
    if isinstance(module, Coinduced):
        return ("coinduced", module.degree, module.variant)
    return (repr(module),)


@dataclass(frozen=True, eq=False)
class CocycleClass:
    """A derivation given by its values on the generators."""

    presentation: GroupPresentation
    module: object
    values: tuple[Vector, ...]

    def __post_init__(self):
        vals = tuple(tuple(Fraction(x) for x in v) for v in self.values)
        if len(vals) != len(self.presentation.generators) or any(len(v) != self.module.dim for v in vals):
            raise ValueError("one module vector per generator is required")
        object.__setattr__(self, "values", vals)

    @property
    def generator_values(self) -> dict[str, HomogeneousPoly | Vector]:
        names = self.presentation.gen_names
        if isinstance(self.module, SymPower):
            return {n: self.module.element(v) for n, v in zip(names, self.values)}
        return dict(zip(names, self.values))

    def flat(self) -> Vector:
        return tuple(x for v in self.values for x in v)

    def satisfies_relators(self) -> bool:
        rows = fox_matrix(self.presentation, self.module)
        flat = self.flat()
        return all(not sum((a * b for a, b in zip(row, flat) if a), Fraction(0)) for row in rows)

    def __add__(self, o: CocycleClass) -> CocycleClass:
        return CocycleClass(self.presentation, self.module,
                            tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(self.values, o.values)))

    def scale(self, s) -> CocycleClass:
        s = Fraction(s)
        return CocycleClass(self.presentation, self.module, tuple(tuple(s * a for a in v) for v in self.values))

    def to_json(self) -> dict:
        out = {}
        for name, v in self.generator_values.items():
            out[name] = v.to_json() if isinstance(v, HomogeneousPoly) else [format_rational(x) for x in v]
        return out


def principal_derivation(pres: GroupPresentation, module, v: Sequence) -> CocycleClass:
    v = [Fraction(x) for x in v]
    vals = []
    for _, g in pres.generators:
        gv = _matvec(module.matrix(g), v)
        vals.append(tuple(a - b for a, b in zip(v, gv)))
    return CocycleClass(pres, module, tuple(vals))


def derivation_value(c: CocycleClass, g: IntMatrix2, word: GroupWord | None = None) -> HomogeneousPoly | Vector:
    """Value of the derivation at a group element, evaluated along a word.

    ``word`` defaults to the presentation's own decomposition of ``g``; any
    word evaluating to ``g`` gives the same value.
    """
    pres = c.presentation
    if word is None:
        if not pres.contains(g):
            raise NotInGroupError(f"{g} is not in {pres.name}")
        word = pres.word(g)
    elif evaluate_word(word, pres) != g:
        raise ValueError(f"word {word} does not evaluate to {g}")
    vec = _value_along_word(c, word)
    if isinstance(c.module, SymPower):
        return c.module.element(vec)
    return tuple(vec)


def _value_along_word(c: CocycleClass, word: GroupWord) -> list[Fraction]:
    pres, module = c.presentation, c.module
    gens = dict(pres.generators)
    gen_values = dict(zip(pres.gen_names, c.values))
    total = [Fraction(0)] * module.dim
    prefix = I
    for name, e in word.letters:
        x = gens[name]
        fx = gen_values[name]
        step = x if e > 0 else x.inverse()
        # f(x^e) = sum_{t<e} x^t f(x);  f(x^-e) = -sum_{1<=t<=e} x^-t f(x)
        p = prefix if e > 0 else prefix @ step
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            contrib = _matvec(module.matrix(p), fx)
            total = [a + sign * b for a, b in zip(total, contrib)]
            p = p @ step
        prefix = prefix @ (x ** e)
    return total


# -- cohomology spaces -----------------------------------------------------------

@dataclass(eq=False)
class CohomologySpace:
    presentation: GroupPresentation
    module: object
    basis: list[CocycleClass]
    coboundary: list[list[int]]
    z1_dim: int
    b1_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_coboundary(self, c: CocycleClass) -> bool:
        return self.coboundary_witness(c) is not None

    def coboundary_witness(self, c: CocycleClass) -> Vector | None:
        """A vector v with ``c = (g -> v - g v)``, or None."""
        ncols = len(self.coboundary)
        # columns are coboundary rows
        cols = self.coboundary
        rows = [[cols[s][i] for s in range(ncols)] for i in range(len(c.flat()))]
        return solve_rows(rows, c.flat(), ncols) if ncols else (None if any(c.flat()) else ())

    def coordinates(self, c: CocycleClass) -> Vector:
        """Coordinates of the class of ``c`` in ``basis``; raises if ``c`` is not a cocycle."""
        if not c.satisfies_relators():
            raise ValueError("not a cocycle")
        gens = [b.flat() for b in self.basis] + [tuple(Fraction(x) for x in r) for r in self.coboundary]
        nrows = len(c.flat())
        rows = [[g[i] for g in gens] for i in range(nrows)]
        sol = solve_rows(rows, c.flat(), len(gens))
        assert sol is not None
        return sol[:self.dim]

    def to_json(self) -> dict:
        mk = module_key(self.module)
        return {
            "group": self.presentation.name,
            "degree": self.module.degree,
            "variant": mk[-1] if mk[0] != "coinduced" else f"coinduced-{mk[-1]}",
            "dim": self.dim,
            "basis": [{"generator_values": b.to_json()} for b in self.basis],
        }


def h1_module(pres: GroupPresentation, module) -> CohomologySpace:
    n = module.dim
    ngen = len(pres.generators)
    z1 = kernel_of_rows(fox_matrix(pres, module), n * ngen) if pres.relators else [
        tuple(Fraction(int(i == j)) for i in range(n * ngen)) for j in range(n * ngen)]
    cob = coboundary_rows(pres, module)
    b1_dim = rank_of_rows(cob, n * ngen)
    keep = independent_subset(z1, base=cob, ncols=n * ngen)
    basis = []
    for idx in keep:
        v = z1[idx]
        basis.append(CocycleClass(pres, module, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(ngen))))
    assert len(basis) == len(z1) - b1_dim
    return CohomologySpace(pres, module, basis, cob, len(z1), b1_dim)


@lru_cache(maxsize=256)
def _h1_cached(pres: GroupPresentation, degree: int, variant: str) -> CohomologySpace:
    return h1_module(pres, SymPower(degree, variant))


def h1(pres: GroupPresentation, degree: int, variant: str = DUAL) -> CohomologySpace:
    # the cap is checked on every call, cached or not
    check_degree(degree)
    return _h1_cached(pres, degree, variant)


h1.cache_clear = _h1_cached.cache_clear


def h0_module(pres: GroupPresentation, module) -> list[Vector]:
    n = module.dim
    rows = []
    for _, g in pres.generators:
        m = module.matrix(g)
        rows.extend([m[i][j] - int(i == j) for j in range(n)] for i in range(n))
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    return kernel_of_rows(rows, n)


def h0(pres: GroupPresentation, degree: int, variant: str = DUAL) -> list[HomogeneousPoly]:
    check_degree(degree)
    module = SymPower(degree, variant)
    return [module.element(v) for v in h0_module(pres, module)]


@lru_cache(maxsize=64)
def _shapiro_cached(degree: int, variant: str) -> int:
    from .representations import coinduce
    return h1_module(SL2Z, coinduce(degree, variant)).dim


def shapiro_h1(degree: int, variant: str = DUAL) -> int:
    """dim H^1(SL2Z; coinduced module), which equals dim H^1(Theta; module)."""
    check_degree(degree)
    return _shapiro_cached(degree, variant)


shapiro_h1.cache_clear = _shapiro_cached.cache_clear


# -- restriction to cyclic subgroups ------------------------------------------------

@dataclass(frozen=True)
class CoinvariantClass:
    """Class of ``f(gamma)`` in the coinvariants ``W / (gamma - 1) W``.

    ``coordinates`` are the values of a canonical basis of functionals
    vanishing on ``(gamma - 1) W``; the class is zero iff they all vanish.
    """

    gamma: IntMatrix2
    value: object
    coordinates: tuple[Fraction, ...]
    is_zero: bool

    @property
    def target_dim(self) -> int:
        return len(self.coordinates)


def coinvariant_functionals(module, g: IntMatrix2) -> list[Vector]:
    """Basis of functionals killing ``(g - 1) W``: the kernel of ``(rho(g) - 1)^T``."""
    m = module.matrix(g)
    n = module.dim
    rows = [[m[j][i] - int(i == j) for j in range(n)] for i in range(n)]
    return kernel_of_rows(rows, n)


def coinvariant_class(module, g: IntMatrix2, value) -> CoinvariantClass:
    vec = module.vector(value) if isinstance(value, HomogeneousPoly) else tuple(value)
    coords = tuple(sum((a * b for a, b in zip(lam, vec)), Fraction(0))
                   for lam in coinvariant_functionals(module, g))
    return CoinvariantClass(g, value, coords, not any(coords))


def restrict_to_cyclic(c: CocycleClass, g: IntMatrix2) -> CoinvariantClass:
    """Restriction of ``[c]`` to ``H^1(<g>)``.

    For infinite cyclic ``<g>`` that group is the coinvariants; for elements
    of finite order it vanishes over Q.
    """
    if not c.presentation.contains(g):
        raise NotInGroupError(f"{g} is not in {c.presentation.name}")
    value = derivation_value(c, g)
    cls = coinvariant_class(c.module, g, value)
    if classify(g) in ("identity", "minus_identity", "elliptic"):
        return CoinvariantClass(g, value, tuple(Fraction(0) for _ in cls.coordinates), True)
    return cls


# -- decomposable classes -------------------------------------------------------

@dataclass(frozen=True)
class DecomposableClass:
    """Homology class ``cor(s_gamma^m cap gamma)``."""

    gamma: IntMatrix2
    power: int
    value: HomogeneousPoly = field(init=False)

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("power must be at least 1")
        object.__setattr__(self, "value", s_gamma(self.gamma) ** self.power)


def pair_decomposable(c: CocycleClass, d: DecomposableClass) -> Fraction:
    """``<f(gamma), s_gamma^m>``; independent of the cocycle representative."""
    if not isinstance(c.module, SymPower) or c.module.variant != DUAL:
        raise ValueError("decomposable pairing needs a dual symmetric-power class")
    if c.module.degree != 2 * d.power:
        raise ValueError(f"degree mismatch: class of degree {c.module.degree}, decomposable of degree {2 * d.power}")
    return pairing(derivation_value(c, d.gamma), d.value)


# -- enumeration with values -------------------------------------------------------

def ball_with_values(space: CohomologySpace, radius: int):
    """Breadth-first ball with every basis class evaluated on each element.

    Yields ``(gamma, word, values)`` using ``f(g x) = f(g) + g f(x)``.
    """
    pres, module = space.presentation, space.module
    steps = []
    for idx, (name, m) in enumerate(pres.generators):
        fg = [b.values[idx] for b in space.basis]
        rho = module.matrix(m)
        steps.append((GroupWord.gen(name), m, rho, fg))
        inv = m.inverse()
        rho_inv = module.matrix(inv)
        # f(g^-1) = -g^-1 f(g)
        steps.append((GroupWord.gen(name, -1), inv, rho_inv, [tuple(-x for x in _matvec(rho_inv, v)) for v in fg]))
    zero = tuple(Fraction(0) for _ in range(module.dim))
    start = (I, GroupWord(), tuple(zero for _ in space.basis))
    seen = {I}
    frontier = [start]
    yield start
    for _ in range(radius):
        nxt = []
        for x, wx, fx in frontier:
            for w, m, rho, fg in steps:
                y = m @ x
                if y in seen:
                    continue
                seen.add(y)
                fy = tuple(tuple(a + b for a, b in zip(fg[i], _matvec(rho, fx[i]))) for i in range(len(fx)))
                item = (y, w * wx, fy)
                nxt.append(item)
                yield item
        frontier = nxt


@dataclass
class SpanningCertificate:
    rank: int
    dim: int
    radius: int
    detecting: list[IntMatrix2]
    examined: int

    @property
    def full(self) -> bool:
        return self.rank == self.dim

    def to_json(self) -> dict:
        return {"rank": self.rank, "dim": self.dim, "radius": self.radius,
                "detecting": [str(g) for g in self.detecting]}


def spanning_rank(pres: GroupPresentation, m: int, radius: int,
                  elements: Sequence[IntMatrix2] | None = None) -> SpanningCertificate:
    """Rank of the pairing between H^1(G; dual weight 2m) and decomposables of the ball.

    The detecting set is a greedy minimal subset of elements reaching that rank.
    """
    if m < 1:
        raise ValueError("weight index m must be at least 1")
    space = h1(pres, 2 * m, DUAL)
    basis = EchelonBasis(space.dim)
    detecting = []
    examined = 0
    if elements is None:
        source = ((g, [space.module.element(v) for v in vals]) for g, _, vals in ball_with_values(space, radius))
    else:
        source = ((g, [derivation_value(b, g) for b in space.basis]) for g in elements)
    for g, vals in source:
        if len(basis) == space.dim:
            break
        examined += 1
        s = s_gamma(g) ** m
        row = [pairing(v, s) for v in vals]
        if basis.add(row):
            detecting.append(g)
    return SpanningCertificate(len(basis), space.dim, radius, detecting, examined)


# -- parabolic analysis -------------------------------------------------------

@dataclass
class ParabolicAnalysis:
    group: str
    weight: int
    dim_h1: int
    cusp_target_dims: list[int]
    cusp_ranks: list[int]
    combined_rank: int
    dim_parabolic_subspace: int
    num_cusps: int

    @property
    def surjective(self) -> bool:
        return self.combined_rank == sum(self.cusp_target_dims)

    @property
    def consistent(self) -> bool:
        return (all(t == 1 for t in self.cusp_target_dims) and self.surjective
                and self.dim_h1 - self.dim_parabolic_subspace == self.num_cusps)

    def to_json(self) -> dict:
        return {"group": self.group, "weight": self.weight, "dim_h1": self.dim_h1,
                "cusp_target_dims": self.cusp_target_dims, "cusp_ranks": self.cusp_ranks,
                "combined_rank": self.combined_rank,
                "dim_parabolic_subspace": self.dim_parabolic_subspace,
                "num_cusps": self.num_cusps, "consistent": self.consistent}


def parabolic_analysis(pres: GroupPresentation, m: int) -> ParabolicAnalysis:
    if m < 1:
        raise ValueError("weight index m must be at least 1")
    space = h1(pres, 2 * m, DUAL)
    cusps = cusp_orbits(pres)
    targets, ranks, blocks = [], [], []
    for cusp in cusps:
        restricted = [restrict_to_cyclic(b, cusp.stabilizer_generator) for b in space.basis]
        tdim = len(coinvariant_functionals(space.module, cusp.stabilizer_generator))
        targets.append(tdim)
        # matrix with one row per target coordinate, one column per class
        block = [[r.coordinates[t] for r in restricted] for t in range(tdim)]
        blocks.extend(block)
        ranks.append(rank_of_rows(block, space.dim) if space.dim else 0)
    combined = rank_of_rows(blocks, space.dim) if space.dim and blocks else 0
    return ParabolicAnalysis(pres.name, m, space.dim, targets, ranks, combined,
                             space.dim - combined, len(cusps))


def principal_from_poly(pres: GroupPresentation, v: HomogeneousPoly) -> CocycleClass:
    return principal_derivation(pres, SymPower(v.degree, v.variant), v.coefficients)


__all__ = [
    "CocycleClass", "CohomologySpace", "CoinvariantClass", "DecomposableClass", "ParabolicAnalysis",
    "SpanningCertificate", "ball_with_values", "coboundary_rows", "coinvariant_class",
    "coinvariant_functionals", "derivation_value", "fox_derivative", "fox_matrix", "h0", "h0_module",
    "h1", "h1_module", "pair_decomposable", "parabolic_analysis", "principal_derivation",
    "principal_from_poly", "restrict_to_cyclic", "shapiro_h1", "spanning_rank", "STANDARD", "DUAL",
]
