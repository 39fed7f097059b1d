"""Eisenstein cocycles, Poincare series, dimension oracles and bundle evaluations."""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (CocycleClass, CoinvariantClass, DUAL, CohomologySpace, ball_with_values,
                         coinvariant_class, derivation_value, h1, parabolic_analysis,
                         restrict_to_cyclic, spanning_rank)
from .linalg import format_rational
from .modular import GAMMA_Q, GroupPresentation, IntMatrix2, SL2Z, T, U, classify, cusp_orbits
from .representations import (HomogeneousPoly, OneVariablePoly, SymPower, act, delta_star, pr_x)

EXCEPTIONAL_N = (1, 3, 7)
SERIES_VARIANTS = ("verbatim_sl2z", "corrected_sl2z", "verbatim_theta")

# genus, elliptic points of order 2 and 3, cusps
_GROUP_DATA = {"SL2Z": (0, 1, 1, 1), "Theta": (0, 1, 0, 2)}


# -- Eisenstein cocycles -------------------------------------------------------

class CocycleCheckError(AssertionError):
    """A cocycle failed one of its defining relator identities."""


@dataclass(frozen=True, eq=False)
class EisensteinClass:
    k: int
    underlying: CocycleClass

    @property
    def module(self) -> SymPower:
        return self.underlying.module

    def value(self, g: IntMatrix2) -> HomogeneousPoly:
        return derivation_value(self.underlying, g)


def _sum_action(elements, f: HomogeneousPoly) -> HomogeneousPoly:
    out = HomogeneousPoly.zero(f.degree, f.variant)
    for g in elements:
        out = out + act(g, f)
    return out


def e2k(k: int) -> EisensteinClass:
    """The derivation with ``A -> ex^2k - ey^2k`` and ``B -> 0``.

    Both relator identities are checked exactly in the form
    ``(1 + A + A^2 + A^3) f(A) = 0`` and ``(1 + A) f(A) = (1 + B + B^2) f(B)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    module = SymPower(2 * k, DUAL)
    fa = HomogeneousPoly.monomial(2 * k, 0, DUAL) - HomogeneousPoly.monomial(0, 2 * k, DUAL)
    fb = HomogeneousPoly.zero(2 * k, DUAL)
    A, B = SL2Z.image("A"), SL2Z.image("B")
    I2 = A ** 0
    if not _sum_action([I2, A, A ** 2, A ** 3], fa).is_zero():
        raise CocycleCheckError("(1 + A + A^2 + A^3) f(A) != 0")
    if _sum_action([I2, A], fa) != _sum_action([I2, B, B ** 2], fb):
        raise CocycleCheckError("(1 + A) f(A) != (1 + B + B^2) f(B)")
    c = CocycleClass(SL2Z, module, (fa.coefficients, fb.coefficients))
    if not c.satisfies_relators():
        raise CocycleCheckError("Fox conditions fail for the Eisenstein cocycle")
    return EisensteinClass(k, c)


def restrict_class(c: CocycleClass, sub: GroupPresentation) -> CocycleClass:
    """Restriction to a subgroup given by its own presentation."""
    values = []
    for _, g in sub.generators:
        v = derivation_value(c, g)
        values.append(c.module.vector(v) if isinstance(v, HomogeneousPoly) else v)
    return CocycleClass(sub, c.module, tuple(values))


def eisenstein_on(group: GroupPresentation, k: int) -> CocycleClass:
    c = e2k(k).underlying
    return c if group.name == "SL2Z" else restrict_class(c, group)


def class_degree(k: int, n: int) -> int:
    return 2 * k * n + 2 * k + 1


# -- Poincare series -------------------------------------------------------------

def _series_div(num: dict[int, int], den: dict[int, int], max_degree: int) -> list[int]:
    """Integer power series num/den to ``max_degree``; den has constant term 1."""
    if den.get(0) != 1:
        raise ValueError("denominator must have constant term 1")
    out = [0] * (max_degree + 1)
    for deg in range(max_degree + 1):
        c = num.get(deg, 0)
        for e, dcoef in den.items():
            if 0 < e <= deg:
                c -= dcoef * out[deg - e]
        out[deg] = c
    return out


def _poly_mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class PoincareSeries:
    n: int
    ell: int
    variant: str
    coefficients: tuple[int, ...]

    def coefficient(self, degree: int) -> int:
        if degree >= len(self.coefficients):
            raise ValueError(f"series only expanded to degree {len(self.coefficients) - 1}")
        return self.coefficients[degree]

    def nonzero(self) -> list[tuple[int, int]]:
        return [(d, c) for d, c in enumerate(self.coefficients) if c]

    def weight_coefficient(self, m: int) -> int:
        """Coefficient at degree ``2 m ell + 1`` (degree 1 for m = 0)."""
        return self.coefficient(2 * m * self.ell + 1)

    def to_json(self) -> dict:
        return {"n": self.n, "ell": self.ell, "variant": self.variant,
                "coefficients": [[d, c] for d, c in self.nonzero()]}


def poincare_coefficients(n: int, variant: str, max_degree: int) -> PoincareSeries:
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be an odd natural number")
    if variant not in SERIES_VARIANTS:
        raise ValueError(f"unknown series variant {variant!r}")
    if variant.endswith("sl2z") and n not in EXCEPTIONAL_N:
        raise ValueError(f"{variant} applies only to n in {EXCEPTIONAL_N}")
    if variant == "verbatim_theta" and n in EXCEPTIONAL_N:
        raise ValueError(f"verbatim_theta applies only to n outside {EXCEPTIONAL_N}")
    ell = n + 1
    if variant == "verbatim_theta":
        shift = 1
        num = {0: 1, 2 * ell: 1, 4 * ell: -1, 6 * ell: 1}
        den = _poly_mul({0: 1, 2 * ell: -1}, {0: 1, 4 * ell: -1})
    else:
        shift = 2 * ell + 1
        second = 4 * ell if variant == "verbatim_sl2z" else 2 * ell
        num = {0: 1, second: 1, 6 * ell: -1, 8 * ell: 1}
        den = _poly_mul({0: 1, 4 * ell: -1}, {0: 1, 6 * ell: -1})
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    if max_degree >= shift:
        tail = _series_div(num, den, max_degree - shift)
        for i, c in enumerate(tail):
            coeffs[i + shift] += c
    return PoincareSeries(n, ell, variant, tuple(coeffs))


def default_series(group: GroupPresentation, max_degree: int, corrected: bool = True) -> PoincareSeries:
    """The series matched to a group, at the smallest admissible n."""
    if group.name == "SL2Z":
        return poincare_coefficients(1, "corrected_sl2z" if corrected else "verbatim_sl2z", max_degree)
    return poincare_coefficients(5, "verbatim_theta", max_degree)


def series_coefficient(group: GroupPresentation, m: int, corrected: bool = True) -> int:
    n = 1 if group.name == "SL2Z" else 5
    return default_series(group, 2 * m * (n + 1) + 1, corrected).weight_coefficient(m)


# -- modular forms dimension oracle ------------------------------------------------

def _group_key(group) -> str:
    name = group.name if isinstance(group, GroupPresentation) else str(group)
    for key in _GROUP_DATA:
        if key.lower() == name.lower():
            return key
    raise ValueError(f"no dimension data for {name!r}")


def cusp_form_dim(weight: int, group) -> int:
    if weight < 4 or weight % 2:
        raise ValueError("weight must be even and at least 4")
    genus, e2, e3, cusps = _GROUP_DATA[_group_key(group)]
    dim = ((weight - 1) * (genus - 1) + (weight // 4) * e2 + (weight // 3) * e3
           + (weight // 2 - 1) * cusps)
    return max(dim, 0)


def h1_dim_oracle(m: int, group) -> int:
    """cusps + 2 dim S_{2m+2}; for m = 0, 2 genus + cusps - 1."""
    genus, _, _, cusps = _GROUP_DATA[_group_key(group)]
    if m == 0:
        return 2 * genus + cusps - 1
    return cusps + 2 * cusp_form_dim(2 * m + 2, group)


# -- bundle evaluations --------------------------------------------------------

@dataclass(frozen=True)
class BundleEvaluation:
    bundle: str
    k: int | None
    value: OneVariablePoly | CoinvariantClass
    nonzero: bool

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, OneVariablePoly):
            value = {"polynomial": v.to_json(), "text": str(v)}
        else:
            value = {"coinvariant": [format_rational(x) for x in v.coordinates],
                     "derivation_value": v.value.to_json() if isinstance(v.value, HomogeneousPoly) else None}
        return {"bundle": self.bundle, "k": self.k, "value": value, "nonzero": self.nonzero}


def evaluate_on_theta_gamma(c: CocycleClass, g: IntMatrix2) -> BundleEvaluation:
    r = restrict_to_cyclic(c, g)
    return BundleEvaluation(f"ThetaGamma({g})", None, r, not r.is_zero)


def evaluate_on_MQ11(k: int) -> BundleEvaluation:
    v = delta_star(e2k(k).value(GAMMA_Q))
    return BundleEvaluation("MQ11", k, v, not v.is_zero())


def parabolic_generator(group: GroupPresentation) -> IntMatrix2:
    """Generator of P: T for SL2Z, T^2 for the theta group."""
    return T if group.name == "SL2Z" else U


def evaluate_on_MP(k: int, group: GroupPresentation = SL2Z, bundle: str = "MP") -> BundleEvaluation:
    c = eisenstein_on(group, k)
    v = pr_x(derivation_value(c, parabolic_generator(group)))
    return BundleEvaluation(bundle, k, v, not v.is_zero())


def evaluate_on_MP10(k: int, group: GroupPresentation = SL2Z) -> BundleEvaluation:
    return evaluate_on_MP(k, group, bundle="MP10")


def is_eisenstein_nontrivial(k: int) -> bool:
    """True when the Eisenstein cocycle is not a principal derivation."""
    space = h1(SL2Z, 2 * k, DUAL)
    return not space.is_coboundary(e2k(k).underlying)


# -- detection ---------------------------------------------------------------------

def _detect(space: CohomologySpace, radius: int):
    """First detecting element per basis class: cusp generators first, then the ball."""
    pres, module = space.presentation, space.module
    found: dict[int, tuple[IntMatrix2, CoinvariantClass]] = {}
    pending = set(range(space.dim))
    cusp_gens = [c.stabilizer_generator for c in cusp_orbits(pres)]
    for g in cusp_gens:
        for i in sorted(pending):
            r = restrict_to_cyclic(space.basis[i], g)
            if not r.is_zero:
                found[i] = (g, r)
        pending -= set(found)
    if pending:
        for g, _, vals in ball_with_values(space, radius):
            if not pending:
                break
            if classify(g) not in ("parabolic", "hyperbolic"):
                continue
            for i in sorted(pending):
                r = coinvariant_class(module, g, module.element(vals[i]))
                if not r.is_zero:
                    found[i] = (g, r)
            pending -= set(found)
    return found


def _class_value_json(r: CoinvariantClass) -> dict:
    return {"derivation_value": r.value.to_json() if isinstance(r.value, HomogeneousPoly) else None,
            "coinvariant": [format_rational(x) for x in r.coordinates]}


def detection_report(group: GroupPresentation, m: int, radius: int = 8) -> dict:
    if m < 1:
        raise ValueError("weight index m must be at least 1")
    space = h1(group, 2 * m, DUAL)
    found = _detect(space, radius)
    detections = []
    for i in range(space.dim):
        if i in found:
            g, r = found[i]
            detections.append({"class_index": i, "detecting_gamma": str(g), "value": _class_value_json(r)})
        else:
            detections.append({"class_index": i, "detecting_gamma": None, "value": None})
    cusp_detections = []
    for cusp in cusp_orbits(group):
        g = cusp.stabilizer_generator
        hit = None
        for i, b in enumerate(space.basis):
            r = restrict_to_cyclic(b, g)
            if not r.is_zero:
                hit = {"cusp": cusp.to_dict()["representative"], "generator": str(g),
                       "class_index": i, "value": _class_value_json(r)}
                break
        cusp_detections.append(hit or {"cusp": cusp.to_dict()["representative"], "generator": str(g),
                                       "class_index": None, "value": None})
    span = spanning_rank(group, m, radius)
    coeff = series_coefficient(group, m)
    oracle = h1_dim_oracle(m, group)
    complete = (all(d["detecting_gamma"] is not None for d in detections)
                and (space.dim == 0 or all(c["class_index"] is not None for c in cusp_detections))
                and span.full)
    return {
        "group": group.name,
        "weight": m,
        "dim_h1": space.dim,
        "series_coefficient": coeff,
        "oracle_dim": oracle,
        "agreement": space.dim == coeff == oracle,
        "detections": detections,
        "cusp_detections": cusp_detections if space.dim else [],
        "spanning": {"rank": span.rank, "dim": span.dim, "radius": radius,
                     "detecting": [str(g) for g in span.detecting]},
        "complete": complete,
    }


# -- series discrepancy ------------------------------------------------------------

def series_discrepancy(n: int = 1, m_max: int = 10) -> list[dict]:
    """Compare both SL2Z series with the computed H^1 and the modular-forms count."""
    ell = n + 1
    top = 2 * m_max * ell + 1
    verbatim = poincare_coefficients(n, "verbatim_sl2z", top)
    corrected = poincare_coefficients(n, "corrected_sl2z", top)
    rows = []
    for m in range(1, m_max + 1):
        dim = h1(SL2Z, 2 * m, DUAL).dim
        deg = 2 * m * ell + 1
        rows.append({"m": m, "degree": deg, "computed_dim": dim, "oracle_dim": h1_dim_oracle(m, SL2Z),
                     "verbatim": verbatim.coefficient(deg), "corrected": corrected.coefficient(deg),
                     "verbatim_agrees": verbatim.coefficient(deg) == dim,
                     "corrected_agrees": corrected.coefficient(deg) == dim})
    return rows


__all__ = [
    "BundleEvaluation", "CocycleCheckError", "EisensteinClass", "PoincareSeries", "class_degree",
    "cusp_form_dim", "default_series", "detection_report", "e2k", "eisenstein_on", "evaluate_on_MP",
    "evaluate_on_MP10", "evaluate_on_MQ11", "evaluate_on_theta_gamma", "h1_dim_oracle",
    "is_eisenstein_nontrivial", "parabolic_analysis", "parabolic_generator", "poincare_coefficients",
    "restrict_class", "series_coefficient", "series_discrepancy",
]
