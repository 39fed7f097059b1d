"""SL(2, Z), the theta subgroup, and words in their generators."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from .linalg import determinant


class NotInGroupError(ValueError):
    """An element is outside the group it was asked about."""


class UnknownGeneratorError(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class IntMatrix2:
    """Integer 2x2 matrix ``(a b; c d)`` of determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    @classmethod
    def identity(cls) -> IntMatrix2:
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str) -> IntMatrix2:
        """Parse the ``"a,b;c,d"`` literal."""
        rows = [r for r in text.replace(" ", "").split(";")]
        if len(rows) != 2:
            raise ValueError(f"expected two rows in {text!r}")
        entries = [r.split(",") for r in rows]
        if any(len(r) != 2 for r in entries):
            raise ValueError(f"expected two entries per row in {text!r}")
        (a, b), (c, d) = [[int(x) for x in r] for r in entries]
        return cls(a, b, c, d)

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"

    def __matmul__(self, o: IntMatrix2) -> IntMatrix2:
        return IntMatrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> IntMatrix2:
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> IntMatrix2:
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> IntMatrix2:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = IntMatrix2.identity()
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def apply(self, p: int, q: int) -> tuple[int, int]:
        """Action on a column vector ``(p, q)``."""
        return (self.a * p + self.b * q, self.c * p + self.d * q)


I = IntMatrix2(1, 0, 0, 1)
MINUS_I = IntMatrix2(-1, 0, 0, -1)
ALPHA = IntMatrix2(0, 1, -1, 0)
BETA = IntMatrix2(0, 1, -1, 1)
T = IntMatrix2(1, 1, 0, 1)
S = IntMatrix2(0, -1, 1, 0)
U = IntMatrix2(1, 2, 0, 1)
GAMMA_Q = IntMatrix2(2, -1, 1, 0)
LOWER_T = IntMatrix2(1, 0, 1, 1)


# -- words ------------------------------------------------------------------------

Letter = tuple[str, int]

_LETTER = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _reduce(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == name:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((name, e))
        else:
            out.append((name, e))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class GroupWord:
    """Freely reduced word: a tuple of (generator name, nonzero exponent)."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, name: str, e: int = 1) -> GroupWord:
        return cls(((name, e),))

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        """Parse ``"B^-1*A"``; ``""`` and ``"1"`` are the empty word."""
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls()
        letters = []
        for part in text.split("*"):
            m = _LETTER.match(part)
            if not m:
                raise ValueError(f"bad word letter {part!r}")
            letters.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(letters))

    def __str__(self):
        if not self.letters:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def __mul__(self, o: GroupWord) -> GroupWord:
        return GroupWord(self.letters + o.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: tuple[tuple[str, IntMatrix2], ...]
    relators: tuple[GroupWord, ...]

    def __post_init__(self):
        for r in self.relators:
            if evaluate_word(r, self) != I:
                raise ValueError(f"relator {r} of {self.name} is not the identity")

    @property
    def gen_names(self) -> list[str]:
        return [n for n, _ in self.generators]

    def image(self, name: str) -> IntMatrix2:
        for n, m in self.generators:
            if n == name:
                return m
        raise UnknownGeneratorError(f"{name!r} is not a generator of {self.name}")

    def contains(self, g: IntMatrix2) -> bool:
        if self.name == "SL2Z":
            return True
        if self.name == "Theta":
            return theta_member(g)
        try:
            self.word(g)
        except NotInGroupError:
            return False
        return True

    def word(self, g: IntMatrix2) -> GroupWord:
        """A word in the generators evaluating to ``g``."""
        if self.name == "SL2Z":
            return sl2z_word(g)
        if self.name == "Theta":
            return theta_word(g)
        if self.name.startswith("Cyclic"):
            gen = self.generators[0][1]
            for e in _cyclic_exponent_candidates(gen, g):
                if gen ** e == g:
                    return GroupWord.gen(self.generators[0][0], e)
            raise NotInGroupError(f"{g} is not a power of {gen}")
        raise NotImplementedError(self.name)


def evaluate_word(w: GroupWord, g: GroupPresentation) -> IntMatrix2:
    images = dict(g.generators)
    out = I
    for name, e in w.letters:
        if name not in images:
            raise UnknownGeneratorError(f"{name!r} is not a generator of {g.name}")
        out = out @ (images[name] ** e)
    return out


SL2Z = GroupPresentation(
    "SL2Z",
    (("A", ALPHA), ("B", BETA)),
    (GroupWord.parse("A^4"), GroupWord.parse("A^2*B^-3")),
)

# Z = S^2 = -I is kept as a generator so words can name the centre directly.
THETA = GroupPresentation(
    "Theta",
    (("S", S), ("U", U), ("Z", MINUS_I)),
    (GroupWord.parse("S^4"), GroupWord.parse("S^2*U*S^-2*U^-1"), GroupWord.parse("Z*S^-2")),
)


def cyclic_presentation(gen: IntMatrix2, name: str = "T") -> GroupPresentation:
    """The subgroup generated by one element of infinite order, as a free group."""
    if classify(gen) not in ("parabolic", "hyperbolic"):
        raise ValueError(f"{gen} does not generate an infinite cyclic group")
    return GroupPresentation(f"Cyclic<{gen}>", ((name, gen),), ())


def _cyclic_exponent_candidates(gen: IntMatrix2, g: IntMatrix2) -> Iterator[int]:
    # |entries| of gen^e grow at least linearly in |e|
    bound = max(abs(g.a), abs(g.b), abs(g.c), abs(g.d)) + 2
    for e in range(bound + 1):
        yield e
        if e:
            yield -e


def presentation(name: str) -> GroupPresentation:
    key = name.lower()
    if key in ("sl2z", "sl2"):
        return SL2Z
    if key in ("theta", "gamma_theta"):
        return THETA
    raise ValueError(f"unknown group {name!r}")


# -- classification and membership ------------------------------------------------

def classify(g: IntMatrix2) -> str:
    if g == I:
        return "identity"
    if g == MINUS_I:
        return "minus_identity"
    t = abs(g.trace)
    if t < 2:
        return "elliptic"
    if t == 2:
        return "parabolic"
    return "hyperbolic"


def theta_member(g: IntMatrix2) -> bool:
    """Exactly one odd entry in each row."""
    return (g.a + g.b) % 2 == 1 and (g.c + g.d) % 2 == 1


def gamma_d_member(m: Sequence[Sequence[int]], n: int) -> bool:
    """Membership of a square integer matrix in the group of realisable automorphisms.

    For n in {1, 3, 7} that is all of SL_d(Z); otherwise every row must
    additionally carry exactly one odd entry.
    """
    d = len(m)
    if any(len(r) != d for r in m):
        raise ValueError("matrix is not square")
    if determinant(m) != 1:
        return False
    if n in (1, 3, 7):
        return True
    return all(sum(x % 2 for x in row) == 1 for row in m)


# -- word decomposition ---------------------------------------------------------

def _nearest_quotient(a: int, c: int) -> int:
    """k minimising |a + k c|, ties broken towards the smaller |k|."""
    q, r = divmod(-a, c)
    k1, k2 = q, q + 1
    v1, v2 = abs(a + k1 * c), abs(a + k2 * c)
    if v1 < v2 or (v1 == v2 and abs(k1) <= abs(k2)):
        return k1
    return k2


def sl2z_word(g: IntMatrix2) -> GroupWord:
    """Word in A = alpha, B = beta evaluating to ``g``.

    Reduce the first column by left multiplication with powers of T and with
    S until ``g = +-T^n``, then rewrite T = B^-1 A, S = A, -I = A^2.
    """
    m = g
    ops: list[GroupWord] = []  # left factors applied, in order
    t_word = GroupWord.parse("B^-1*A")
    s_word = GroupWord.gen("A", -1)
    while m.c != 0:
        if abs(m.a) >= abs(m.c):
            k = _nearest_quotient(m.a, m.c)
            m = (T ** k) @ m
            ops.append(GroupWord(t_word.letters * abs(k)) if k > 0
                       else GroupWord(t_word.inverse().letters * abs(k)))
        else:
            m = S @ m
            ops.append(s_word)
    tail = GroupWord()
    if m.a == -1:
        m = -m
        tail = GroupWord.gen("A", 2)
    n = m.b
    tail = tail * (GroupWord(t_word.letters * n) if n >= 0 else GroupWord(t_word.inverse().letters * -n))
    word = GroupWord()
    for op in ops:
        word = word * op.inverse()
    return word * tail


def theta_word(g: IntMatrix2) -> GroupWord:
    """Word in S, U, Z evaluating to a member of the theta group.

    Even continued fractions: U^k shrinks |a| below |c| (never to equality,
    since a and c have opposite parity), then S swaps; |c| strictly drops.
    """
    if not theta_member(g):
        raise NotInGroupError(f"{g} is not in the theta group")
    m = g
    ops: list[GroupWord] = []
    while m.c != 0:
        if abs(m.a) > abs(m.c):
            k = _nearest_quotient(m.a, 2 * m.c)
            m = (U ** k) @ m
            ops.append(GroupWord.gen("U", k))
        else:
            m = S @ m
            ops.append(GroupWord.gen("S"))
    tail = GroupWord()
    if m.a == -1:
        m = -m
        tail = GroupWord.gen("Z")
    tail = tail * GroupWord.gen("U", m.b // 2)
    word = GroupWord()
    for op in ops:
        word = word * op.inverse()
    return word * tail


# -- cosets and cusps -----------------------------------------------------------

THETA_COSET_REPS = (I, T, LOWER_T)


def theta_coset_index(g: IntMatrix2, reps: Sequence[IntMatrix2] = THETA_COSET_REPS) -> int:
    """Index j with ``g`` in the right coset ``Theta * reps[j]``."""
    for j, r in enumerate(reps):
        if theta_member(g @ r.inverse()):
            return j
    raise ValueError(f"{g} lies in none of the given cosets")


def check_coset_reps(reps: Sequence[IntMatrix2]) -> None:
    if len(reps) != 3:
        raise ValueError("the theta group has index 3; need 3 representatives")
    for i in range(3):
        for j in range(i + 1, 3):
            if theta_member(reps[i] @ reps[j].inverse()):
                raise ValueError(f"coset representatives {reps[i]} and {reps[j]} are equivalent")


def count_theta_cosets() -> int:
    """Breadth-first enumeration of left cosets x Theta under left multiplication by A, B."""
    found = [I]
    queue = deque([I])
    while queue:
        x = queue.popleft()
        for g in (ALPHA, BETA):
            y = g @ x
            if not any(theta_member(z.inverse() @ y) for z in found):
                found.append(y)
                queue.append(y)
    return len(found)


@dataclass(frozen=True)
class CuspClass:
    representative: tuple[int, int]
    stabilizer_generator: IntMatrix2
    width: int

    def to_dict(self) -> dict:
        p, q = self.representative
        return {"representative": f"[{p}:{q}]",
                "stabilizer_generator": str(self.stabilizer_generator),
                "width": self.width}


def _canonical_generator(g: IntMatrix2) -> IntMatrix2:
    # g and g^-1 both generate; keep the lexicographically larger entry tuple
    h = g.inverse()
    return g if (g.a, g.b, g.c, g.d) >= (h.a, h.b, h.c, h.d) else h


def _coset_reps(g: GroupPresentation) -> tuple[IntMatrix2, ...]:
    if g.name == "SL2Z":
        return (I,)
    if g.name == "Theta":
        return THETA_COSET_REPS
    raise NotImplementedError(f"cusps of {g.name}")


def cusp_orbits(g: GroupPresentation) -> list[CuspClass]:
    """One class per orbit on P^1(Q).

    Cusps correspond to cycles of right multiplication by T on the right
    cosets; the cycle length is the width and ``r T^w r^-1`` generates the
    positive-trace stabiliser of ``r(inf)``.
    """
    reps = _coset_reps(g)

    def index(x: IntMatrix2) -> int:
        if len(reps) == 1:
            return 0
        return theta_coset_index(x, reps)

    seen: set[int] = set()
    out = []
    for i, r in enumerate(reps):
        if i in seen:
            continue
        width, x = 0, r
        while True:
            x = x @ T
            width += 1
            j = index(x)
            seen.add(j)
            if j == i:
                break
        gen = _canonical_generator(r @ (T ** width) @ r.inverse())
        p, q = r.a, r.c
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        out.append(CuspClass((p, q), gen, width))
    return out


def fixes_projectively(g: IntMatrix2, p: int, q: int) -> bool:
    x, y = g.apply(p, q)
    return x * q - y * p == 0


def primitive(p: int, q: int) -> tuple[int, int]:
    h = gcd(p, q)
    return (p // h, q // h)


# -- enumeration ------------------------------------------------------------------

def ball(g: GroupPresentation, radius: int) -> list[tuple[IntMatrix2, GroupWord]]:
    """Distinct elements that are products of at most ``radius`` generators or inverses.

    Breadth-first from the identity, new elements as ``gen * x``; the order
    is deterministic.
    """
    steps = []
    for name, m in g.generators:
        steps.append((GroupWord.gen(name), m))
        steps.append((GroupWord.gen(name, -1), m.inverse()))
    seen = {I: GroupWord()}
    frontier = [I]
    out = [(I, GroupWord())]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            wx = seen[x]
            for w, m in steps:
                y = m @ x
                if y not in seen:
                    seen[y] = w * wx
                    nxt.append(y)
                    out.append((y, seen[y]))
        frontier = nxt
    return out
