"""Polylogarithmic localisation maps and their refined restrictions.

A localisation map sends each de Rham coordinate (log, Li_1, ..., Li_n) to a
sparse polynomial in the Selmer coordinates x_l, y_l (l in S) and z_3, z_5,
...  Every term carries its own period symbol a[w], indexed by a word w in
the generators t_l (degree 1) and s_{2i+1} (degree 2i+1).  Two terms never
share a word, so a polynomial is a mapping word -> (monomial, multiplicity)
and zero-testing is exact.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .padic import PAdic, iwasawa_log, is_prime

MAX_DEPTH = 64
MAX_TERMS = 2_000_000


class Cusp(enum.IntEnum):
    """Cusps of the thrice-punctured line, ordered 0 < 1 < oo."""

    ZERO = 0
    ONE = 1
    INF = 2

    def __str__(self):
        return ("0", "1", "∞")[self.value]

    @classmethod
    def parse(cls, token) -> Cusp:
        if isinstance(token, Cusp):
            return token
        t = str(token).strip().lower()
        if t == "0":
            return cls.ZERO
        if t == "1":
            return cls.ONE
        if t in ("inf", "infinity", "∞", "oo"):
            return cls.INF
        raise ValueError(f"not a cusp: {token!r}")


@dataclass(frozen=True, order=True)
class RefinementCondition:
    """A choice of cusp for each prime of S."""

    entries: tuple[Cusp, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(Cusp.parse(e) for e in self.entries))

    @classmethod
    def parse(cls, text: str) -> RefinementCondition:
        return cls(tuple(t for t in text.replace("(", "").replace(")", "").split(",") if t.strip()))

    @classmethod
    def all(cls, size: int) -> list[RefinementCondition]:
        return [cls(c) for c in itertools.product(Cusp, repeat=size)]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.entries) + ")"


@dataclass(frozen=True, order=True)
class Generator:
    """t_l (kind 't', l a prime) or s_{2i+1} (kind 's', odd index >= 3)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind == "t":
            if not is_prime(self.index):
                raise ValueError(f"tau index must be prime, got {self.index}")
        elif self.kind == "s":
            if self.index < 3 or self.index % 2 == 0:
                raise ValueError(f"sigma index must be odd and >= 3, got {self.index}")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return 1 if self.kind == "t" else self.index

    def __str__(self):
        return f"{self.kind}{self.index}"


Word = tuple[Generator, ...]


def word_degree(word: Word) -> int:
    return sum(g.degree for g in word)


def word_str(word: Word) -> str:
    return ".".join(str(g) for g in word)


def known_value(word: Word) -> str | None:
    """Name of the known period for single-letter words, None for opaque ones."""
    if len(word) != 1:
        return None
    g = word[0]
    return f"log_p({g.index})" if g.kind == "t" else f"zeta_p({g.index})"


# variables are (rank, index): rank 0 = x_l, 1 = y_l, 2 = z_k
Variable = tuple[int, int]
Monomial = tuple[tuple[Variable, int], ...]

_VAR_PREFIX = ("x", "y", "z")


def var_name(v: Variable) -> str:
    return f"{_VAR_PREFIX[v[0]]}{v[1]}"


def var_weight(v: Variable) -> int:
    return 1 if v[0] < 2 else v[1]


def make_monomial(variables: Iterable[Variable]) -> Monomial:
    counts: dict[Variable, int] = {}
    for v in variables:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items()))


def monomial_weight(mono: Monomial) -> int:
    return sum(var_weight(v) * e for v, e in mono)


def monomial_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in mono)


@dataclass(frozen=True)
class Term:
    word: Word
    monomial: Monomial
    multiplicity: int = 1
    value: PAdic | None = None  # set once a single-letter period is specialised

    def coefficient_str(self) -> str:
        if self.value is not None:
            return f"({self.value})"
        return f"a[{word_str(self.word)}]"

    def __str__(self):
        body = f"{self.coefficient_str()}*{monomial_str(self.monomial)}" if self.monomial \
            else self.coefficient_str()
        m = abs(self.multiplicity)
        return body if m == 1 else f"{m}*{body}"


def _poly_str(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    out = []
    for i, t in enumerate(terms):
        sign = "-" if t.multiplicity < 0 else "+"
        if i == 0:
            out.append(f"-{t}" if sign == "-" else str(t))
        else:
            out.append(f" {sign} {t}")
    return "".join(out)


@dataclass(frozen=True)
class LocalisationMap:
    """Images of log, Li_1, ..., Li_n in the Selmer coordinate ring."""

    S: tuple[int, ...]
    depth: int
    coordinates: tuple[tuple[str, tuple[Term, ...]], ...]
    sigma: RefinementCondition | None = field(default=None)

    def __getitem__(self, name: str) -> tuple[Term, ...]:
        for n, terms in self.coordinates:
            if n == name:
                return terms
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.coordinates]

    @property
    def variables(self) -> list[Variable]:
        xs = [(0, l) for l in self.S]
        ys = [(1, l) for l in self.S]
        zs = [(2, k) for k in range(3, self.depth + 1, 2)]
        return xs + ys + zs

    def render(self) -> str:
        return "\n".join(f"{name} -> {_poly_str(terms)}" for name, terms in self.coordinates)

    def to_json(self) -> dict:
        return {
            "S": list(self.S),
            "depth": self.depth,
            "sigma": None if self.sigma is None else [str(c) for c in self.sigma],
            "variables": [var_name(v) for v in self.variables],
            "coordinates": [
                {
                    "name": name,
                    "terms": [
                        {
                            "word": [str(g) for g in t.word],
                            "known_value": known_value(t.word),
                            "value": None if t.value is None else str(t.value),
                            "monomial": {var_name(v): e for v, e in t.monomial},
                            "multiplicity": t.multiplicity,
                        }
                        for t in terms
                    ],
                }
                for name, terms in self.coordinates
            ],
        }


def coordinate_names(n: int) -> list[str]:
    return ["log"] + [f"Li_{k}" for k in range(1, n + 1)]


def _normalise_S(S: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(S)))
    for l in out:
        if not is_prime(l):
            raise ValueError(f"S must contain primes, got {l}")
    return out


def build_localisation(S: Iterable[int], n: int, max_depth: int = MAX_DEPTH) -> LocalisationMap:
    """The localisation map in depth n over the prime set S."""
    S = _normalise_S(S)
    if not 1 <= n <= max_depth:
        raise ValueError(f"depth must lie in [1, {max_depth}], got {n}")
    if len(S) > 1 and sum(len(S) ** k for k in range(1, n + 1)) > MAX_TERMS:
        raise ValueError(f"depth {n} over {len(S)} primes exceeds {MAX_TERMS} terms")
    tau = {l: Generator("t", l) for l in S}
    coords: list[tuple[str, tuple[Term, ...]]] = [
        ("log", tuple(Term((tau[l],), make_monomial([(0, l)])) for l in S))
    ]
    for k in range(1, n + 1):
        terms = []
        for ls in itertools.product(S, repeat=k):
            *xs, q = ls
            word = tuple(tau[l] for l in ls)
            terms.append(Term(word, make_monomial([(0, l) for l in xs] + [(1, q)])))
        for i in range(1, (k - 1) // 2 + 1):
            s = Generator("s", 2 * i + 1)
            for xs in itertools.product(S, repeat=k - 2 * i - 1):
                word = (s,) + tuple(tau[l] for l in xs)
                terms.append(Term(word, make_monomial([(0, l) for l in xs] + [(2, 2 * i + 1)])))
        coords.append((f"Li_{k}", tuple(terms)))
    return LocalisationMap(S, n, tuple(coords))


def _restrict_term(term: Term, rule: dict[int, Cusp]) -> Term | None:
    exps = dict(term.monomial)
    sign = 1
    for l, cusp in rule.items():
        ex = exps.get((0, l), 0)
        ey = exps.get((1, l), 0)
        if cusp is Cusp.ZERO and ey:
            return None
        if cusp is Cusp.ONE and ex:
            return None
        if cusp is Cusp.INF and ey:
            # y_l -> -x_l
            del exps[(1, l)]
            exps[(0, l)] = ex + ey
            sign *= (-1) ** ey
    return replace(term, monomial=tuple(sorted(exps.items())), multiplicity=term.multiplicity * sign)


def restrict_refinement(m: LocalisationMap, sigma: RefinementCondition) -> LocalisationMap:
    """Pull the map back to the refined subspace cut out by sigma.

    Sigma_l = 0 imposes y_l = 0, 1 imposes x_l = 0, oo imposes x_l + y_l = 0.
    """
    if not isinstance(sigma, RefinementCondition):
        sigma = RefinementCondition(tuple(sigma))
    if len(sigma) != len(m.S):
        raise ValueError(f"refinement condition {sigma} does not match S = {m.S}")
    rule = dict(zip(m.S, sigma))
    coords = []
    for name, terms in m.coordinates:
        kept = (_restrict_term(t, rule) for t in terms)
        coords.append((name, tuple(t for t in kept if t is not None)))
    return LocalisationMap(m.S, m.depth, tuple(coords), sigma)


def vanishing_coordinates(m: LocalisationMap) -> list[str]:
    """Coordinates whose image is identically zero."""
    return [name for name, terms in m.coordinates if not terms]


def selmer_dimension(S: Iterable[int], n: int) -> int:
    if n < 1:
        raise ValueError("depth must be positive")
    return 2 * len(_normalise_S(S)) + (n - 1) // 2


def specialize_single_letter(m: LocalisationMap, p: int, N: int) -> LocalisationMap:
    """Replace each a[t_l] by the p-adic logarithm of l at precision N."""
    if p in m.S:
        raise ValueError(f"p = {p} must not lie in S = {m.S}")
    logs = {l: iwasawa_log(PAdic.from_int(l, p, N)) for l in m.S}
    coords = []
    for name, terms in m.coordinates:
        new = []
        for t in terms:
            if len(t.word) == 1 and t.word[0].kind == "t":
                t = replace(t, value=logs[t.word[0].index])
            new.append(t)
        coords.append((name, tuple(new)))
    return LocalisationMap(m.S, m.depth, tuple(coords), m.sigma)
