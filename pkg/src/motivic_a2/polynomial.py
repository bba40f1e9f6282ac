"""Commutative polynomials over F2[tau] in named generators, and a small parser.

Expressions are sums of monomials; a monomial is a juxtaposition of factors
``name`` or ``name^k`` (also ``*`` or ``·`` separated).  Names are matched
greedily against the known generator list, so ``h0^2h2`` parses.  Greek and
subscript spellings are normalized: ``τ`` -> ``tau``, ``α`` -> ``alpha``,
``ν`` -> ``nu``, ``Δ`` -> ``D``, ``h₀`` -> ``h0``, ``x²`` -> ``x^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_SUP = {"⁰": "0", "¹": "1", "²": "2", "³": "3", "⁴": "4", "⁵": "5", "⁶": "6", "⁷": "7", "⁸": "8", "⁹": "9"}
_GREEK = {"τ": "tau", "α": "alpha", "ν": "nu", "Δ": "D", "·": "*", "−": "+", "-": "+"}


def normalize(text: str) -> str:
    text = text.translate(_SUB)
    text = re.sub("[⁰¹²³⁴⁵⁶⁷⁸⁹]+", lambda m: "^" + "".join(_SUP[c] for c in m.group()), text)
    for k, v in _GREEK.items():
        text = text.replace(k, v)
    return text


@dataclass(frozen=True, order=True)
class Monomial:
    """tau^tau_exp times a product of generator powers (sorted by name)."""

    tau_exp: int
    powers: tuple[tuple[str, int], ...]

    @staticmethod
    def of(powers: Mapping[str, int] | Iterable[tuple[str, int]], tau_exp: int = 0) -> "Monomial":
        acc: dict[str, int] = {}
        for n, k in (powers.items() if isinstance(powers, Mapping) else powers):
            acc[n] = acc.get(n, 0) + k
        return Monomial(tau_exp, tuple(sorted((n, k) for n, k in acc.items() if k)))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.of(self.powers + other.powers, self.tau_exp + other.tau_exp)

    def factors(self) -> Iterator[str]:
        """Generator names with multiplicity, in sorted order."""
        for n, k in self.powers:
            for _ in range(k):
                yield n

    def degree(self, degrees: Mapping[str, Sequence[int]], tau_degree: Sequence[int]) -> tuple[int, ...]:
        dim = len(tau_degree)
        out = [self.tau_exp * x for x in tau_degree]
        for n, k in self.powers:
            for i in range(dim):
                out[i] += k * degrees[n][i]
        return tuple(out)

    def __str__(self) -> str:
        parts = []
        if self.tau_exp:
            parts.append("tau" if self.tau_exp == 1 else f"tau^{self.tau_exp}")
        for n, k in self.powers:
            parts.append(n if k == 1 else f"{n}^{k}")
        return " ".join(parts) if parts else "1"


class Polynomial:
    """An F2-linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()) -> None:
        acc: set[Monomial] = set()
        for m in terms:
            acc ^= {m}
        self.terms = frozenset(acc)

    @staticmethod
    def monomial(powers: Mapping[str, int] | Iterable[tuple[str, int]], tau_exp: int = 0) -> "Polynomial":
        return Polynomial([Monomial.of(powers, tau_exp)])

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.terms.symmetric_difference(other.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(a * b for a in self.terms for b in other.terms)

    def times_tau(self, k: int = 1) -> "Polynomial":
        return Polynomial(Monomial(m.tau_exp + k, m.powers) for m in self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms, key=lambda m: (m.powers, m.tau_exp)))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return " + ".join(str(m) for m in self) if self.terms else "0"

    __repr__ = __str__

    def names(self) -> set[str]:
        return {n for m in self.terms for n, _ in m.powers}


class ParseError(ValueError):
    pass


def parse(text: str, names: Iterable[str]) -> Polynomial:
    """Parse ``text`` as a polynomial in ``names`` (plus ``tau``).

    The literal ``0`` is the zero polynomial and ``1`` the unit.
    """
    src = normalize(text).strip()
    names = set(names)
    if "D2" in names and "D" not in names:
        src = src.replace("D^2", "D2")
    known = sorted(set(names) | {"tau"}, key=len, reverse=True)
    pattern = re.compile("|".join(re.escape(n) for n in known))
    out = Polynomial()
    for term in src.split("+"):
        term = term.strip()
        if not term:
            raise ParseError(f"empty term in {text!r}")
        if term == "0":
            continue
        powers: dict[str, int] = {}
        tau = 0
        i = 0
        body = term.replace("*", " ")
        if body.strip() == "1":
            out = out + Polynomial.monomial({})
            continue
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            if body[i] == "(":
                # a parenthesized single generator, as in (Dh1)^2
                j = body.find(")", i)
                inner = body[i + 1:j].strip() if j > 0 else ""
                if inner not in names and inner != "tau":
                    raise ParseError(f"only single generators may be parenthesized: {body[i:]!r} in {text!r}")
                name, i = inner, j + 1
            else:
                m = pattern.match(body, i)
                if not m:
                    raise ParseError(f"unknown symbol at {body[i:]!r} in {text!r}")
                name = m.group()
                i = m.end()
            k = 1
            e = re.compile(r"\^(\d+)").match(body, i)
            if e:
                k = int(e.group(1))
                i = e.end()
            if name == "tau":
                tau += k
            else:
                powers[name] = powers.get(name, 0) + k
        out = out + Polynomial.monomial(powers, tau)
    return out
