"""Sparse integral Laurent polynomials in variables a1, ..., an."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from fank.errors import DimensionMismatch, LaurentSyntaxError

Exponent = Tuple[int, ...]

_TOKEN = re.compile(r"(?:(?P<int>\d+)|(?P<var>a(?P<index>\d+))|(?P<op>[-+*^()]))")


def _sort_key(exponent: Exponent):
    # graded lexicographic
    return (sum(exponent), exponent)


@dataclass(frozen=True)
class LaurentPoly:
    """Element of Z[a1^(+-1), ..., an^(+-1)].

    Attributes:
        n: Number of variables.
        items: ``(exponent, coefficient)`` pairs, coefficients nonzero,
            exponents in graded lexicographic order. Build with
            :meth:`from_terms` rather than by hand.
    """

    n: int
    items: Tuple[Tuple[Exponent, int], ...] = ()

    @classmethod
    def from_terms(cls, n: int,
                   terms: Union[Mapping[Exponent, int], Iterable[Tuple[Exponent, int]]]) -> LaurentPoly:
        merged: Dict[Exponent, int] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coefficient in pairs:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != n:
                raise DimensionMismatch(f"exponent {exponent} has not {n} entries")
            merged[exponent] = merged.get(exponent, 0) + int(coefficient)
        items = tuple(sorted(((e, c) for e, c in merged.items() if c), key=lambda t: _sort_key(t[0])))
        return cls(n, items)

    @classmethod
    def zero(cls, n: int) -> LaurentPoly:
        return cls(n, ())

    @classmethod
    def constant(cls, n: int, value: int) -> LaurentPoly:
        return cls.from_terms(n, [((0,) * n, value)])

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: int = 1) -> LaurentPoly:
        return cls.from_terms(len(exponent), [(tuple(exponent), coefficient)])

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __bool__(self) -> bool:
        return bool(self.items)

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def coefficient_sum(self) -> int:
        return sum(c for _, c in self.items)

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"Laurent polynomials in {self.n} and {other.n} variables")
        return other

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly.from_terms(self.n, list(self.items) + list(other.items))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.n, tuple((e, -c) for e, c in self.items))

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product: List[Tuple[Exponent, int]] = []
        for e1, c1 in self.items:
            for e2, c2 in other.items:
                product.append((tuple(x + y for x, y in zip(e1, e2)), c1 * c2))
        return LaurentPoly.from_terms(self.n, product)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> LaurentPoly:
        if power < 0:
            if len(self.items) == 1 and abs(self.items[0][1]) == 1:
                (exponent, coefficient), = self.items
                return LaurentPoly.monomial(tuple(-e * -power for e in exponent), coefficient ** -power)
            raise ValueError("only signed monomials are units")
        result = LaurentPoly.constant(self.n, 1)
        for _ in range(power):
            result = result * self
        return result

    def shift(self, exponent: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with the given exponent."""
        return LaurentPoly.from_terms(
            self.n, [(tuple(x + y for x, y in zip(e, exponent)), c) for e, c in self.items]
        )

    def substitute_one(self, variables: Iterable[int]) -> LaurentPoly:
        """Set the listed variables (0-based indices) to 1."""
        killed = set(variables)
        return LaurentPoly.from_terms(
            self.n,
            [(tuple(0 if i in killed else x for i, x in enumerate(e)), c) for e, c in self.items],
        )

    def __str__(self) -> str:
        return format_laurent(self)


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def lp_sub(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f - g


def lp_neg(f: LaurentPoly) -> LaurentPoly:
    return -f


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def euler_class(nu: Sequence[int]) -> LaurentPoly:
    """1 - a^nu."""
    n = len(nu)
    return LaurentPoly.from_terms(n, [((0,) * n, 1), (tuple(nu), -1)])


def _format_monomial(exponent: Exponent) -> str:
    parts = []
    for i, e in enumerate(exponent, start=1):
        if e == 1:
            parts.append(f"a{i}")
        elif e:
            parts.append(f"a{i}^{e}")
    return "*".join(parts)


def format_laurent(f: LaurentPoly) -> str:
    if not f.items:
        return "0"
    out = []
    for k, (exponent, coefficient) in enumerate(f.items):
        monomial = _format_monomial(exponent)
        magnitude = abs(coefficient)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if k == 0:
            out.append(("-" if coefficient < 0 else "") + body)
        else:
            out.append((" - " if coefficient < 0 else " + ") + body)
    return "".join(out)


class _Parser:
    """Recursive descent over the token stream of one expression."""

    def __init__(self, text: str, n: int) -> None:
        self.text = text
        self.n = n
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            match = _TOKEN.match(text, i)
            if match is None:
                raise LaurentSyntaxError(f"unexpected character {text[i]!r}", i, text)
            start = i
            if match.group("int") is not None:
                tokens.append(("int", match.group("int"), start))
            elif match.group("var") is not None:
                tokens.append(("var", match.group("index"), start))
            else:
                tokens.append(("op", match.group("op"), start))
            i = match.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def _peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def _take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _is_op(self, symbol: str) -> bool:
        kind, value, _ = self._peek()
        return kind == "op" and value == symbol

    def _fail(self, message: str) -> LaurentSyntaxError:
        return LaurentSyntaxError(message, self._peek()[2], self.text)

    def _shown(self) -> str:
        kind, value, _ = self._peek()
        return "a" + value if kind == "var" else value

    def parse(self) -> LaurentPoly:
        result = self._expr()
        kind = self._peek()[0]
        if kind in ("int", "var") or self._is_op("("):
            raise self._fail(f"missing '*' before {self._shown()!r}")
        if kind != "end":
            raise self._fail(f"unexpected {self._shown()!r}")
        return result

    def _expr(self) -> LaurentPoly:
        result = self._term()
        while self._is_op("+") or self._is_op("-"):
            sign = self._take()[1]
            rhs = self._term()
            result = result + rhs if sign == "+" else result - rhs
        return result

    def _term(self) -> LaurentPoly:
        result = self._factor()
        while self._is_op("*"):
            self._take()
            result = result * self._factor()
        return result

    def _factor(self) -> LaurentPoly:
        kind, value, position = self._peek()
        if kind == "int":
            self._take()
            return LaurentPoly.constant(self.n, int(value))
        if kind == "var":
            self._take()
            index = int(value)
            if not 1 <= index <= self.n:
                raise LaurentSyntaxError(f"variable a{index} outside a1..a{self.n}", position, self.text)
            exponent = 1
            if self._is_op("^"):
                self._take()
                negative = False
                if self._is_op("-"):
                    self._take()
                    negative = True
                kind, digits, _ = self._peek()
                if kind != "int":
                    raise self._fail("integer exponent expected")
                self._take()
                exponent = -int(digits) if negative else int(digits)
            return LaurentPoly.monomial(tuple(exponent if i == index - 1 else 0 for i in range(self.n)))
        if self._is_op("("):
            self._take()
            inner = self._expr()
            if not self._is_op(")"):
                raise self._fail("')' expected")
            self._take()
            return inner
        if self._is_op("-"):
            self._take()
            return -self._factor()
        raise self._fail("expression expected" if kind == "end" else f"unexpected {self._shown()!r}")


def parse_laurent(text: str, n: int) -> LaurentPoly:
    return _Parser(text, n).parse()
