"""Exact scalars: Laurent polynomials over Q in the parameters q_ij (i < j).

A scalar is stored as a dict mapping an exponent key to a nonzero Fraction.
An exponent key is a sorted tuple of ``((i, j), e)`` pairs with ``e != 0``;
the empty key is the constant monomial.  Values are never mutated after
construction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping

Param = tuple[int, int]
Key = tuple[tuple[Param, int], ...]


class ScalarError(ValueError):
    pass


class NotAUnit(ScalarError):
    pass


class MissingParameter(ScalarError):
    pass


class ZeroParameterValue(ScalarError):
    pass


class ScalarSyntaxError(ScalarError):
    pass


def _merge(k1: Key, k2: Key) -> Key:
    if not k1:
        return k2
    if not k2:
        return k1
    exps = dict(k1)
    for p, e in k2:
        v = exps.get(p, 0) + e
        if v:
            exps[p] = v
        else:
            del exps[p]
    return tuple(sorted(exps.items()))


def _scale_key(k: Key, m: int) -> Key:
    if m == 0:
        return ()
    return tuple((p, e * m) for p, e in k)


class LaurentScalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Fraction | int] | None = None):
        clean: dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            exps: dict[Param, int] = {}
            for (i, j), e in key:
                if not i < j:
                    raise ScalarError(f"parameter q{i}_{j} requires i<j")
                exps[(i, j)] = exps.get((i, j), 0) + int(e)
            k = tuple(sorted((p, e) for p, e in exps.items() if e))
            v = clean.get(k, Fraction(0)) + Fraction(c)
            if v:
                clean[k] = v
            else:
                clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Key, Fraction]) -> LaurentScalar:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Fraction | int | str) -> LaurentScalar:
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def param(cls, i: int, j: int, power: int = 1) -> LaurentScalar:
        if not i < j:
            raise ScalarError(f"parameter q{i}_{j} requires i<j")
        if power == 0:
            return ONE
        return cls._raw({(((i, j), power),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> LaurentScalar:
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.constant(x)
        raise TypeError(f"cannot interpret {x!r} as a scalar")

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    def params(self) -> set[Param]:
        return {p for k in self._terms for p, _ in k}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.constant(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> LaurentScalar:
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentScalar:
        return LaurentScalar._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> LaurentScalar:
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentScalar:
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other) -> LaurentScalar:
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LaurentScalar._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return LaurentScalar._raw({_merge(ka, kb): ca * cb})
        out: dict[Key, Fraction] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = _merge(ka, kb)
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return LaurentScalar._raw(out)

    __rmul__ = __mul__

    def invert(self) -> LaurentScalar:
        """Inverse of a unit, i.e. of a single nonzero term."""
        if len(self._terms) != 1:
            raise NotAUnit(f"{self} is not a unit of the Laurent ring")
        (k, c), = self._terms.items()
        return LaurentScalar._raw({_scale_key(k, -1): 1 / c})

    def __truediv__(self, other) -> LaurentScalar:
        return self * LaurentScalar.coerce(other).invert()

    def __rtruediv__(self, other) -> LaurentScalar:
        return LaurentScalar.coerce(other) * self.invert()

    def __pow__(self, e: int) -> LaurentScalar:
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return ONE
        if len(self._terms) == 1:
            (k, c), = self._terms.items()
            if e < 0:
                c = 1 / c
            return LaurentScalar._raw({_scale_key(k, e): c ** abs(e)})
        if e < 0:
            raise NotAUnit(f"{self} is not a unit of the Laurent ring")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, assignment: Mapping[Param, Fraction | int]) -> Fraction:
        """Substitute rational values for the parameters."""
        total = Fraction(0)
        for k, c in self._terms.items():
            v = c
            for p, e in k:
                if p not in assignment:
                    raise MissingParameter(f"no value for q{p[0]}_{p[1]}")
                x = Fraction(assignment[p])
                if not x:
                    raise ZeroParameterValue(f"q{p[0]}_{p[1]} must be nonzero")
                v *= x ** e
            total += v
        return total

    def substitute(self, assignment: Mapping[Param, Fraction | int]) -> LaurentScalar:
        """Partial evaluation: replace the assigned parameters, keep the rest."""
        out = ZERO
        for k, c in self._terms.items():
            v = Fraction(c)
            rest = []
            for p, e in k:
                if p in assignment:
                    x = Fraction(assignment[p])
                    if not x:
                        raise ZeroParameterValue(f"q{p[0]}_{p[1]} must be nonzero")
                    v *= x ** e
                else:
                    rest.append((p, e))
            out = out + LaurentScalar._raw({tuple(rest): v} if v else {})
        return out

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            mono = "*".join(
                f"q{i}_{j}" if e == 1 else f"q{i}_{j}^{e}" for (i, j), e in k
            )
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentScalar({str(self)!r})"


ZERO = LaurentScalar._raw({})
ONE = LaurentScalar._raw({(): Fraction(1)})


def canonical_q(i: int, j: int, n: int) -> LaurentScalar:
    """The formal parameter q_ij with q_ii = 1 and q_ji = q_ij^-1."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ScalarError(f"index out of range 1..{n}: ({i}, {j})")
    if i == j:
        return ONE
    if i < j:
        return LaurentScalar.param(i, j)
    return LaurentScalar.param(j, i, -1)


def sign(e: int) -> int:
    return -1 if e % 2 else 1


# -- expression grammar -------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<param>q(?P<pi>\d+)_(?P<pj>\d+))"
    r"|(?P<var>x(?P<vi>\d+))|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, object]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarSyntaxError(f"unexpected character at column {pos + 1}: {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            num = m.group("num")
            if "/" in num and int(num.split("/")[1]) == 0:
                raise ScalarSyntaxError(f"zero denominator in {num!r}")
            tokens.append(("num", Fraction(num)))
        elif m.group("param"):
            i, j = int(m.group("pi")), int(m.group("pj"))
            if not i < j:
                raise ScalarSyntaxError(f"q{i}_{j}: parameters require i<j")
            tokens.append(("param", (i, j)))
        elif m.group("var"):
            tokens.append(("var", int(m.group("vi"))))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


class _Parser:
    """Recursive descent over sums of products.

    Each parsed term is a pair (scalar, x-exponent dict).  x-variables are only
    accepted when ``allow_vars`` is set and must appear in increasing index
    order within a term.
    """

    def __init__(self, text: str, allow_vars: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_vars = allow_vars
        if not self.tokens:
            raise ScalarSyntaxError("empty expression")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ScalarSyntaxError(f"expected {op!r}")

    def parse(self) -> list[tuple[LaurentScalar, dict[int, int]]]:
        terms = self.sum()
        if self.pos != len(self.tokens):
            raise ScalarSyntaxError(f"trailing input at token {self.pos + 1}")
        return terms

    def sum(self):
        neg = False
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        terms = [self.term(neg)]
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append(self.term(val == "-"))
            else:
                return terms

    def exponent(self) -> int:
        kind, val = self.peek()
        if not (kind == "op" and val == "^"):
            return 1
        self.take()
        paren = False
        kind, val = self.peek()
        if kind == "op" and val == "(":
            self.take()
            paren = True
        neg = False
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        kind, val = self.take()
        if kind != "num" or val.denominator != 1:
            raise ScalarSyntaxError("exponent must be an integer")
        if paren:
            self.expect(")")
        return -int(val) if neg else int(val)

    def term(self, neg: bool):
        coeff = -ONE if neg else ONE
        xs: dict[int, int] = {}
        last_var = 0
        while True:
            kind, val = self.take()
            if kind == "num":
                coeff = coeff * LaurentScalar.constant(val) ** self.exponent()
            elif kind == "param":
                coeff = coeff * LaurentScalar.param(*val, power=self.exponent())
            elif kind == "var":
                if not self.allow_vars:
                    raise ScalarSyntaxError(f"x{val} not allowed in a scalar expression")
                e = self.exponent()
                if e < 0:
                    raise ScalarSyntaxError("generator exponents must be nonnegative")
                if val <= last_var:
                    raise ScalarSyntaxError("monomial factors must be in increasing index order")
                last_var = val
                if e:
                    xs[val] = e
            elif kind == "op" and val == "(":
                inner = _Parser.__new__(_Parser)
                inner.tokens, inner.pos, inner.allow_vars = self.tokens, self.pos, False
                parts = inner.sum()
                self.pos = inner.pos
                self.expect(")")
                s = ZERO
                for c, _ in parts:
                    s = s + c
                coeff = coeff * s ** self.exponent()
            else:
                raise ScalarSyntaxError(f"unexpected token {val!r}")
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                continue
            return coeff, xs


def parse_scalar(text: str) -> LaurentScalar:
    """Parse e.g. ``2/3*q1_2^-1 + 1``."""
    out = ZERO
    for c, _ in _Parser(text, allow_vars=False).parse():
        out = out + c
    return out


def parse_terms(text: str) -> list[tuple[LaurentScalar, dict[int, int]]]:
    """Parse an element expression into (coefficient, {index: exponent}) terms."""
    return _Parser(text, allow_vars=True).parse()
