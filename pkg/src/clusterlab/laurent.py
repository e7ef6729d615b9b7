"""Exact sparse multivariate Laurent polynomials over the integers.

A polynomial of rank n is a mapping from exponent vectors (tuples of n
integers, possibly negative) to nonzero integer coefficients.  All
arithmetic is exact; coefficients are Python ints and never overflow.

    x1^2*x2^-1 + 3   (rank 2)  ->  {(2, -1): 1, (0, 0): 3}

The zero polynomial has an empty term mapping.  Terms are kept in a
canonical order (ascending lexicographic on reversed exponent vectors,
so x1 sorts before x2 and constants come first), and two polynomials are
equal iff their canonical string renderings are equal.

Rendering grammar (used in JSON payloads and CLI output):

    poly    := term (' + ' term | ' - ' term)*
    term    := int | [int '*'] factor ('*' factor)*
    factor  := 'x' INDEX | 'x' INDEX '^' EXPONENT      (EXPONENT may be negative)

e.g. ``(x1^-1)*(1 + x2)`` renders expanded as ``x1^-1 + x1^-1*x2``.
The parser additionally accepts parentheses, ``-`` prefixes, ``/`` (exact
division) and ``^`` on parenthesized subexpressions, so hand-written
inputs like ``(1+x2)/x1`` are accepted.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class LaurentError(Exception):
    """Base class for Laurent arithmetic errors."""


class RankMismatch(LaurentError):
    """Operands live in Laurent rings of different ranks."""


class DivisionByZero(LaurentError):
    """Exact division by the zero polynomial."""


class NotDivisible(LaurentError):
    """No exact quotient exists; during seed mutation this signals an
    invalid seed or an engine bug."""


class ParseError(LaurentError):
    """Malformed Laurent expression string."""


Exponents = tuple[int, ...]


class Laurent:
    """An immutable Laurent polynomial with integer coefficients.

    Values are hashable and safe to share between threads; every
    operation returns a new polynomial.
    """

    __slots__ = ("rank", "_terms", "_hash")

    rank: int
    _terms: dict[Exponents, int]

    def __init__(self, rank: int, terms: Mapping[Exponents, int] | None = None):
        clean: dict[Exponents, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff == 0:
                    continue
                if len(exp) != rank:
                    raise RankMismatch(
                        f"exponent vector {exp} does not match rank {rank}"
                    )
                clean[tuple(exp)] = coeff
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent polynomials are immutable")

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(rank: int) -> "Laurent":
        return Laurent(rank, {})

    @staticmethod
    def const(rank: int, c: int) -> "Laurent":
        return Laurent(rank, {(0,) * rank: c})

    @staticmethod
    def one(rank: int) -> "Laurent":
        return Laurent.const(rank, 1)

    @staticmethod
    def variable(rank: int, i: int) -> "Laurent":
        """The generator x_{i+1} (0-based index i)."""
        if not 0 <= i < rank:
            raise IndexError(f"variable index {i} out of range for rank {rank}")
        exp = [0] * rank
        exp[i] = 1
        return Laurent(rank, {tuple(exp): 1})

    @staticmethod
    def monomial(rank: int, exponents: Iterable[int], coeff: int = 1) -> "Laurent":
        return Laurent(rank, {tuple(exponents): coeff})

    # ------------------------------------------------------------------
    # inspection

    def items(self) -> Iterator[tuple[Exponents, int]]:
        """Terms in canonical order."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0][::-1]))

    def coefficient(self, exponents: Iterable[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.rank: 1}

    def term_count(self) -> int:
        return len(self._terms)

    def classify(self) -> tuple[str, int | None, Exponents | None]:
        """Classify as ('zero', None, None), ('monomial', coeff, exponents)
        or ('polynomial', None, None)."""
        if not self._terms:
            return ("zero", None, None)
        if len(self._terms) == 1:
            ((exp, coeff),) = self._terms.items()
            return ("monomial", coeff, exp)
        return ("polynomial", None, None)

    def is_positive(self) -> bool:
        """True iff every coefficient is strictly positive."""
        return all(c > 0 for c in self._terms.values())

    def degrees(self) -> tuple[tuple[int, int], ...]:
        """Per-variable (min, max) exponent over the support; zero poly
        gives an empty tuple."""
        if not self._terms:
            return ()
        cols = list(zip(*self._terms.keys()))
        return tuple((min(col), max(col)) for col in cols)

    # ------------------------------------------------------------------
    # ring operations

    def _check_rank(self, other: "Laurent") -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(self.rank, other)
        self._check_rank(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = out.get(exp, 0) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Laurent(self.rank, out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(self.rank, other)
        return self + (-other)

    def __rsub__(self, other: "Laurent | int") -> "Laurent":
        return (-self) + other

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            if other == 0:
                return Laurent.zero(self.rank)
            return Laurent(self.rank, {e: c * other for e, c in self._terms.items()})
        self._check_rank(other)
        out: dict[Exponents, int] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exp, 0) + ca * cb
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Laurent(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            kind, coeff, exp = self.classify()
            if kind != "monomial" or coeff not in (1, -1):
                raise NotDivisible("negative powers only for unit monomials")
            inv = Laurent.monomial(self.rank, tuple(-e for e in exp), coeff)
            return inv ** (-n)
        result = Laurent.one(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(self.rank, other)
        return divide_exact(self, other)

    # ------------------------------------------------------------------
    # exact division

    def _leading(self) -> tuple[Exponents, int]:
        """Lexicographically largest exponent vector and its coefficient."""
        exp = max(self._terms)
        return exp, self._terms[exp]

    # ------------------------------------------------------------------
    # equality / rendering

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == Laurent.const(self.rank, other)._terms
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rank, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.items():
            factors = []
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append((" + " if coeff > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Laurent({self.rank}, '{self}')"


def divide_exact(a: Laurent, b: Laurent) -> Laurent:
    """Return q with q*b == a exactly, or raise NotDivisible.

    Division is performed by iterated leading-term elimination under the
    lexicographic order.  The quotient's support is confined a priori to
    the per-variable box [min_k(a)-min_k(b), max_k(a)-max_k(b)]; any
    elimination step that would leave the box proves inexactness, which
    bounds the loop and guarantees termination.  Division by a unit-
    coefficient monomial always succeeds.
    """
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs rank {b.rank}")
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return a

    if b.term_count() == 1:
        (bexp, bcoeff), = b._terms.items()
        out: dict[Exponents, int] = {}
        for exp, coeff in a._terms.items():
            q, r = divmod(coeff, bcoeff)
            if r:
                raise NotDivisible(f"coefficient {coeff} not divisible by {bcoeff}")
            out[tuple(x - y for x, y in zip(exp, bexp))] = q
        return Laurent(a.rank, out)

    box = tuple(
        (lo_a - lo_b, hi_a - hi_b)
        for (lo_a, hi_a), (lo_b, hi_b) in zip(a.degrees(), b.degrees())
    )
    bexp, bcoeff = b._leading()
    quotient: dict[Exponents, int] = {}
    rem = a
    while not rem.is_zero():
        rexp, rcoeff = rem._leading()
        qexp = tuple(x - y for x, y in zip(rexp, bexp))
        if any(not lo <= e <= hi for e, (lo, hi) in zip(qexp, box)):
            raise NotDivisible("leading term outside quotient support box")
        qcoeff, r = divmod(rcoeff, bcoeff)
        if r:
            raise NotDivisible(f"leading coefficient {rcoeff} not divisible by {bcoeff}")
        quotient[qexp] = qcoeff
        rem = rem - b * Laurent.monomial(a.rank, qexp, qcoeff)
    return Laurent(a.rank, quotient)


def embed(p: Laurent, rank: int, offset: int) -> Laurent:
    """Re-express p in a larger ambient ring, mapping x_i to x_{i+offset}."""
    if offset < 0 or p.rank + offset > rank:
        raise RankMismatch(f"cannot embed rank {p.rank} at offset {offset} into rank {rank}")
    pad_left = (0,) * offset
    pad_right = (0,) * (rank - p.rank - offset)
    return Laurent(rank, {pad_left + exp + pad_right: c for exp, c in p._terms.items()})


def support_block(p: Laurent) -> set[int]:
    """Indices of ambient variables that actually occur in p."""
    used: set[int] = set()
    for exp in p._terms:
        for i, e in enumerate(exp):
            if e:
                used.add(i)
    return used


# ----------------------------------------------------------------------
# expression parsing

class _Parser:
    """Recursive-descent parser for the rendering grammar plus
    parentheses, unary minus, ``/`` and ``^`` on subexpressions."""

    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.pos = 0

    def parse(self) -> Laurent:
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return value

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Laurent:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        value = self.product() * sign
        while True:
            op = self.peek()
            if op == "+":
                self.pos += 1
                value = value + self.product()
            elif op == "-":
                self.pos += 1
                value = value - self.product()
            else:
                return value

    def product(self) -> Laurent:
        value = self.power()
        while True:
            op = self.peek()
            if op == "*":
                self.pos += 1
                value = value * self.power()
            elif op == "/":
                self.pos += 1
                value = divide_exact(value, self.power())
            else:
                return value

    def power(self) -> Laurent:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.integer()
        return base

    def atom(self) -> Laurent:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise ParseError(f"expected ')' at {self.pos}")
            self.pos += 1
            return value
        if ch == "x":
            self.pos += 1
            idx = self.integer()
            if not 1 <= idx <= self.rank:
                raise ParseError(f"variable x{idx} out of range for rank {self.rank}")
            return Laurent.variable(self.rank, idx - 1)
        if ch.isdigit():
            return Laurent.const(self.rank, self.integer())
        raise ParseError(f"unexpected character {ch!r} at {self.pos}")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            raise ParseError(f"expected integer at {start}")
        return int(self.text[start:self.pos])


def parse(text: str, rank: int) -> Laurent:
    """Parse a Laurent expression string in the documented grammar."""
    return _Parser(text, rank).parse()
