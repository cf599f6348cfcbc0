"""Exact multivariate polynomials over the rationals.

Polynomials are immutable. Terms are kept sparse and sorted by graded
lexicographic order (highest first), so iteration, printing and hashing are
deterministic.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .exceptions import ArityError, ConstantComponentError, ParseError

Exponent = tuple  # tuple of non-negative ints, length == arity

#: Total degree of the zero polynomial.
ZERO_DEGREE = float("-inf")


def _grlex_key(exp):
    return (sum(exp), exp)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class MultiPoly:
    """Sparse polynomial in ``arity`` variables with ``Fraction`` coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if arity < 1:
            raise ArityError("arity must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity:
                raise ArityError(f"exponent {exp} does not have arity {arity}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0) + _as_fraction(c)
        self.arity = arity
        self._terms = tuple(
            sorted(((e, c) for e, c in acc.items() if c != 0), key=lambda t: _grlex_key(t[0]), reverse=True)
        )
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> MultiPoly:
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, c) -> MultiPoly:
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity: int, index: int) -> MultiPoly:
        exp = [0] * arity
        exp[index] = 1
        return cls(arity, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> MultiPoly:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> MultiPoly:
        """Univariate polynomial from ascending coefficients ``c0 + c1*x + ...``."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def _raw(cls, arity, terms_tuple):
        obj = cls.__new__(cls)
        obj.arity = arity
        obj._terms = terms_tuple
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self):
        """Maximal total degree; ``ZERO_DEGREE`` (minus infinity) for zero."""
        if not self._terms:
            return ZERO_DEGREE
        return sum(self._terms[0][0])

    def degree_in(self, index: int):
        if not self._terms:
            return ZERO_DEGREE
        return max(e[index] for e, _ in self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        exp = tuple(exp)
        for e, c in self._terms:
            if e == exp:
                return c
        return Fraction(0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self._terms:
            return True
        degs = {sum(e) for e, _ in self._terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self) -> bool:
        return self.total_degree() <= 0

    def univariate_coeffs(self) -> list[Fraction]:
        """Ascending coefficient list of an arity-1 polynomial (``[]`` for zero)."""
        if self.arity != 1:
            raise ArityError("univariate_coeffs needs an arity-1 polynomial")
        if not self._terms:
            return []
        out = [Fraction(0)] * (self._terms[0][0][0] + 1)
        for (k,), c in self._terms:
            out[k] = c
        return out

    # -- ring operations ----------------------------------------------------

    def _check(self, other: MultiPoly):
        if other.arity != self.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return MultiPoly(self.arity, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.arity, tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> MultiPoly:
        c = _as_fraction(c)
        if c == 0:
            return MultiPoly.zero(self.arity)
        return MultiPoly._raw(self.arity, tuple((e, c * v) for e, v in self._terms))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        acc: dict = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly(self.arity, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == MultiPoly.constant(self.arity, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, self._terms))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; exact when the point is rational.

        Any values supporting ``+``, ``*`` and ``**`` work, so complex or numpy
        inputs are accepted as well.
        """
        if len(point) != self.arity:
            raise ArityError(f"point has length {len(point)}, expected {self.arity}")
        total = 0
        for exp, c in self._terms:
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x**k
            total = total + term
        return total

    __call__ = evaluate

    def substitute(self, polys: Sequence[MultiPoly]) -> MultiPoly:
        """Compose: replace variable ``i`` by ``polys[i]`` (all of a common arity)."""
        if len(polys) != self.arity:
            raise ArityError("one substitute polynomial per variable is required")
        target = polys[0].arity
        for p in polys:
            if p.arity != target:
                raise ArityError("substitute polynomials must share an arity")
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = polys[i] ** k
            return powers[key]

        acc = MultiPoly.zero(target)
        for exp, c in self._terms:
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def partial_evaluate(self, index: int, value) -> MultiPoly:
        """Substitute a rational ``value`` for variable ``index``; arity drops by one."""
        if self.arity == 1:
            raise ArityError("cannot drop the only variable")
        value = _as_fraction(value)
        acc: dict = {}
        for exp, c in self._terms:
            k = exp[index]
            e = exp[:index] + exp[index + 1:]
            acc[e] = acc.get(e, 0) + c * value**k
        return MultiPoly(self.arity - 1, acc)

    # -- printing -----------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self.arity)
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms:
            factors = []
            for name, k in zip(names, exp):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.to_str()!r})"


def default_names(arity: int) -> list[str]:
    return [f"z{i + 1}" for i in range(arity)]


def homogeneous_names(n: int) -> list[str]:
    return [f"Z{i}" for i in range(n + 1)]


# -- homogenization ----------------------------------------------------------


def homogenize(p: MultiPoly, d: int | None = None) -> MultiPoly:
    """Homogenize to degree ``d`` with a new leading variable ``Z0``.

    The term ``c*z^a`` becomes ``c*Z0^(d-|a|)*Z^a``.
    """
    if p.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    deg = p.total_degree()
    if d is None:
        d = deg
    if d < deg:
        raise ValueError(f"target degree {d} is below the total degree {deg}")
    return MultiPoly(p.arity + 1, {(d - sum(e),) + e: c for e, c in p})


def dehomogenize(P: MultiPoly) -> MultiPoly:
    """Set the first variable to 1."""
    return P.partial_evaluate(0, 1)


def leading_form(p: MultiPoly) -> MultiPoly:
    """Sum of the terms of maximal total degree."""
    if p.is_zero():
        raise ValueError("zero polynomial has no leading form")
    d = p.total_degree()
    return MultiPoly(p.arity, {e: c for e, c in p if sum(e) == d})


# -- polynomial maps ---------------------------------------------------------


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map ``C^n -> C^n`` with non-constant components."""

    components: tuple
    names: tuple = None
    change: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        n = len(comps)
        if n == 0:
            raise ArityError("a polynomial map needs at least one component")
        for i, p in enumerate(comps):
            if p.arity != n:
                raise ArityError(f"component {i + 1} has arity {p.arity}, expected {n}")
            if p.is_constant():
                raise ConstantComponentError(f"component {i + 1} is constant")
        names = tuple(self.names) if self.names is not None else tuple(default_names(n))
        if len(names) != n:
            raise ArityError("one variable name per coordinate is required")
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def degrees(self) -> tuple:
        return tuple(p.total_degree() for p in self.components)

    @property
    def bezout(self) -> int:
        return prod(self.degrees)

    def homogenized(self) -> list[MultiPoly]:
        return [homogenize(p) for p in self.components]

    def __call__(self, z: Sequence):
        return tuple(p.evaluate(z) for p in self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return self.n

    def to_text(self, labels: Sequence[str] | None = None) -> str:
        labels = labels or [f"F{i + 1}" for i in range(self.n)]
        lines = ["vars: " + " ".join(self.names)]
        lines += [f"{lab} = {p.to_str(self.names)}" for lab, p in zip(labels, self.components)]
        return "\n".join(lines) + "\n"


def _det_int(matrix):
    # small integer matrices only (coordinate changes)
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    return sum(
        (-1) ** j * matrix[0][j] * _det_int([row[:j] + row[j + 1:] for row in matrix[1:]]) for j in range(n)
    )


def apply_linear_change(F: PolyMap, matrix: Sequence[Sequence[int]]) -> PolyMap:
    """Return ``z -> F(A z)`` for an invertible matrix ``A``."""
    n = F.n
    A = [list(row) for row in matrix]
    if len(A) != n or any(len(r) != n for r in A):
        raise ArityError("change of coordinates must be n x n")
    if _det_int(A) == 0:
        raise ValueError("change of coordinates is singular")
    lin = [MultiPoly(n, {tuple(int(i == j) for i in range(n)): A[k][j] for j in range(n)}) for k in range(n)]
    comps = [p.substitute(lin) for p in F.components]
    return PolyMap(comps, F.names, change=tuple(tuple(r) for r in A))


def random_linear_change(F: PolyMap, seed=None, bound: int = 3) -> PolyMap:
    """Apply a random invertible small-integer change of coordinates.

    The matrix used is kept on the result as ``change``.
    """
    rng = random.Random(seed)
    n = F.n
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if _det_int(A) != 0:
            return apply_linear_change(F, A)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class _Parser:
    def __init__(self, text, var_index, line, col0):
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            col = col0 + m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), col))
            elif m.group(2):
                self.tokens.append(("id", m.group(2), col))
            else:
                self.tokens.append(("op", m.group(3), col))
            pos = m.end()
        self.end_col = col0 + len(text)
        self.i = 0
        self.vars = var_index
        self.arity = len(var_index)
        self.line = line

    def error(self, msg, col=None):
        if col is None:
            col = self.tokens[self.i][2] if self.i < len(self.tokens) else self.end_col
        raise ParseError(msg, self.line, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take_op(self, op):
        t = self.peek()
        if t and t[0] == "op" and t[1] == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.peek() is None:
            self.error("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            if self.take_op("+"):
                p = p + self.term()
            elif self.take_op("-"):
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while self.take_op("*"):
            p = p * self.factor()
        return p

    def power(self, p):
        if self.take_op("^"):
            t = self.peek()
            if t is None or t[0] != "num":
                self.error("expected a non-negative integer exponent")
            self.i += 1
            p = p ** t[1]
        return p

    def factor(self):
        t = self.peek()
        if t is None:
            self.error("unexpected end of expression")
        kind, val, col = t
        if kind == "op" and val == "-":
            # negative literal, or unary minus on any factor
            self.i += 1
            return -self.factor()
        if kind == "num":
            self.i += 1
            num = val
            if self.take_op("/"):
                t2 = self.peek()
                if t2 is None or t2[0] != "num":
                    self.error("expected denominator")
                self.i += 1
                if t2[1] == 0:
                    self.error("zero denominator", t2[2])
                return MultiPoly.constant(self.arity, Fraction(num, t2[1]))
            return MultiPoly.constant(self.arity, num)
        if kind == "id":
            if val not in self.vars:
                self.error(f"unknown variable {val!r}", col)
            self.i += 1
            return self.power(MultiPoly.variable(self.arity, self.vars[val]))
        if kind == "op" and val == "(":
            self.i += 1
            p = self.expr()
            if not self.take_op(")"):
                self.error("expected ')'")
            return self.power(p)
        self.error(f"unexpected token {val!r}", col)


def parse_polynomial(text: str, names: Sequence[str], line: int = 1, column: int = 1) -> MultiPoly:
    var_index = {name: i for i, name in enumerate(names)}
    return _Parser(text, var_index, line, column).parse()


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_equations(text: str):
    """Parse the system grammar without checking map-level invariants.

    Returns ``(names, labels, polys)``.
    """
    names = None
    labels, polys = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if names is None:
            stripped = line.lstrip()
            if not stripped.startswith("vars:"):
                raise ParseError("expected 'vars:' declaration", lineno, len(line) - len(stripped) + 1)
            names = stripped[5:].split()
            if not names:
                raise ParseError("no variables declared", lineno, len(line) + 1)
            for v in names:
                if not _IDENT.match(v):
                    raise ParseError(f"invalid identifier {v!r}", lineno, line.find(v) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, 1)
            continue
        if "=" not in line:
            raise ParseError("expected '<name> = <expr>'", lineno, 1)
        lhs, rhs = line.split("=", 1)
        label = lhs.strip()
        if not _IDENT.match(label):
            raise ParseError(f"invalid equation name {label!r}", lineno, 1)
        polys.append(parse_polynomial(rhs, names, lineno, len(lhs) + 2))
        labels.append(label)
    if names is None:
        raise ParseError("missing 'vars:' declaration", 1, 1)
    return names, labels, polys


def parse_system(text: str) -> PolyMap:
    names, labels, polys = parse_equations(text)
    if len(polys) != len(names):
        raise ArityError(f"{len(polys)} polynomials for {len(names)} variables")
    for label, p in zip(labels, polys):
        if p.is_constant():
            raise ConstantComponentError(f"component {label} is constant")
    return PolyMap(polys, names)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
