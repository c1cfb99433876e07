"""Sparse polynomials in the Cox ring with exact rational coefficients."""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import lattice
from .lattice import DegreeClass, EulerField, Fan

Monomial = Tuple[int, ...]


class ParseError(ValueError):
    pass


class Polynomial:
    """Immutable mapping exponent vector -> nonzero Fraction."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction | int] | Iterable = ()):
        self.nvars = nvars
        clean: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length, expected {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = Fraction(c)
            if c:
                s = clean.get(mono, 0) + c
                if s:
                    clean[mono] = s
                else:
                    clean.pop(mono, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in rings with different variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def shift(self, exponents: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial x^exponents."""
        return Polynomial(self.nvars, {tuple(a + b for a, b in zip(m, exponents)): c
                                       for m, c in self.terms.items()})

    def divide_monomial(self, exponents: Sequence[int]) -> Optional["Polynomial"]:
        """Exact quotient by x^exponents, or None if some term is not divisible."""
        out = {}
        for m, c in self.terms.items():
            q = tuple(a - b for a, b in zip(m, exponents))
            if any(e < 0 for e in q):
                return None
            out[q] = c
        return Polynomial(self.nvars, out)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __call__(self, point: Sequence):
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def to_string(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if factors:
                body = "*".join(([str(mag)] if mag != 1 else []) + factors)
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.to_string([f'x{i}' for i in range(self.nvars)])})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def partial(p: Polynomial, i: int) -> Polynomial:
    """Formal derivative with respect to variable ``i``."""
    out = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            dm = m[:i] + (e - 1,) + m[i + 1:]
            out[dm] = c * e
    return Polynomial(p.nvars, out)


def toric_derivative(p: Polynomial, i: int) -> Polynomial:
    """x_i * dp/dx_i, i.e. every term scaled by its exponent in x_i."""
    return Polynomial(p.nvars, {m: c * m[i] for m, c in p.terms.items() if m[i]})


def euler_apply(theta: EulerField, f: Polynomial) -> Polynomial:
    """sum_rho b_rho x_rho df/dx_rho."""
    out = {}
    for m, c in f.terms.items():
        w = sum((b * e for b, e in zip(theta.b, m)), Fraction(0))
        if w:
            out[m] = c * w
    return Polynomial(f.nvars, out)


def is_homogeneous(fan: Fan, p: Polynomial) -> Optional[DegreeClass]:
    """Common class of all terms, or None. The zero polynomial has no degree."""
    deg = None
    for m in p.terms:
        d = lattice.degree_of(fan, m)
        if deg is None:
            deg = d
        elif d != deg:
            return None
    return deg


# ---------------------------------------------------------------------------
# Parsing

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse(text: str, variable_names: Sequence[str]) -> Polynomial:
    """Parse ``+ - * / ^`` expressions with integer and rational literals.

    Division is only allowed by nonzero constants; exponents must be
    nonnegative integer literals (``^`` and ``**`` are both accepted).
    """
    names = list(variable_names)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names")
    index = {name: i for i, name in enumerate(names)}
    nvars = len(names)
    src = text.replace("^", "**").strip()
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed expression {text!r}: {exc.msg} at column {exc.offset}") from None

    def const_value(node) -> Optional[Fraction]:
        p = walk(node)
        if all(not any(m) for m in p.terms):
            return p.coefficient((0,) * nvars)
        return None

    def walk(node) -> Polynomial:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"unsupported literal {node.value!r}; use integers or p/q")
            return Polynomial.constant(nvars, node.value)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ParseError(f"unknown variable {node.id!r}; expected one of {names}")
            return Polynomial.variable(nvars, index[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                k = const_value(node.right)
                if k is None or k.denominator != 1:
                    raise ParseError("exponent must be an integer constant")
                if k < 0:
                    raise ParseError(f"negative exponent {k}")
                return base ** int(k)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            k = const_value(node.right)
            if k is None:
                raise ParseError("division only by constants")
            if k == 0:
                raise ParseError("division by zero")
            return left.scale(1 / k)
        raise ParseError(f"unsupported syntax in {text!r}: {type(node).__name__}")

    return walk(tree.body)


# ---------------------------------------------------------------------------
# Torus charts

@dataclass(frozen=True)
class ChartPolynomial:
    """Numeric evaluator of a polynomial with x_rho = 1 for rho outside a cone.

    Called with an array of shape ``(N, len(chart))`` of complex chart
    coordinates, returns shape ``(N,)``.
    """
    chart: Tuple[int, ...]
    exponents: np.ndarray  # (terms, len(chart))
    coefficients: np.ndarray  # (terms,)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        u = np.atleast_2d(np.asarray(u, dtype=complex))
        out = np.zeros(u.shape[0], dtype=complex)
        for e, c in zip(self.exponents, self.coefficients):
            t = np.full(u.shape[0], c, dtype=complex)
            for k, ek in enumerate(e):
                if ek:
                    t = t * u[:, k] ** int(ek)
            out += t
        return out


def dehomogenize(fan: Fan, p: Polynomial, chart_cone_I: Sequence[int]) -> ChartPolynomial:
    I = tuple(chart_cone_I)
    if len(I) != fan.rank or lattice.det_nI(fan, sorted(I)) == 0:
        raise ValueError(f"chart {I} does not consist of {fan.rank} independent rays")
    collected: Dict[Tuple[int, ...], Fraction] = {}
    for m, c in p.terms.items():
        e = tuple(m[i] for i in I)
        collected[e] = collected.get(e, 0) + c
    items = sorted((e, c) for e, c in collected.items() if c)
    exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), len(I))
    coefs = np.array([float(c) for _, c in items], dtype=complex)
    return ChartPolynomial(I, exps, coefs)
