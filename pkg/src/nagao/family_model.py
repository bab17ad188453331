"""Curve fibrations over P^1_Q: parsing, validation, reduction mod p.

A family is given by one polynomial y^2 = F(x, t) (hyperelliptic or constant)
or a pair y^2 = F1(x, t), z^2 = F2(x, t) (multicover).  The module owns the
family file format, the bad-prime set over which all averaging is skipped,
and the specialization of the family to a fiber over c in P^1(F_p).
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .prime_field import FieldCtx, is_prime, primes_in_range


class ParseError(ValueError):
    """Malformed expression or family file; carries line/column."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(msg + loc)
        self.line = line
        self.col = col


class ValidationError(ValueError):
    """Structurally valid file describing an inconsistent family."""


class BadPrime(ValueError):
    """Operation requested at a prime in the family's bad set."""


INFINITY = "inf"  # marker for the point at infinity of P^1


# ---------------------------------------------------------------------------
# Bivariate integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BivarPoly:
    """Integer polynomial in x and t, stored as sorted ((i, j), coeff) terms.

    i is the x-degree, j the t-degree; zero coefficients are never stored.
    """

    terms: tuple[tuple[int, int, int], ...]

    @staticmethod
    def from_dict(coeffs: dict[tuple[int, int], int]) -> "BivarPoly":
        terms = tuple(
            sorted((i, j, c) for (i, j), c in coeffs.items() if c != 0)
        )
        return BivarPoly(terms)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, j, c in self.terms}

    @property
    def deg_x(self) -> int:
        return max((i for i, _, _ in self.terms), default=-1)

    @property
    def deg_t(self) -> int:
        return max((j for _, j, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        d = self.as_dict()
        for (i, j), c in other.as_dict().items():
            d[(i, j)] = d.get((i, j), 0) + c
        return BivarPoly.from_dict(d)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly(tuple((i, j, -c) for i, j, c in self.terms))

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        d: dict[tuple[int, int], int] = {}
        for i1, j1, c1 in self.terms:
            for i2, j2, c2 in other.terms:
                key = (i1 + i2, j1 + j2)
                d[key] = d.get(key, 0) + c1 * c2
        return BivarPoly.from_dict(d)

    def __pow__(self, n: int) -> "BivarPoly":
        if n < 0:
            raise ValueError("negative exponent")
        out = BivarPoly.from_dict({(0, 0): 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def dx(self) -> "BivarPoly":
        """Partial derivative with respect to x."""
        return BivarPoly.from_dict(
            {(i - 1, j): i * c for i, j, c in self.terms if i > 0}
        )

    def leading_x_coeff(self) -> tuple[int, ...]:
        """Coefficient of x^deg_x as a univariate integer polynomial in t."""
        d = self.deg_x
        out: dict[int, int] = {}
        for i, j, c in self.terms:
            if i == d:
                out[j] = c
        return _dense(out)

    def specialize_t(self, c: int, p: int) -> tuple[int, ...]:
        """Coefficients (ascending in x) of F(x, c) mod p, trailing zeros trimmed."""
        out = [0] * (self.deg_x + 1)
        for i, j, coeff in self.terms:
            out[i] = (out[i] + coeff * pow(c, j, p)) % p
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def t_coeff_polys(self) -> list[tuple[int, ...]]:
        """List indexed by t-degree j of ascending-x integer coefficient tuples."""
        by_j: dict[int, dict[int, int]] = {}
        for i, j, c in self.terms:
            by_j.setdefault(j, {})[i] = c
        return [_dense(by_j.get(j, {})) for j in range(self.deg_t + 1)]

    def to_sympy(self, x: sympy.Symbol, t: sympy.Symbol):
        return sympy.Add(*[c * x**i * t**j for i, j, c in self.terms])

    def render(self) -> str:
        """Pretty-print in the grammar accepted by parse_poly."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, j, c in sorted(self.terms, key=lambda s: (-s[0], -s[1])):
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("t" if j == 1 else f"t^{j}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)


def _dense(by_deg: dict[int, int]) -> tuple[int, ...]:
    if not by_deg:
        return ()
    out = [0] * (max(by_deg) + 1)
    for d, c in by_deg.items():
        out[d] = c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# Expression parser: integers, x, t, + - * ^, parentheses, unary minus
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xt])|(\^)|(\*)|([+-])|([()])|(.))")


def _tokenize(text: str, line: int) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        col = m.start(m.lastindex) + 1
        tok = m.group(m.lastindex)
        kind = {1: "int", 2: "var", 3: "pow", 4: "mul", 5: "addop", 6: "paren"}.get(
            m.lastindex
        )
        if kind is None:
            raise ParseError(f"unexpected character {tok!r}", line, col)
        tokens.append((kind, tok, col))
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _ExprParser:
    """Recursive descent: ^ binds tightest, then *, then + and -."""

    def __init__(self, text: str, line: int = 0):
        self.tokens = _tokenize(text, line)
        self.pos = 0
        self.line = line

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg: str):
        _, tok, col = self.peek()
        raise ParseError(f"{msg} (found {tok!r})", self.line, col)

    def parse(self) -> BivarPoly:
        expr = self.sum()
        if self.peek()[0] != "end":
            self.fail("trailing input")
        return expr

    def sum(self) -> BivarPoly:
        sign = 1
        while self.peek()[0] == "addop":
            if self.take()[1] == "-":
                sign = -sign
        acc = self.product()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "addop":
            op = self.take()[1]
            term = self.product()
            acc = acc + term if op == "+" else acc - term
        return acc

    def product(self) -> BivarPoly:
        acc = self.power()
        while self.peek()[0] == "mul":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> BivarPoly:
        base = self.atom()
        if self.peek()[0] == "pow":
            self.take()
            kind, tok, _ = self.peek()
            if kind != "int":
                self.fail("exponent must be an integer literal")
            self.take()
            return base ** int(tok)
        return base

    def atom(self) -> BivarPoly:
        kind, tok, _ = self.peek()
        if kind == "int":
            self.take()
            return BivarPoly.from_dict({(0, 0): int(tok)})
        if kind == "var":
            self.take()
            key = (1, 0) if tok == "x" else (0, 1)
            return BivarPoly.from_dict({key: 1})
        if kind == "addop" and tok == "-":
            self.take()
            return -self.atom()
        if kind == "paren" and tok == "(":
            self.take()
            inner = self.sum()
            kind, tok, _ = self.peek()
            if tok != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        self.fail("expected a term")


def parse_poly(text: str, line: int = 0) -> BivarPoly:
    """Parse an integer polynomial expression in x and t."""
    return _ExprParser(text, line).parse()


# ---------------------------------------------------------------------------
# Family specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InfinityRule:
    """How the fiber over t = infinity (and, for affine_plus, every finite
    fiber's completion) is handled.  kind in {trace_zero, affine_plus, skip}."""

    kind: str
    nu: int = 0
    m: int = 1


@dataclass(frozen=True)
class TraceSpec:
    """Constant part of the Jacobian, as a product of Jacobians of explicit
    curves y^2 = G_i(x) over Q; empty tuple means trivial trace."""

    curves: tuple[tuple[int, ...], ...] = ()

    def is_trivial(self) -> bool:
        return not self.curves


@dataclass(frozen=True)
class MRule:
    """Rational-component count of a singular fiber as a function of p.

    kinds: const m; 'chi': m_yes if chi_p(d) == want else m_no;
    'mod':  m_yes if p % mod == rem else m_no.
    """

    kind: str
    m: int = 1
    d: int = 0
    want: int = 1
    mod: int = 0
    rem: int = 0
    m_yes: int = 0
    m_no: int = 0

    def value(self, p: int) -> int:
        if self.kind == "const":
            return self.m
        if self.kind == "chi":
            chi = 0 if self.d % p == 0 else (
                1 if pow(self.d % p, (p - 1) // 2, p) == 1 else -1
            )
            return self.m_yes if chi == self.want else self.m_no
        if self.kind == "mod":
            return self.m_yes if p % self.mod == self.rem else self.m_no
        raise ValueError(f"unknown m-rule kind {self.kind}")


@dataclass(frozen=True)
class FiberDescriptor:
    label: str
    n: int
    orbits: int
    m_rule: MRule


@dataclass(frozen=True)
class FiberConfiguration:
    """Declared combinatorics of the singular fibers: total geometric
    components n_c, Galois orbit counts, and per-prime rational-component
    rules.  User-declared, never inferred from point counts."""

    fibers: tuple[FiberDescriptor, ...] = ()


@dataclass(frozen=True)
class FamilySpec:
    name: str
    kind: str  # hyperelliptic | multicover | constant
    polys: tuple[BivarPoly, ...]
    genus: int
    trace: TraceSpec
    infinity_rule: InfinityRule
    extra_bad_primes: frozenset[int] = frozenset()
    fiber_config: FiberConfiguration | None = None


@dataclass(frozen=True)
class FiberModel:
    """Specialization of the family at a single point of P^1(F_p).

    c is None for the point at infinity.  polys hold ascending-x coefficients
    mod p, one tuple per cover; generic_deg the x-degrees over Q(t)."""

    c: int | None
    polys: tuple[tuple[int, ...], ...]
    generic_deg: tuple[int, ...]
    kind: str
    rule_kind: str = "trace_zero"
    nu: int = 0  # declared points at infinity for affine_plus families
    m_declared: int = 1

    @property
    def at_infinity(self) -> bool:
        return self.c is None


# ---------------------------------------------------------------------------
# Validation helpers (sympy only at family-load time)
# ---------------------------------------------------------------------------

_x, _t = sympy.symbols("x t")


def _check_squarefree_generic(poly: BivarPoly, where: str) -> None:
    f = sympy.Poly(poly.to_sympy(_x, _t), _x, _t)
    g = sympy.gcd(f, f.diff(_x))
    if sympy.Poly(g, _x, _t).degree(_x) > 0:
        raise ValidationError(f"{where}: generic fiber polynomial is not squarefree in x over Q(t)")


def _check_univar_squarefree(coeffs: tuple[int, ...], where: str) -> None:
    f = sympy.Poly(list(reversed(coeffs)), _x)
    if sympy.degree(sympy.gcd(f, f.diff(_x)), _x) > 0:
        raise ValidationError(f"{where}: trace curve polynomial is not squarefree over Q")


def validate_family(spec: FamilySpec) -> FamilySpec:
    if spec.kind not in ("hyperelliptic", "multicover", "constant"):
        raise ValidationError(f"unknown kind {spec.kind!r}")
    if spec.genus < 1:
        raise ValidationError("genus must be >= 1")
    n_polys = len(spec.polys)
    if spec.kind == "multicover":
        if n_polys != 2:
            raise ValidationError("multicover requires exactly 2 poly lines")
    elif n_polys != 1:
        raise ValidationError(f"kind {spec.kind} requires exactly 1 poly line")
    if spec.kind == "constant":
        for poly in spec.polys:
            if poly.deg_t > 0:
                raise ValidationError("constant family must not involve t")
    for poly in spec.polys:
        if poly.deg_x < 1:
            raise ValidationError("each cover must have positive x-degree")
        _check_squarefree_generic(poly, spec.name)
    if spec.kind == "multicover":
        _check_squarefree_generic(spec.polys[0] * spec.polys[1], spec.name)
    if spec.kind in ("hyperelliptic", "constant"):
        d = spec.polys[0].deg_x
        if d not in (2 * spec.genus + 1, 2 * spec.genus + 2):
            raise ValidationError(
                f"genus {spec.genus} inconsistent with x-degree {d} "
                f"(expected {2 * spec.genus + 1} or {2 * spec.genus + 2})"
            )
    for curve in spec.trace.curves:
        _check_univar_squarefree(curve, spec.name)
    if spec.infinity_rule.kind not in ("trace_zero", "affine_plus", "skip"):
        raise ValidationError(f"unknown infinity rule {spec.infinity_rule.kind!r}")
    if spec.kind == "multicover" and spec.infinity_rule.kind != "affine_plus":
        raise ValidationError(
            "multicover families must declare 'infinity affine_plus <nu> <m>'"
        )
    return spec


# ---------------------------------------------------------------------------
# Family file format
# ---------------------------------------------------------------------------

_M_RULE_CONST = re.compile(r"^\s*(\d+)\s*$")
_M_RULE_CHI = re.compile(
    r"^\s*(\d+)\s+if\s+chi\(\s*(-?\d+)\s*\)\s*==\s*(-?1)\s+else\s+(\d+)\s*$"
)
_M_RULE_MOD = re.compile(
    r"^\s*(\d+)\s+if\s+p\s*%\s*(\d+)\s*==\s*(\d+)\s+else\s+(\d+)\s*$"
)


def parse_m_rule(text: str, line: int = 0) -> MRule:
    m = _M_RULE_CONST.match(text)
    if m:
        return MRule(kind="const", m=int(m.group(1)))
    m = _M_RULE_CHI.match(text)
    if m:
        return MRule(
            kind="chi",
            m_yes=int(m.group(1)),
            d=int(m.group(2)),
            want=int(m.group(3)),
            m_no=int(m.group(4)),
        )
    m = _M_RULE_MOD.match(text)
    if m:
        return MRule(
            kind="mod",
            m_yes=int(m.group(1)),
            mod=int(m.group(2)),
            rem=int(m.group(3)),
            m_no=int(m.group(4)),
        )
    raise ParseError(f"unparseable m-rule {text!r}", line)


_FIBER_RE = re.compile(
    r'^(\S+)\s+n=(\d+)\s+orbits=(\d+)\s+m="([^"]*)"\s*$'
)


def parse_family(text: str) -> FamilySpec:
    """Parse the line-oriented family file format; '#' starts a comment."""
    name = None
    kind = None
    polys: list[BivarPoly] = []
    genus = None
    trace_curves: list[tuple[int, ...]] = []
    trace_seen = False
    infinity: InfinityRule | None = None
    extra_bad: set[int] = set()
    fibers: list[FiberDescriptor] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "family":
            m = re.match(r'^"([^"]*)"$', rest)
            if not m:
                raise ParseError('family name must be quoted: family "<name>"', lineno)
            name = m.group(1)
        elif key == "kind":
            kind = rest
        elif key == "poly":
            polys.append(parse_poly(rest, lineno))
        elif key == "genus":
            try:
                genus = int(rest)
            except ValueError:
                raise ParseError(f"genus must be an integer, got {rest!r}", lineno)
        elif key == "trace":
            trace_seen = True
            if rest == "none":
                pass
            elif rest.startswith("curve "):
                poly = parse_poly(rest[len("curve "):], lineno)
                if poly.deg_t > 0:
                    raise ParseError("trace curve must be a polynomial in x only", lineno)
                coeffs = [0] * (poly.deg_x + 1)
                for i, _, c in poly.terms:
                    coeffs[i] = c
                trace_curves.append(tuple(coeffs))
            else:
                raise ParseError(f"trace must be 'none' or 'curve <expr>', got {rest!r}", lineno)
        elif key == "infinity":
            parts = rest.split()
            if parts[0] == "trace_zero" and len(parts) == 1:
                infinity = InfinityRule("trace_zero")
            elif parts[0] == "skip" and len(parts) == 1:
                infinity = InfinityRule("skip")
            elif parts[0] == "affine_plus" and len(parts) == 3:
                try:
                    infinity = InfinityRule("affine_plus", nu=int(parts[1]), m=int(parts[2]))
                except ValueError:
                    raise ParseError("affine_plus takes two integers", lineno)
            else:
                raise ParseError(f"bad infinity rule {rest!r}", lineno)
        elif key == "badprimes":
            for tok in rest.split():
                try:
                    q = int(tok)
                except ValueError:
                    raise ParseError(f"bad prime {tok!r}", lineno)
                if not is_prime(q):
                    raise ParseError(f"badprimes entry {q} is not prime", lineno)
                extra_bad.add(q)
        elif key == "fiber":
            m = _FIBER_RE.match(rest)
            if not m:
                raise ParseError(
                    'fiber line must be: fiber <label> n=<int> orbits=<int> m="<rule>"', lineno
                )
            fibers.append(
                FiberDescriptor(
                    label=m.group(1),
                    n=int(m.group(2)),
                    orbits=int(m.group(3)),
                    m_rule=parse_m_rule(m.group(4), lineno),
                )
            )
        else:
            raise ParseError(f"unknown key {key!r}", lineno)

    if name is None:
        raise ParseError("missing 'family' line")
    if kind is None:
        raise ParseError("missing 'kind' line")
    if genus is None:
        raise ParseError("missing 'genus' line")
    if not trace_seen:
        raise ParseError("missing 'trace' line")
    if infinity is None:
        raise ParseError("missing 'infinity' line")
    for fd in fibers:
        if not 1 <= fd.orbits <= fd.n:
            raise ValidationError(f"fiber {fd.label}: need 1 <= orbits <= n")

    spec = FamilySpec(
        name=name,
        kind=kind,
        polys=tuple(polys),
        genus=genus,
        trace=TraceSpec(tuple(trace_curves)),
        infinity_rule=infinity,
        extra_bad_primes=frozenset(extra_bad),
        fiber_config=FiberConfiguration(tuple(fibers)) if fibers else None,
    )
    return validate_family(spec)


def render_family(spec: FamilySpec) -> str:
    """Inverse of parse_family, up to coefficient normalization."""
    lines = [f'family "{spec.name}"', f"kind {spec.kind}"]
    for poly in spec.polys:
        lines.append(f"poly {poly.render()}")
    lines.append(f"genus {spec.genus}")
    if spec.trace.is_trivial():
        lines.append("trace none")
    else:
        for curve in spec.trace.curves:
            poly = BivarPoly.from_dict({(i, 0): c for i, c in enumerate(curve)})
            lines.append(f"trace curve {poly.render()}")
    rule = spec.infinity_rule
    if rule.kind == "affine_plus":
        lines.append(f"infinity affine_plus {rule.nu} {rule.m}")
    else:
        lines.append(f"infinity {rule.kind}")
    if spec.extra_bad_primes:
        lines.append("badprimes " + " ".join(str(q) for q in sorted(spec.extra_bad_primes)))
    if spec.fiber_config:
        for fd in spec.fiber_config.fibers:
            lines.append(
                f'fiber {fd.label} n={fd.n} orbits={fd.orbits} m="{_render_m_rule(fd.m_rule)}"'
            )
    return "\n".join(lines) + "\n"


def _render_m_rule(rule: MRule) -> str:
    if rule.kind == "const":
        return str(rule.m)
    if rule.kind == "chi":
        return f"{rule.m_yes} if chi({rule.d}) == {rule.want} else {rule.m_no}"
    return f"{rule.m_yes} if p % {rule.mod} == {rule.rem} else {rule.m_no}"


# ---------------------------------------------------------------------------
# Bad primes and discriminant machinery
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=64)
def singular_locus_polys(spec: FamilySpec) -> tuple[tuple[int, ...], ...]:
    """Integer polynomials in t whose roots mod p cut out the singular fibers.

    Per cover: Res_x(F_i, dF_i/dx) and the leading x-coefficient; for
    multicovers additionally Res_x(F_i, F_j), since a common root of the two
    cover polynomials is a singular point of the fiber.
    """
    out: list[tuple[int, ...]] = []
    sym = [sympy.Poly(p.to_sympy(_x, _t), _x) for p in spec.polys]
    for i, poly in enumerate(spec.polys):
        res = sympy.resultant(sym[i], sym[i].diff(_x), _x)
        out.append(_poly_in_t(res))
        out.append(poly.leading_x_coeff())
    if len(spec.polys) == 2:
        res = sympy.resultant(sym[0], sym[1], _x)
        out.append(_poly_in_t(res))
    return tuple(out)


def _poly_in_t(expr) -> tuple[int, ...]:
    poly = sympy.Poly(expr, _t)
    coeffs = [int(c) for c in poly.all_coeffs()]
    coeffs.reverse()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _content(coeffs: tuple[int, ...]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    return g


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out: set[int] = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out


@functools.lru_cache(maxsize=64)
def bad_primes(spec: FamilySpec) -> frozenset[int]:
    """The finite set S of primes excluded from every averaged sum.

    Contains 2, every prime at which some cover loses x-degree or fails to be
    squarefree over F_p(t), and the declared extras.  Degeneracy at p is
    detected exactly: the relevant specialization obstructions are integer
    contents of t-resultants, so the candidate primes are their divisors.
    """
    bad: set[int] = {2}
    bad |= set(spec.extra_bad_primes)
    for poly in spec.polys:
        lead = poly.leading_x_coeff()
        content = _content(lead)
        if content == 0:
            raise ValidationError("zero cover polynomial")
        if len(lead) == 1:
            # constant leading coefficient: degree drops exactly at its divisors
            bad |= _prime_factors(content)
        else:
            bad |= _prime_factors(content)
    for res in singular_locus_polys(spec):
        c = _content(res)
        if c == 0:
            continue  # identically zero resultant is caught by validation
        bad |= _prime_factors(c)
    return frozenset(bad)


def generic_fiber_squarefree_mod_p(spec: FamilySpec, p: int) -> bool:
    """Direct gcd-based check that every cover (and, for multicovers, the
    product) keeps full x-degree and stays squarefree in x over F_p(t);
    definition-level test oracle for bad_primes."""
    polys = list(spec.polys)
    if len(polys) == 2:
        polys.append(polys[0] * polys[1])
    for poly in polys:
        lead = poly.leading_x_coeff()
        if all(c % p == 0 for c in lead):
            return False
        f = sympy.Poly(poly.to_sympy(_x, _t), _x, _t, modulus=p)
        g = sympy.gcd(f, f.diff(_x))
        if sympy.Poly(g, _x, _t, modulus=p).degree(_x) > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Fibers
# ---------------------------------------------------------------------------


def fiber_at(spec: FamilySpec, ctx: FieldCtx, c: int | str) -> FiberModel:
    """The fiber over c in P^1(F_p); pass INFINITY (or None) for c = infinity."""
    if ctx.p in bad_primes(spec):
        raise BadPrime(f"p = {ctx.p} lies in the bad set of {spec.name}")
    rule = spec.infinity_rule
    degs = tuple(poly.deg_x for poly in spec.polys)
    nu = rule.nu if rule.kind == "affine_plus" else 0
    m_declared = rule.m if rule.kind == "affine_plus" else 1
    if c in (INFINITY, None):
        if spec.kind == "constant":
            # X = C0 x P^1: the fiber at infinity is the constant curve itself
            polys = tuple(poly.specialize_t(0, ctx.p) for poly in spec.polys)
            return FiberModel(None, polys, degs, spec.kind, rule.kind, nu, m_declared)
        return FiberModel(None, (), degs, spec.kind, rule.kind, nu, m_declared)
    c = int(c)
    if not 0 <= c < ctx.p:
        raise ValueError(f"c = {c} not in F_{ctx.p}")
    polys = tuple(poly.specialize_t(c, ctx.p) for poly in spec.polys)
    return FiberModel(c, polys, degs, spec.kind, rule.kind, nu, m_declared)


def discriminant_locus(spec: FamilySpec, ctx: FieldCtx) -> set[int]:
    """Finite c where some cover polynomial has a repeated root in x or drops
    x-degree; the definition is the gcd computation in F_p[x]."""
    from . import fp_poly

    if ctx.p in bad_primes(spec):
        raise BadPrime(f"p = {ctx.p} lies in the bad set of {spec.name}")
    out: set[int] = set()
    p = ctx.p
    for c in range(p):
        for poly in spec.polys:
            f = poly.specialize_t(c, p)
            if len(f) - 1 < poly.deg_x:
                out.add(c)
                break
            if len(fp_poly.gcd(f, fp_poly.deriv(f, p), p)) > 1:
                out.add(c)
                break
        else:
            if len(spec.polys) == 2:
                f1 = spec.polys[0].specialize_t(c, p)
                f2 = spec.polys[1].specialize_t(c, p)
                if len(fp_poly.gcd(f1, f2, p)) > 1:
                    out.add(c)
    return out


@functools.lru_cache(maxsize=64)
def trace_curve_discriminants(spec: FamilySpec) -> tuple[int, ...]:
    """|Res(G_i, G_i')| per trace curve; primes dividing one are skipped."""
    out = []
    for curve in spec.trace.curves:
        f = sympy.Poly(list(reversed(curve)), _x)
        out.append(abs(int(sympy.resultant(f, f.diff(_x), _x))))
    return tuple(out)
