"""Dense univariate polynomial arithmetic over F_p.

Polynomials are tuples of residues in ascending degree with no trailing
zeros; () is the zero polynomial.  Only the small amounts needed by the
singular-fiber slow path live here; bulk evaluation is done in kernels.
"""

from __future__ import annotations


def trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def deg(f: tuple[int, ...]) -> int:
    return len(f) - 1


def deriv(f: tuple[int, ...], p: int) -> tuple[int, ...]:
    return trim((i * c) % p for i, c in enumerate(f) if i > 0)


def monic(f: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return tuple((c * inv) % p for c in f)


def divmod_(f: tuple[int, ...], g: tuple[int, ...], p: int):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    for i in range(len(f) - len(g), -1, -1):
        c = (r[i + len(g) - 1] * inv) % p
        if c:
            q[i] = c
            for j, gc in enumerate(g):
                r[i + j] = (r[i + j] - c * gc) % p
    return trim(q), trim(r)


def mul(f: tuple[int, ...], g: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def gcd(f: tuple[int, ...], g: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(f), trim(g)
    while b:
        _, r = divmod_(a, b, p)
        a, b = b, r
    return monic(a, p)


def eval_at(f: tuple[int, ...], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def squarefree_decomposition(f: tuple[int, ...], p: int):
    """Yun's algorithm: return [(q_1, 1), (q_2, 2), ...] with f = lc * prod q_e^e,
    each q_e monic squarefree, pairwise coprime.  Valid for deg f < p."""
    f = trim(f)
    if deg(f) < 1:
        return []
    if deg(f) >= p:
        raise ValueError("squarefree decomposition requires deg f < p")
    fm = monic(f, p)
    out = []
    df = deriv(fm, p)
    a = gcd(fm, df, p)
    b, _ = divmod_(fm, a, p)
    c, _ = divmod_(df, a, p)
    d = trim((ci - bi) % p for ci, bi in _zip_pad(c, deriv(b, p), p))
    e = 1
    while deg(b) > 0:
        q = gcd(b, d, p)
        if deg(q) > 0:
            out.append((q, e))
        b, _ = divmod_(b, q, p)
        c, _ = divmod_(d, q, p)
        d = trim((ci - bi) % p for ci, bi in _zip_pad(c, deriv(b, p), p))
        e += 1
    return out


def _zip_pad(a: tuple[int, ...], b: tuple[int, ...], p: int):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return zip(a, b)


def odd_multiplicity_part(f: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Monic product of the irreducible factors of f with odd multiplicity;
    (1,) when f is a constant times a perfect square."""
    if deg(trim(f)) < p:
        parts = squarefree_decomposition(f, p)
    else:
        # Yun needs p > deg f; fall back to full factorization over GF(p)
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(f)), x, modulus=p)
        parts = []
        for factor, e in poly.factor_list()[1]:
            cs = tuple(int(c) % p for c in reversed(factor.all_coeffs()))
            parts.append((monic(cs, p), e))
    out = (1,)
    for q, e in parts:
        if e % 2 == 1:
            out = mul(out, q, p)
    return out
