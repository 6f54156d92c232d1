"""Exact rational-function algebra over the rationals.

Polynomials and reduced rational functions with ``fractions.Fraction``
coefficients, Mobius maps, and the Schwarzian operator together with its
composition (cocycle) and pullback laws.  Every value is immutable and every
operation is pure, so objects can be shared freely between workers.

Canonical form: a ``RatFunc`` always stores a gcd-reduced pair with a monic
denominator, which makes equality structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactRational = Fraction

ScalarLike = Union[int, Fraction, str]


def as_fraction(value: ScalarLike) -> Fraction:
    """Coerce an exact scalar; floats are rejected to avoid silent rounding."""
    if isinstance(value, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def _int_content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g or 1


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    n = (1 << 31) - 1
    while True:
        if _is_probable_prime(n):
            yield n
        n -= 2


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gcd_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd of two integer polynomials reduced mod p (ascending coeffs)."""
    a = _strip([c % p for c in a])
    b = _strip([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        nb = len(b)
        while len(a) >= nb:
            f = a[-1] * inv % p
            if f:
                off = len(a) - nb
                for i in range(nb - 1):
                    a[off + i] = (a[off + i] - f * b[i]) % p
            a.pop()
            _strip(a)
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _int_exact_div(a: Sequence[int], c: Sequence[int]) -> list[int] | None:
    """Exact quotient of integer polynomials, or None when division fails."""
    r = list(a)
    lc = c[-1]
    nq = len(a) - len(c) + 1
    if nq <= 0:
        return None
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        top = r[k + len(c) - 1]
        if top % lc != 0:
            return None
        f = top // lc
        q[k] = f
        if f:
            for i, ci in enumerate(c):
                r[k + i] -= f * ci
    return q if not any(r) else None


def _int_gcd_poly(a: list[int], b: list[int]) -> list[int]:
    """Gcd of primitive integer polynomials by modular images (CRT-lifted,
    verified by exact trial division)."""
    a = [c // _int_content(a) for c in a]
    b = [c // _int_content(b) for c in b]
    if len(a) < len(b):
        a, b = b, a
    gl = math.gcd(a[-1], b[-1])
    primes = _prime_stream()
    acc = None  # (coeffs, modulus, degree)
    for _ in range(32):
        p = next(primes)
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        gp = _gcd_mod(a, b, p)
        if len(gp) == 1:
            return [1]
        scale = gl % p
        gp = [c * scale % p for c in gp]
        if acc is None or len(gp) < acc[2]:
            acc = (gp, p, len(gp))
        elif len(gp) > acc[2]:
            continue  # unlucky prime
        else:
            cur, mod, _deg = acc
            minv = pow(mod, p - 2, p)
            combined = []
            for x, y in zip(cur, gp):
                t = (y - x) * minv % p
                combined.append(x + mod * t)
            acc = (combined, mod * p, len(gp))
        coeffs, mod, _deg = acc
        half = mod // 2
        cand = [c - mod if c > half else c for c in coeffs]
        cont = _int_content(cand)
        cand = [c // cont for c in cand]
        if _int_exact_div(a, cand) is not None and _int_exact_div(b, cand) is not None:
            return cand
    # fallback: primitive pseudo-remainder sequence (slow but always correct)
    while b:
        r = list(a)
        lb = b[-1]
        for _ in range(len(a) - len(b) + 1):
            if not r:
                break
            lr = r[-1]
            if lr == 0:
                r.pop()
                continue
            r = [c * lb for c in r]
            off = len(r) - len(b)
            for i, c in enumerate(b):
                r[off + i] -= lr * c
            r.pop()
            _strip(r)
        cont = _int_content(r)
        a, b = b, [c // cont for c in r]
        if len(a) < len(b):
            a, b = b, a
    return a


class Poly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly(a)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            k = as_fraction(other)
            return Poly([c * k for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Poly()
        # convolve over Z after clearing denominators; much faster than
        # Fraction arithmetic for the large products of the Schwarzian chain
        da, a = _clear_denominators(self.coeffs)
        db, b = _clear_denominators(other.coeffs)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        d = da * db
        return Poly([Fraction(c, d) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        d = other.degree
        lc = other.leading
        while len(r) - 1 >= d and r:
            if r[-1] == 0:
                r.pop()
                continue
            k = len(r) - 1 - d
            f = r[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
            r.pop()
        return Poly(q), Poly(r)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd, computed from modular images over Z."""
        if self.is_zero:
            return other.monic() if not other.is_zero else Poly()
        if other.is_zero:
            return self.monic()
        if self.degree == 0 or other.degree == 0:
            return Poly([1])
        a = _to_int_coeffs(self.coeffs)
        b = _to_int_coeffs(other.coeffs)
        g = _int_gcd_poly(a, b)
        return Poly(g).monic()

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lc = self.leading
        if lc == 1:
            return self
        return Poly([c / lc for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for Fraction, int, float and complex."""
        acc = x * 0
        exact = isinstance(x, (int, Fraction)) and not isinstance(x, bool)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if exact else _numeric(c, x))
        return acc

    def root_multiplicity(self, point: ScalarLike) -> int:
        """Multiplicity of ``point`` as a root (0 when not a root)."""
        point = as_fraction(point)
        if self.is_zero:
            raise ValueError("every point is a root of the zero polynomial")
        lin = Poly([-point, 1])
        mult = 0
        p = self
        while True:
            q, r = p.divmod(lin)
            if not r.is_zero:
                return mult
            mult += 1
            p = q

    def __repr__(self) -> str:
        return f"Poly({_poly_str(self)})"


def _numeric(c: Fraction, like):
    if isinstance(like, complex):
        return complex(c)
    return float(c)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[int, list[int]]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def _to_int_coeffs(coeffs: Sequence[Fraction]) -> list[int]:
    return _clear_denominators(coeffs)[1]


def _poly_str(p: Poly, var: str = "y") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
            if c < 0:
                term = "-" + term
        if parts and not term.startswith("-"):
            parts.append("+ " + term)
        elif parts:
            parts.append("- " + term[1:])
        else:
            parts.append(term)
    return " ".join(parts)


class RatFunc:
    """Reduced rational function num/den over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly([1]) if den is None else _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            object.__setattr__(self, "num", Poly())
            object.__setattr__(self, "den", Poly([1]))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lc = den.leading
        if lc != 1:
            num = num * (1 / lc)
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(value: ScalarLike) -> "RatFunc":
        return RatFunc(Poly([as_fraction(value)]))

    @staticmethod
    def variable() -> "RatFunc":
        return RatFunc(Poly([0, 1]))

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        return Fraction(0) if self.is_zero else self.num.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def derivative(self) -> "RatFunc":
        """Exact quotient-rule derivative, reduced."""
        n, d = self.num, self.den
        num = n.derivative() * d - n * d.derivative()
        if d.degree == 0:
            return RatFunc(num, d)
        # the true denominator is d^2 / gcd(d, d'); dividing it out up front
        # keeps the final reduction on a (usually coprime) pair
        e = d.gcd(d.derivative())
        if e.degree > 0:
            return RatFunc(num // e, d * (d // e))
        return RatFunc(num, d * d)

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """Exact composition self(inner).

        Raises ZeroDivisionError when ``inner`` is a constant sitting on a
        pole of ``self``.
        """
        inner = _as_ratfunc(inner)
        a, b = inner.num, inner.den
        d = max(self.num.degree, self.den.degree, 0)
        num = _substitute_homogeneous(self.num, a, b, d)
        den = _substitute_homogeneous(self.den, a, b, d)
        if den.is_zero:
            raise ZeroDivisionError("composition lands identically on a pole")
        return RatFunc(num, den)

    def __call__(self, x):
        """Evaluate at an exact or floating point; exact poles raise."""
        if isinstance(x, Fraction) or isinstance(x, int):
            x = Fraction(x)
            den = self.den(x)
            if den == 0:
                raise ZeroDivisionError(f"pole at {x}")
            return self.num(x) / den
        return self.num(x) / self.den(x)

    def pole_order(self, point: ScalarLike) -> int:
        """Order of the pole at an exact point (0 when regular there)."""
        return self.den.root_multiplicity(point)

    def order_at_infinity(self) -> int:
        """Vanishing order at infinity (negative for a pole at infinity)."""
        if self.is_zero:
            raise ValueError("zero function has no order at infinity")
        return self.den.degree - self.num.degree

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        """Locale-independent exact form ``"n0,n1,... / d0,d1,..."``."""
        num = ",".join(str(c) for c in self.num.coeffs) or "0"
        den = ",".join(str(c) for c in self.den.coeffs)
        return f"{num} / {den}"

    @staticmethod
    def from_text(text: str) -> "RatFunc":
        # coefficients may themselves contain '/', so split on ' / ' only
        sep = text.find(" / ")
        if sep < 0:
            raise ValueError(f"missing ' / ' separator in {text!r}")
        num_part = text[:sep].strip()
        den_part = text[sep + 3 :].strip()
        num = Poly([Fraction(s) for s in num_part.split(",")]) if num_part else Poly()
        den = Poly([Fraction(s) for s in den_part.split(",")])
        return RatFunc(num, den)

    def __repr__(self) -> str:
        if self.den == Poly([1]):
            return f"RatFunc({_poly_str(self.num)})"
        return f"RatFunc(({_poly_str(self.num)}) / ({_poly_str(self.den)}))"


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return RatFunc(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")


def _substitute_homogeneous(p: Poly, a: Poly, b: Poly, d: int) -> Poly:
    """sum_i p_i a^i b^(d-i), the numerator of p(a/b) over b^d."""
    out = Poly()
    apow = Poly([1])
    bpows = [Poly([1])]
    for _ in range(d):
        bpows.append(bpows[-1] * b)
    for i in range(d + 1):
        c = p.coeffs[i] if i < len(p.coeffs) else Fraction(0)
        if c != 0:
            out = out + apow * bpows[d - i] * c
        if i < d:
            apow = apow * a
    return out


@dataclass(frozen=True)
class MobiusMap:
    """Fractional-linear map (a*t + b)/(c*t + d) with ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, as_fraction(getattr(self, f)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular Mobius map (ad - bc = 0)")

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    def as_ratfunc(self) -> RatFunc:
        y = RatFunc.variable()
        return mobius_apply(self, y)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)


# -- module-level operation surface ----------------------------------------


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    """Exact field arithmetic; ``op`` is one of add, mul, div."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def derivative(f: RatFunc) -> RatFunc:
    return f.derivative()


def compose(f: RatFunc, g: RatFunc) -> RatFunc:
    return f.compose(g)


def schwarzian(f: RatFunc) -> RatFunc:
    """Schwarzian derivative f'''/f' - (3/2)(f''/f')^2.

    Vanishes exactly on Mobius maps; constant input raises.
    """
    fp = f.derivative()
    if fp.is_zero:
        raise ValueError("Schwarzian of a constant function")
    fpp = fp.derivative()
    fppp = fpp.derivative()
    ratio = fpp / fp
    return fppp / fp - Fraction(3, 2) * ratio * ratio


def schwarz_pullback(r: RatFunc, phi: RatFunc) -> RatFunc:
    """Pullback r∘phi * (phi')^2 + S(phi) of a Schwarzian equation along phi.

    Solutions map through phi: if J solves the pulled-back equation then
    phi∘J solves the original one.
    """
    dphi = phi.derivative()
    if dphi.is_zero:
        raise ValueError("pullback along a constant map")
    return r.compose(phi) * dphi * dphi + schwarzian(phi)


def mobius_apply(m: MobiusMap, f: RatFunc) -> RatFunc:
    """(a*f + b)/(c*f + d); raises when the denominator is identically zero."""
    den = f * m.c + m.d
    if den.is_zero:
        raise ZeroDivisionError("Mobius image has identically zero denominator")
    return (f * m.a + m.b) / den
