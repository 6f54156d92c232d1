"""Truncated power-series machinery for the linearized triangle equation.

Series solutions of psi'' + (1/2) R psi = 0 at an ordinary point, the local
inverse-uniformizer (Schwarz map) t as a series, formal inversion and
composition, and residual checks for the principal equation S_y(t) = R(y),
the Riccati equation, the third-order equation satisfied by the inverse, and
the pullback construction.

Coefficient arithmetic is generic: an exact rational base point with an exact
rational equation produces Fraction coefficients, a floating base produces
complex ones.  Residual reports always evaluate in complex arithmetic.

Note on the Schwarz map convention: with the fundamental pair normalized to
(psi1, psi1') = (1, 0) and (psi2, psi2') = (0, 1) at the base point, the
classical quotient psi1/psi2 has a pole there, so the map is built as
t = psi2/psi1 instead.  The two differ by a Mobius map, which changes nothing
downstream (solutions of the principal equation form a single PSL2 orbit).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .rational import RatFunc, schwarz_pullback

BasePoint = Union[Fraction, int, float, complex]


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def _coerce_base(base: BasePoint):
    if _is_exact(base):
        return Fraction(base)
    return complex(base)


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated series sum c_k (x - base_point)^k with len(coefficients) terms."""

    base_point: object
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("a power series needs at least its constant term")

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.base_point == other.base_point and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.base_point, self.coefficients))

    def _check_base(self, other: "PowerSeries"):
        if self.base_point != other.base_point:
            raise ValueError("series arithmetic requires a common base point")

    def truncate(self, order: int) -> "PowerSeries":
        if order < 0:
            raise ValueError("order must be non-negative")
        return PowerSeries(self.base_point, self.coefficients[: order + 1])

    def __add__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check_base(other)
            n = min(len(self.coefficients), len(other.coefficients))
            return PowerSeries(
                self.base_point,
                [self.coefficients[i] + other.coefficients[i] for i in range(n)],
            )
        cs = list(self.coefficients)
        cs[0] = cs[0] + other
        return PowerSeries(self.base_point, cs)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.base_point, [-c for c in self.coefficients])

    def __sub__(self, other) -> "PowerSeries":
        return self + (-other if isinstance(other, PowerSeries) else -1 * other)

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.base_point, [c * other for c in self.coefficients])
        self._check_base(other)
        n = min(len(self.coefficients), len(other.coefficients))
        a, b = self.coefficients, other.coefficients
        out = [self.coefficients[0] * 0 for _ in range(n)]
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] += ai * b[j]
        return PowerSeries(self.base_point, out)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        c0 = self.coefficients[0]
        if c0 == 0:
            raise ZeroDivisionError("series has a zero constant term")
        n = len(self.coefficients)
        out = [self.coefficients[0] * 0 for _ in range(n)]
        out[0] = 1 / c0
        for k in range(1, n):
            acc = out[0] * 0
            for j in range(1, k + 1):
                acc += self.coefficients[j] * out[k - j]
            out[k] = -acc / c0
        return PowerSeries(self.base_point, out)

    def __truediv__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check_base(other)
            n = min(len(self.coefficients), len(other.coefficients))
            return self.truncate(n - 1) * other.truncate(n - 1).reciprocal()
        return PowerSeries(self.base_point, [c / other for c in self.coefficients])

    def derivative(self) -> "PowerSeries":
        if len(self.coefficients) == 1:
            return PowerSeries(self.base_point, [self.coefficients[0] * 0])
        return PowerSeries(
            self.base_point,
            [k * c for k, c in enumerate(self.coefficients)][1:],
        )

    def __call__(self, x):
        """Horner evaluation at a point (exact for exact input, else complex)."""
        dx = x - self.base_point
        acc = dx * 0
        for c in reversed(self.coefficients):
            acc = acc * dx + c
        return acc

    def as_complex(self) -> "PowerSeries":
        return PowerSeries(complex(self.base_point), [complex(c) for c in self.coefficients])

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coefficients[:4])
        tail = ", ..." if len(self.coefficients) > 4 else ""
        return f"PowerSeries(base={self.base_point}, [{head}{tail}], order={self.truncation_order})"


# -- Taylor data of rational functions --------------------------------------


def _shift_coeffs(coeffs: list, base) -> list:
    """Coefficients of p(base + x) by repeated Horner shift (in the base's domain)."""
    a = list(coeffs)
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] = a[j] + base * a[j + 1]
    return a


def taylor_coefficients(f: RatFunc, base: BasePoint, order: int) -> list:
    """Taylor coefficients of ``f`` at ``base`` through the given order.

    Exact Fraction coefficients when ``base`` is exact, complex otherwise.
    Raises ZeroDivisionError when ``base`` is a pole.
    """
    base = _coerce_base(base)
    exact = _is_exact(base)
    conv = (lambda c: c) if exact else complex
    num = [conv(c) for c in f.num.coeffs] or [conv(0)]
    den = [conv(c) for c in f.den.coeffs]
    ns = _shift_coeffs(num, base)
    ds = _shift_coeffs(den, base)
    if ds[0] == 0:
        raise ZeroDivisionError(f"base point {base} is a pole")
    zero = conv(0)
    ns = ns + [zero] * (order + 1 - len(ns))
    ds = ds + [zero] * (order + 1 - len(ds))
    out = [zero] * (order + 1)
    for k in range(order + 1):
        acc = ns[k]
        for j in range(1, k + 1):
            acc -= ds[j] * out[k - j]
        out[k] = acc / ds[0]
    return out


def ratfunc_series(f: RatFunc, base: BasePoint, order: int) -> PowerSeries:
    return PowerSeries(_coerce_base(base), taylor_coefficients(f, base, order))


def poles(f: RatFunc) -> list[complex]:
    """Numerical poles (roots of the reduced denominator)."""
    if f.den.degree < 1:
        return []
    desc = [complex(c) for c in reversed(f.den.coeffs)]
    return [complex(r) for r in np.roots(desc)]


def distance_to_poles(f: RatFunc, point: complex) -> float:
    ps = poles(f)
    if not ps:
        return float("inf")
    return min(abs(complex(point) - p) for p in ps)


def default_disk_radius(f: RatFunc, base: BasePoint) -> float:
    """A quarter of the distance from the base point to the nearest pole."""
    d = distance_to_poles(f, complex(base))
    if d == float("inf"):
        return 0.25
    return d / 4.0


def _sample_ring(center: complex, radius: float, count: int) -> tuple[complex, ...]:
    return tuple(
        center + radius * cmath.exp(2j * cmath.pi * k / count) for k in range(count)
    )


# -- series solutions of the linearized equation ----------------------------


def series_solve_linear(
    r: RatFunc, base: BasePoint, order: int
) -> tuple[PowerSeries, PowerSeries]:
    """The fundamental series pair of psi'' + (1/2) r psi = 0 at an ordinary
    point, with initial data (1, 0) and (0, 1).

    The pair has unit Wronskian through the truncation order (no first-order
    term in the equation).
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    base = _coerce_base(base)
    q = [c / 2 for c in taylor_coefficients(r, base, order)]
    one = Fraction(1) if _is_exact(base) else complex(1)
    zero = one * 0
    c1 = [zero] * (order + 1)
    c2 = [zero] * (order + 1)
    c1[0] = one
    c2[1] = one
    for k in range(order - 1):
        s1 = zero
        s2 = zero
        for j in range(k + 1):
            qj = q[j]
            if qj == 0:
                continue
            s1 += qj * c1[k - j]
            s2 += qj * c2[k - j]
        den = (k + 1) * (k + 2)
        c1[k + 2] = -s1 / den
        c2[k + 2] = -s2 / den
    return PowerSeries(base, c1), PowerSeries(base, c2)


def schwarz_map(r: RatFunc, base: BasePoint, order: int) -> PowerSeries:
    """Series of a Schwarzian primitive of ``r`` at the base point, normalized
    to t(base) = 0, t'(base) = 1 (quotient psi2/psi1 of the fundamental pair)."""
    psi1, psi2 = series_solve_linear(r, base, order)
    t = psi2 / psi1
    assert t.coefficients[1] == 1
    return t


def series_schwarzian(t: PowerSeries) -> PowerSeries:
    """Schwarzian of a series; the truncation order drops by 3."""
    if t.truncation_order < 4:
        raise ValueError("order too small for a meaningful Schwarzian")
    d1 = t.derivative()
    if d1.coefficients[0] == 0:
        raise ZeroDivisionError("series has vanishing first derivative at its base point")
    d2 = d1.derivative()
    d3 = d2.derivative()
    n = t.truncation_order - 3
    d1 = d1.truncate(n)
    ratio = d2.truncate(n) / d1
    return d3.truncate(n) / d1 - (ratio * ratio) * 3 / 2


def series_invert(t: PowerSeries) -> PowerSeries:
    """Formal compositional inverse J with J(t(base)) = base and J∘t = id
    through the truncation order."""
    c = t.coefficients
    if len(c) < 2 or c[1] == 0:
        raise ZeroDivisionError("series has vanishing first derivative; not invertible")
    n = t.truncation_order
    zero = c[0] * 0
    w = [zero] + list(c[1:])
    # triangular solve of sum_k d_k W^k = (x - base) against the powers of W
    powers = [None, w]
    for j in range(2, n + 1):
        prev = powers[j - 1]
        nxt = [zero] * (n + 1)
        for i in range(j - 1, n + 1):
            pi = prev[i]
            if pi == 0:
                continue
            for k in range(1, n + 1 - i):
                nxt[i + k] += pi * w[k]
        powers.append(nxt)
    d = [zero] * (n + 1)
    d[1] = 1 / c[1]
    for m in range(2, n + 1):
        acc = zero
        for j in range(1, m):
            acc += d[j] * powers[j][m]
        d[m] = -acc / powers[m][m]
    coeffs = [t.base_point] + d[1:]
    return PowerSeries(c[0], coeffs)


def series_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """outer∘inner; the inner constant term must sit at the outer base point."""
    shift = inner.coefficients[0] - outer.base_point
    if _is_exact(inner.base_point) and _is_exact(outer.base_point):
        if shift != 0:
            raise ValueError("inner series does not map its base to the outer base point")
    elif abs(complex(shift)) > 1e-9 * (1.0 + abs(complex(outer.base_point))):
        raise ValueError("inner series does not map its base to the outer base point")
    n = min(outer.truncation_order, inner.truncation_order)
    w = PowerSeries(inner.base_point, [shift] + list(inner.coefficients[1 : n + 1]))
    acc = PowerSeries(inner.base_point, [outer.coefficients[n]] + [shift * 0] * n)
    for k in range(n - 1, -1, -1):
        acc = acc * w + outer.coefficients[k]
    return acc


# -- residual reports --------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """Max modulus of an equation residual over deterministic sample points."""

    sample_points: tuple[complex, ...]
    max_abs_residual: float
    truncation_order: int

    def to_record(self) -> dict:
        return {
            "sample_points": [[p.real, p.imag] for p in self.sample_points],
            "max_abs_residual": self.max_abs_residual,
            "truncation_order": self.truncation_order,
        }


def residual_principal(
    r: RatFunc,
    base: BasePoint,
    order: int,
    radius: float | None = None,
    points: int = 16,
) -> ResidualReport:
    """Residual |S(t) - r| of the principal equation for the series Schwarz map."""
    b = complex(base)
    t = schwarz_map(r, b, order)
    s = series_schwarzian(t)
    rad = radius if radius is not None else default_disk_radius(r, b)
    pts = _sample_ring(b, rad, points)
    worst = max(abs(s(p) - r(p)) for p in pts)
    return ResidualReport(pts, worst, order)


def residual_riccati(
    r: RatFunc,
    base: BasePoint,
    order: int,
    radius: float | None = None,
    points: int = 16,
) -> ResidualReport:
    """Residual |u' + u^2 + r/2| for the logarithmic derivative u = psi1'/psi1."""
    if order < 5:
        raise ValueError("order must be at least 5 to form the Riccati residual")
    b = complex(base)
    psi1, _ = series_solve_linear(r, b, order)
    u = psi1.derivative() / psi1.truncate(order - 1)
    du = u.derivative()
    rad = radius if radius is not None else default_disk_radius(r, b)
    pts = _sample_ring(b, rad, points)
    worst = max(abs(du(p) + u(p) ** 2 + 0.5 * r(p)) for p in pts)
    return ResidualReport(pts, worst, order)


def _third_order_residual(j: PowerSeries, r: RatFunc, pts: Sequence[complex]) -> float:
    d1 = j.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    worst = 0.0
    for p in pts:
        v1 = d1(p)
        ratio = d2(p) / v1
        sval = d3(p) / v1 - 1.5 * ratio * ratio
        res = abs(sval + v1 * v1 * r(j(p)))
        worst = max(worst, res)
    return worst


def residual_inverse(
    r: RatFunc,
    base: BasePoint,
    order: int,
    radius: float | None = None,
    points: int = 16,
) -> ResidualReport:
    """Residual of the third-order equation S(J) + (J')^2 r(J) = 0 for the
    inverted Schwarz map J near t = 0."""
    b = complex(base)
    t = schwarz_map(r, b, order)
    j = series_invert(t)
    rad_y = radius if radius is not None else default_disk_radius(r, b)
    pts = _sample_ring(0j, rad_y / 4.0, points)
    worst = _third_order_residual(j, r, pts)
    return ResidualReport(pts, worst, order)


def verify_pullback(
    r: RatFunc,
    phi: RatFunc,
    base: BasePoint,
    order: int,
    radius: float | None = None,
    points: int = 16,
) -> ResidualReport:
    """Solve the pulled-back equation, push the solution through phi, and
    report the residual of the original equation.

    Builds J2 from the pullback of ``r`` along ``phi``, forms J1 = phi∘J2 by
    series composition, and measures S(J1) + (J1')^2 r(J1) near t = 0.
    """
    dphi = phi.derivative()
    if dphi.is_zero:
        raise ValueError("pullback along a constant map")
    b = complex(base)
    if abs(dphi(b)) < 1e-12:
        raise ValueError("phi is ramified at the base point; J1 is not invertible there")
    r_phi = schwarz_pullback(r, phi)
    t2 = schwarz_map(r_phi, b, order)
    j2 = series_invert(t2)
    phi_series = ratfunc_series(phi, b, order)
    j1 = series_compose(phi_series, j2)
    rad_y = radius if radius is not None else default_disk_radius(r_phi, b)
    pts = _sample_ring(0j, rad_y / 4.0, points)
    worst = _third_order_residual(j1, r, pts)
    return ResidualReport(pts, worst, order)
