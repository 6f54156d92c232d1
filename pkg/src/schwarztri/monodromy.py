"""Numerical monodromy oracle for the linearized triangle equation.

Analytic continuation of the fundamental pair of psi'' + (1/2) R psi = 0
around loops encircling the singularities 0 and 1, and classification of the
projective group generated by the two loop matrices:

    finite / dihedral / triangularizable  <->  Liouville-integrable side
    Zariski dense                         <->  non-integrable side

which cross-checks the exact classifier (the Zariski closure of the monodromy
group of a Fuchsian equation is its differential Galois group).

Continuation is by adaptive Taylor stepping: at each step center the equation
coefficient is expanded to high order and the step length is a fixed fraction
of the distance to the nearest pole, which keeps the local series well inside
its convergence disk.  Results are deterministic for fixed inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .rational import RatFunc
from .triangle import AngleParams, build_r, exponent_differences

_IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class LoopSpec:
    """A positively oriented circular loop based at ``base_point``.

    The polyline runs from the base point to the circle along a straight
    segment, once around, and back.
    """

    center: complex
    base_point: complex = 0.5 + 0j
    radius: float = 0.25
    steps: int = 16

    def __post_init__(self):
        if not 0 < self.radius < 0.5:
            raise ValueError("loop radius must lie in (0, 1/2) to avoid the other singularity")
        if self.steps < 8:
            raise ValueError("a loop needs at least 8 polyline nodes")
        if abs(complex(self.base_point) - complex(self.center)) <= self.radius:
            raise ValueError("base point must lie outside the loop circle")

    def polyline(self) -> list[complex]:
        base = complex(self.base_point)
        center = complex(self.center)
        u = (base - center) / abs(base - center)
        theta0 = cmath.phase(u)
        circle = [
            center + self.radius * cmath.exp(1j * (theta0 + 2 * math.pi * k / self.steps))
            for k in range(self.steps + 1)
        ]
        return [base] + circle + [base]


def _shift_inplace(a: np.ndarray, z: complex) -> np.ndarray:
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += z * a[j + 1]
    return a


def _taylor_step(
    num: np.ndarray, den: np.ndarray, z: complex, h: complex, order: int
) -> np.ndarray:
    """Transfer matrix of the fundamental pair across one step from ``z``."""
    ns = _shift_inplace(num.copy(), z)
    ds = _shift_inplace(den.copy(), z)
    q = np.zeros(order + 1, dtype=complex)
    nn = np.zeros(order + 1, dtype=complex)
    dd = np.zeros(order + 1, dtype=complex)
    nn[: min(len(ns), order + 1)] = ns[: order + 1]
    dd[: min(len(ds), order + 1)] = ds[: order + 1]
    d0 = dd[0]
    for k in range(order + 1):
        acc = nn[k]
        if k:
            acc -= np.dot(dd[1 : k + 1], q[k - 1 :: -1])
        q[k] = acc / d0
    q *= 0.5  # coefficient of psi in psi'' = -(R/2) psi

    c = np.zeros((order + 3, 2), dtype=complex)
    c[0, 0] = 1.0
    c[1, 1] = 1.0
    for k in range(order + 1):
        conv = q[: k + 1] @ c[k::-1][: k + 1]
        c[k + 2] = -conv / ((k + 1) * (k + 2))
    powers = h ** np.arange(order + 3)
    val = powers @ c
    der = (np.arange(1, order + 3) * powers[:-1]) @ c[1:]
    return np.array([[val[0], val[1]], [der[0], der[1]]], dtype=complex)


def continue_solution(
    r: RatFunc,
    path: Sequence[complex],
    taylor_order: int = 36,
    step_factor: float = 0.35,
    min_step: float = 1e-12,
    pole_clearance: float = 1e-6,
) -> np.ndarray:
    """Transport the fundamental pair along a polyline; returns the matrix
    expressing the continued pair in the starting basis.

    Raises when the path runs into a pole (step-size underflow).
    """
    num = np.array([complex(c) for c in r.num.coeffs] or [0j], dtype=complex)
    den = np.array([complex(c) for c in r.den.coeffs], dtype=complex)
    if r.den.degree >= 1:
        pole_list = np.roots(den[::-1])
    else:
        pole_list = np.array([], dtype=complex)
    transfer = _IDENTITY.copy()
    for a, b in zip(path, path[1:]):
        a, b = complex(a), complex(b)
        seg = b - a
        length = abs(seg)
        if length == 0:
            continue
        direction = seg / length
        s = 0.0
        while s < length:
            z = a + direction * s
            if len(pole_list):
                dist = float(np.min(np.abs(pole_list - z)))
            else:
                dist = math.inf
            if dist < pole_clearance:
                raise RuntimeError(f"path passes within {pole_clearance} of a pole near {z}")
            cap = min(dist * step_factor, 0.5)
            h = min(length - s, cap)
            if h < min_step:
                raise RuntimeError(
                    f"step size underflow at {z}: path passes too close to a pole"
                )
            transfer = _taylor_step(num, den, z, direction * h, taylor_order) @ transfer
            s += h
    return transfer


@dataclass(frozen=True, eq=False)
class MonodromyRep:
    """Loop matrices around 0 and 1 in the fundamental-solution basis at the
    base point, with unit determinant up to ``estimated_error``."""

    m0: np.ndarray
    m1: np.ndarray
    estimated_error: float
    resonant_warning: bool = False

    def to_record(self) -> dict:
        def mat(m):
            return [[[z.real, z.imag] for z in row] for row in m.tolist()]

        return {
            "m0": mat(self.m0),
            "m1": mat(self.m1),
            "estimated_error": self.estimated_error,
            "resonant_warning": self.resonant_warning,
        }


def monodromy(
    params: AngleParams,
    loop0: Optional[LoopSpec] = None,
    loop1: Optional[LoopSpec] = None,
    taylor_order: int = 36,
    step_factor: float = 0.35,
) -> MonodromyRep:
    """Monodromy matrices of the linearized triangle equation around 0 and 1.

    The loop around infinity is implicitly (M1 M0)^-1 and is not stored.
    Integer exponent differences flag a resonance warning (possible
    logarithmic local solutions)."""
    if params.is_generic:
        raise ValueError("monodromy needs exact rational parameters")
    r = build_r(params)
    loop0 = loop0 or LoopSpec(center=0j)
    loop1 = loop1 or LoopSpec(center=1 + 0j)
    m0 = continue_solution(r, loop0.polyline(), taylor_order, step_factor)
    m1 = continue_solution(r, loop1.polyline(), taylor_order, step_factor)
    err = max(
        abs(np.linalg.det(m0) - 1.0),
        abs(np.linalg.det(m1) - 1.0),
        1e-13,
    )
    e = exponent_differences(params)
    resonant = any(x.denominator == 1 for x in e.as_tuple())
    return MonodromyRep(m0=m0, m1=m1, estimated_error=float(err), resonant_warning=resonant)


# -- projective classification ------------------------------------------------


class InconclusiveError(RuntimeError):
    """Raised when the caps are exhausted without either a finite closure or a
    positive density certificate."""


@dataclass(frozen=True)
class ProjectiveClass:
    """Projective type of the group generated by the two loop matrices."""

    kind: str  # finite | dihedral | triangularizable | dense
    order: Optional[int]
    tolerance_used: float
    max_order_cap: int = 120
    max_word_length_cap: int = 20

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "tolerance_used": self.tolerance_used,
            "caps": {"max_order": self.max_order_cap, "max_word_length": self.max_word_length_cap},
        }


def _normalize(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return m / cmath.sqrt(det)


def _inv(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def _proj_dist(a: np.ndarray, b: np.ndarray) -> float:
    return min(float(np.max(np.abs(a - b))), float(np.max(np.abs(a + b))))


def _proj_dist_many(stack: np.ndarray, m: np.ndarray) -> np.ndarray:
    d1 = np.max(np.abs(stack - m), axis=(1, 2))
    d2 = np.max(np.abs(stack + m), axis=(1, 2))
    return np.minimum(d1, d2)


def _is_scalar(m: np.ndarray, tol: float) -> bool:
    return _proj_dist(m, _IDENTITY) <= tol


def _eigvec_pair(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    _, vecs = np.linalg.eig(m)
    return vecs[:, 0], vecs[:, 1]


def _parallel(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    cross = u[0] * v[1] - u[1] * v[0]
    scale = max(float(np.linalg.norm(u) * np.linalg.norm(v)), 1e-300)
    return abs(cross) <= tol * scale


def _maps_line_to(m: np.ndarray, u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    return _parallel(m @ u, v, tol)


def _preserves_pair(m: np.ndarray, pair, tol: float) -> bool:
    u, v = pair
    fixes = _maps_line_to(m, u, u, tol) and _maps_line_to(m, v, v, tol)
    swaps = _maps_line_to(m, u, v, tol) and _maps_line_to(m, v, u, tol)
    return fixes or swaps


def _min_consistent_denominator(x: float, budget: float) -> int:
    """Smallest q such that some p/q lies within ``budget`` of x, by walking
    the continued-fraction convergents of x."""
    p0, q0, p1, q1 = 1, 0, math.floor(x), 1
    a = x
    for _ in range(64):
        if abs(x - p1 / q1) <= budget:
            return q1
        frac = a - math.floor(a)
        if frac < 1e-15:
            break
        a = 1.0 / frac
        ai = math.floor(a)
        p0, p1 = p1, ai * p1 + p0
        q0, q1 = q1, ai * q1 + q0
    return q1


# An elliptic element of finite projective order n has eigenvalue-ratio
# argument pi*p/n; the loop matrices are accurate to ~1e-12, so a computed
# angle that no fraction with denominator <= _MAX_TORSION_DENOMINATOR matches
# to within _ANGLE_BUDGET certifies an irrational rotation (infinite order).
_ANGLE_BUDGET = 1e-11
_MAX_TORSION_DENOMINATOR = 10_000


def _infinite_order_certificate(m: np.ndarray, tol: float) -> bool:
    """Certify that a unit-determinant matrix has infinite projective order."""
    tr = m[0, 0] + m[1, 1]
    if abs(tr) > 2 + 1e-8:
        return True
    vals = np.linalg.eigvals(m)
    if abs(vals[1]) < 1e-12:
        return False
    ratio = vals[0] / vals[1]
    if abs(abs(ratio) - 1.0) > 1e-8:
        return True
    angle = cmath.phase(ratio) / math.pi  # rational iff finite order
    return _min_consistent_denominator(angle, _ANGLE_BUDGET) > _MAX_TORSION_DENOMINATOR


def classify_projective(
    rep: MonodromyRep,
    tol: float = 1e-6,
    max_order: int = 120,
    max_word_length: int = 20,
) -> ProjectiveClass:
    """Classify the projectivized group generated by the loop matrices.

    A breadth-first closure that stabilizes within the caps gives Finite(n);
    otherwise a shared eigenvector gives Triangularizable, an invariant
    unordered pair of lines gives Dihedral, and a positive density certificate
    (irreducible, no invariant pair, an element of infinite projective order)
    gives Dense.  Exhausted caps without a certificate raise
    ``InconclusiveError`` rather than guessing.
    """
    a0 = _normalize(rep.m0.astype(complex))
    a1 = _normalize(rep.m1.astype(complex))
    gens = [a0, a1, _inv(a0), _inv(a1)]

    buf = np.zeros((max_order + 8 * len(gens) + 1, 2, 2), dtype=complex)
    buf[0] = _IDENTITY
    count = 1
    frontier = range(0, 1)
    closed = False
    for _ in range(max_word_length):
        start_new = count
        for fi in frontier:
            f = buf[fi]
            for g in gens:
                h = g @ f
                if np.min(_proj_dist_many(buf[:count], h)) <= tol:
                    continue
                if count >= len(buf):
                    break
                buf[count] = h
                count += 1
        if count == start_new:
            closed = True
            break
        frontier = range(start_new, count)
        if count > max_order:
            break

    if closed and count <= max_order:
        return ProjectiveClass(kind="finite", order=count, tolerance_used=tol,
                               max_order_cap=max_order, max_word_length_cap=max_word_length)
    elems = buf[:count]

    scalar0 = _is_scalar(a0, tol)
    scalar1 = _is_scalar(a1, tol)
    product = a0 @ a1

    # shared eigenvector (checked against both generators and their product)
    shared = False
    if scalar0 or scalar1:
        shared = True  # the group is generated by a single non-scalar element
    else:
        vecs0 = _eigvec_pair(a0)
        vecs1 = _eigvec_pair(a1)
        for u in vecs0:
            for v in vecs1:
                if _parallel(u, v, tol) and _maps_line_to(product, u, u, tol):
                    shared = True
                    break
            if shared:
                break
    if shared:
        return ProjectiveClass(kind="triangularizable", order=None, tolerance_used=tol,
                               max_order_cap=max_order, max_word_length_cap=max_word_length)

    # invariant unordered pair of lines
    candidates = []
    for m in (a0, a1, product):
        if not _is_scalar(m, tol):
            candidates.append(_eigvec_pair(m))
    for pair in candidates:
        if all(_preserves_pair(m, pair, tol) for m in (a0, a1, product)):
            return ProjectiveClass(kind="dihedral", order=None, tolerance_used=tol,
                                   max_order_cap=max_order, max_word_length_cap=max_word_length)

    # density certificate: an element of infinite projective order
    commutator = a0 @ a1 @ _inv(a0) @ _inv(a1)
    extra = [commutator, product, a0 @ _inv(a1), a0 @ product, a1 @ product]
    for m in extra + list(elems):
        if _infinite_order_certificate(np.asarray(m), tol):
            return ProjectiveClass(kind="dense", order=None, tolerance_used=tol,
                                   max_order_cap=max_order, max_word_length_cap=max_word_length)

    raise InconclusiveError(
        f"group closure exceeded caps (order {max_order}, word length {max_word_length}) "
        "without a density certificate"
    )
