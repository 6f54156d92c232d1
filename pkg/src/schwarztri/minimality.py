"""Exact strong-minimality decision for triangle Schwarzian equations.

The decision runs through the classical quadrature classification of the
hypergeometric equation (Kimura): the equation fails to be strongly minimal
exactly when its linearization is Liouville integrable, i.e. when one of the
two conditions below holds for the exponent differences.  The chain behind
the verdict names:

    condition 1 or 2 holds
        <=> the reduced hypergeometric equation is solvable by quadratures
        <=> the associated Riccati equation has a solution algebraic over C(y)
        <=> the differential Galois group is a proper subgroup of PSL2(C)
        <=> the Schwarzian equation is not strongly minimal.

Condition 1 asks for one of the four signed sums of the exponent differences
to be an odd integer; condition 2 sweeps a fixed 15-row table of fractional
parts modulo integer shifts, some rows carrying an "even shift sum" clause.

Witnesses are reproducible: the sweep order is rows, then sign choices, then
column permutations, and every returned witness re-verifies by substitution.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .triangle import AngleParams, ExponentTriple, exponent_differences

_SIGN_CHOICES = tuple(itertools.product((1, -1), repeat=3))
_PERMUTATIONS = tuple(itertools.permutations((0, 1, 2)))

# Rows of the integrability table: three column residues (None = arbitrary
# entry) plus whether the "shift sum even" clause applies.  Rows 2 and 3 are
# the tetrahedral pair (1/2,1/3,1/3) and (2/3,1/3,1/3 | even).
_F = Fraction
_TABLE: tuple[tuple[tuple[Optional[Fraction], ...], bool], ...] = (
    ((_F(1, 2), _F(1, 2), None), False),
    ((_F(1, 2), _F(1, 3), _F(1, 3)), False),
    ((_F(2, 3), _F(1, 3), _F(1, 3)), True),
    ((_F(1, 2), _F(1, 3), _F(1, 4)), False),
    ((_F(2, 3), _F(1, 4), _F(1, 4)), True),
    ((_F(1, 2), _F(1, 3), _F(1, 5)), False),
    ((_F(2, 5), _F(1, 3), _F(1, 3)), True),
    ((_F(2, 3), _F(1, 5), _F(1, 5)), True),
    ((_F(1, 2), _F(2, 5), _F(1, 5)), True),
    ((_F(3, 5), _F(1, 3), _F(1, 5)), True),
    ((_F(2, 5), _F(2, 5), _F(2, 5)), True),
    ((_F(2, 3), _F(1, 3), _F(1, 5)), True),
    ((_F(4, 5), _F(1, 5), _F(1, 5)), True),
    ((_F(1, 2), _F(2, 5), _F(1, 3)), True),
    ((_F(3, 5), _F(2, 5), _F(1, 3)), True),
)

# rows with an "arbitrary" column must not carry the parity clause
assert all(not parity or None not in fracs for fracs, parity in _TABLE)


def _values_alpha_beta_gamma(e: ExponentTriple) -> tuple[Fraction, Fraction, Fraction]:
    # the inverse angle parameters, in (alpha, beta, gamma) order
    return (e.at_inf, e.at0, e.at1)


@dataclass(frozen=True)
class Condition1Witness:
    """A signed sum of the inverse angle parameters that is an odd integer.

    ``signs`` applies to (1/alpha, 1/beta, 1/gamma) in that order.
    """

    signs: tuple[int, int, int]
    value: int

    def verify(self, e: ExponentTriple) -> bool:
        v = _values_alpha_beta_gamma(e)
        total = sum(s * x for s, x in zip(self.signs, v))
        return total == self.value and self.value % 2 != 0

    def to_record(self) -> dict:
        return {"kind": "condition1", "signs": list(self.signs), "value": self.value}


@dataclass(frozen=True)
class Condition2Witness:
    """A table-row match: row index (1-based), one sign per parameter slot,
    the permutation sending table column j to parameter slot permutation[j],
    the integer shifts per column (None for an arbitrary column), and whether
    the row's parity clause was in force."""

    row: int
    signs: tuple[int, int, int]
    permutation: tuple[int, int, int]
    shifts: tuple[Optional[int], Optional[int], Optional[int]]
    parity_used: bool

    def verify(self, e: ExponentTriple) -> bool:
        fracs, parity = _TABLE[self.row - 1]
        if parity != self.parity_used:
            return False
        v = _values_alpha_beta_gamma(e)
        if sorted(self.permutation) != [0, 1, 2]:
            return False
        total = 0
        for col, frac in enumerate(fracs):
            slot = self.permutation[col]
            shift = self.shifts[col]
            if frac is None:
                if shift is not None:
                    return False
                continue
            if shift is None:
                return False
            if self.signs[slot] * v[slot] != frac + shift:
                return False
            total += shift
        if parity and total % 2 != 0:
            return False
        return True

    def to_record(self) -> dict:
        return {
            "kind": "condition2",
            "row": self.row,
            "signs": list(self.signs),
            "permutation": list(self.permutation),
            "l": self.shifts[0],
            "m": self.shifts[1],
            "n": self.shifts[2],
            "parity_used": self.parity_used,
        }


KimuraWitness = Union[Condition1Witness, Condition2Witness]


class Verdict(enum.Enum):
    STRONGLY_MINIMAL = "strongly_minimal"
    NOT_STRONGLY_MINIMAL = "not_strongly_minimal"
    GENERIC_STRONGLY_MINIMAL = "generic_strongly_minimal"


@dataclass(frozen=True)
class MinimalityVerdict:
    verdict: Verdict
    witness: Optional[KimuraWitness] = None

    def __post_init__(self):
        if self.verdict is Verdict.NOT_STRONGLY_MINIMAL and self.witness is None:
            raise ValueError("a non-minimality verdict must carry a witness")
        if self.verdict is not Verdict.NOT_STRONGLY_MINIMAL and self.witness is not None:
            raise ValueError("only non-minimality verdicts carry witnesses")

    @property
    def strongly_minimal(self) -> bool:
        return self.verdict is not Verdict.NOT_STRONGLY_MINIMAL

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness.to_record() if self.witness else None,
        }


def check_condition1(e: ExponentTriple) -> Optional[Condition1Witness]:
    """First witness among the four signed sums (+++), (-++), (+-+), (++-)
    whose value is an odd integer; None when there is none."""
    v = _values_alpha_beta_gamma(e)
    for signs in ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)):
        total = sum(s * x for s, x in zip(signs, v))
        if total.denominator == 1 and total.numerator % 2 != 0:
            return Condition1Witness(signs=signs, value=int(total))
    return None


def _integer_shift(value: Fraction, frac: Fraction) -> Optional[int]:
    # value - frac is an integer iff the reduced denominators agree
    q = frac.denominator
    if value.denominator != q:
        return None
    num = value.numerator - frac.numerator
    return num // q if num % q == 0 else None


def check_condition2(e: ExponentTriple) -> Optional[Condition2Witness]:
    """Deterministic sweep of the 15 table rows, 8 sign choices and 6 column
    permutations; returns the first match or None."""
    v = _values_alpha_beta_gamma(e)
    # feasible[(slot, sign)][col] = integer shift or None, per row
    for row_index, (fracs, parity) in enumerate(_TABLE, start=1):
        shift_of = {}
        row_possible = True
        for col, frac in enumerate(fracs):
            if frac is None:
                continue
            col_possible = False
            for slot in range(3):
                for sign in (1, -1):
                    s = _integer_shift(sign * v[slot], frac)
                    shift_of[(col, slot, sign)] = s
                    col_possible = col_possible or s is not None
            if not col_possible:
                row_possible = False
                break
        if not row_possible:
            continue
        for signs in _SIGN_CHOICES:
            for perm in _PERMUTATIONS:
                shifts: list[Optional[int]] = [None, None, None]
                total = 0
                ok = True
                for col, frac in enumerate(fracs):
                    if frac is None:
                        continue
                    slot = perm[col]
                    s = shift_of[(col, slot, signs[slot])]
                    if s is None:
                        ok = False
                        break
                    shifts[col] = s
                    total += s
                if not ok:
                    continue
                if parity and total % 2 != 0:
                    continue
                return Condition2Witness(
                    row=row_index,
                    signs=signs,
                    permutation=perm,
                    shifts=tuple(shifts),
                    parity_used=parity,
                )
    return None


def classify(params: AngleParams) -> MinimalityVerdict:
    """Decide strong minimality of the triangle Schwarzian equation.

    Generic parameters are strongly minimal; exact rational parameters are
    classified by the two quadrature conditions, a match yielding a
    re-verifiable witness.
    """
    if params.is_generic:
        return MinimalityVerdict(Verdict.GENERIC_STRONGLY_MINIMAL)
    e = exponent_differences(params)
    witness = check_condition1(e) or check_condition2(e)
    if witness is not None:
        return MinimalityVerdict(Verdict.NOT_STRONGLY_MINIMAL, witness)
    return MinimalityVerdict(Verdict.STRONGLY_MINIMAL)
