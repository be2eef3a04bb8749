"""Projector decomposition and solution transfer to the Hestenes equation.

Right-multiplying a solution of the massive Dirac-Kahler equation by the
four compound projectors splits it into parts that solve the Hestenes
equation (tags "++" and "--") or its sign-flipped variant ("-+" and "+-").
From one solution a quadruple of real even Hestenes fields is built, in
two independent ways that must agree to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ConstantForm, projector, right_mul
from .calculus import dk_residual, hestenes_residual
from .fields import (Equation, EquationParams, FormField, conjugate,
                     even_part, max_abs, odd_part)

_E0 = ConstantForm.e(0)
_E1 = ConstantForm.e(1)
_E2 = ConstantForm.e(2)

# Decomposition order of the compound projector tags.
DECOMPOSITION_TAGS = ("++", "-+", "+-", "--")


@dataclass(frozen=True)
class DecompositionResult:
    """The four projector parts of a field, keyed by compound tag."""

    pp: FormField
    mp: FormField
    pm: FormField
    mm: FormField

    def parts(self):
        return (("++", self.pp), ("-+", self.mp), ("+-", self.pm), ("--", self.mm))

    def total(self) -> FormField:
        return self.pp + self.mp + self.pm + self.mm


def decompose(omega: FormField) -> DecompositionResult:
    """Split omega into its four compound projector parts."""
    parts = {tag: right_mul(omega, projector(tag)) for tag in DECOMPOSITION_TAGS}
    return DecompositionResult(pp=parts["++"], mp=parts["-+"],
                               pm=parts["+-"], mm=parts["--"])


def omega_pm(omega: FormField, sign: str) -> FormField:
    """The real companion fields of omega.

    With overall sign s = +-1 this is
    s/2 (omega + conj) e0 + s i/2 (omega - conj) e1 e2,
    which is real-valued for any omega; "-" is the negative of "+".
    """
    if sign not in ("+", "-"):
        raise ValueError(f'sign must be "+" or "-", got {sign!r}')
    s = 1.0 if sign == "+" else -1.0
    re2 = omega + conjugate(omega)
    im2 = omega - conjugate(omega)
    term0 = 0.5 * right_mul(re2, _E0)
    term12 = 0.5j * right_mul(right_mul(im2, _E1), _E2)
    return s * (term0 + term12)


class ConsistencyError(RuntimeError):
    """The two construction routes of the Hestenes quadruple disagree."""


@dataclass(frozen=True)
class HestenesQuadruple:
    """Even parts of omega_plus times 1, e0, e1 e2, and e0 e1 e2."""

    omega1: FormField
    omega2: FormField
    omega3: FormField
    omega4: FormField
    route_deviation: float

    def fields(self):
        return (self.omega1, self.omega2, self.omega3, self.omega4)


def _quadruple_direct(omega: FormField):
    plus = omega_pm(omega, "+")
    q1 = even_part(plus)
    q2 = even_part(right_mul(plus, _E0))
    q3 = even_part(right_mul(right_mul(plus, _E1), _E2))
    q4 = even_part(right_mul(right_mul(right_mul(plus, _E0), _E1), _E2))
    return q1, q2, q3, q4


def _quadruple_closed_form(omega: FormField):
    ev, od = even_part(omega), odd_part(omega)
    ev_sum = ev + conjugate(ev)
    ev_diff = ev - conjugate(ev)
    od_sum = od + conjugate(od)
    od_diff = od - conjugate(od)

    def r(field, *factors):
        for c in factors:
            field = right_mul(field, c)
        return field

    q1 = 0.5 * r(od_sum, _E0) + 0.5j * r(ev_diff, _E1, _E2)
    q2 = 0.5 * ev_sum + 0.5j * r(od_diff, _E0, _E1, _E2)
    q3 = 0.5 * r(od_sum, _E0, _E1, _E2) - 0.5j * ev_diff
    q4 = 0.5 * r(ev_sum, _E1, _E2) - 0.5j * r(od_diff, _E0)
    return q1, q2, q3, q4


def hestenes_quadruple(omega: FormField, rel_tol: float = 1e-14) -> HestenesQuadruple:
    """Build the four even real companion fields of omega.

    Both the direct route (even parts of omega_plus times blades) and the
    closed-form route are evaluated; a deviation beyond rel_tol relative to
    the scale of omega raises ConsistencyError.
    """
    direct = _quadruple_direct(omega)
    closed = _quadruple_closed_form(omega)
    deviation = max(max_abs(a - b) for a, b in zip(direct, closed))
    scale = max_abs(omega)
    if deviation > rel_tol * scale:
        raise ConsistencyError(
            f"quadruple routes disagree by {deviation:.3e} at scale {scale:.3e}")
    return HestenesQuadruple(*direct, route_deviation=deviation)


@dataclass(frozen=True)
class Prop4Report:
    """Residuals of the four projector parts against their equations."""

    mass: complex
    scale: float
    rel_tol: float
    dk_residual: float
    residuals: dict

    @property
    def precondition_ok(self) -> bool:
        return self.dk_residual <= self.rel_tol * self.scale

    @property
    def passed(self) -> bool:
        if not self.precondition_ok:
            return False
        return all(v <= self.rel_tol * self.scale for v in self.residuals.values())

    def lines(self) -> list[str]:
        out = [f"scale={self.scale:.9g}",
               f"dk_residual={self.dk_residual:.9g}",
               f"precondition_ok={str(self.precondition_ok).lower()}"]
        for tag, value in self.residuals.items():
            out.append(f"residual_{_tag_label(tag)}={value:.9g}")
        out.append(f"status={'pass' if self.passed else 'fail'}")
        return out


def _tag_label(tag: str) -> str:
    return tag.replace("+", "p").replace("-", "m")


_PART_EQUATIONS = {
    "++": Equation.HESTENES,
    "--": Equation.HESTENES,
    "-+": Equation.HESTENES_FLIPPED,
    "+-": Equation.HESTENES_FLIPPED,
}


def verify_prop4(omega: FormField, mass: complex, rel_tol: float = 1e-12) -> Prop4Report:
    """Check the solution-transfer claims for one candidate solution.

    The input must satisfy the Dirac-Kahler equation at mass (reported as
    dk_residual and flagged instead of silently passed when violated).
    The "++" and "--" parts are tested against the Hestenes equation, the
    "-+" and "+-" parts against its sign-flipped variant.
    """
    mass = complex(mass)
    scale = max_abs(omega)
    dk = max_abs(dk_residual(omega, EquationParams(mass)))
    residuals = {}
    for tag, part in decompose(omega).parts():
        params = EquationParams(mass, _PART_EQUATIONS[tag])
        residuals[tag] = max_abs(hestenes_residual(part, params))
    return Prop4Report(mass=mass, scale=scale, rel_tol=rel_tol,
                       dk_residual=dk, residuals=residuals)


@dataclass(frozen=True)
class IndependenceReport:
    """Numerical rank of the stacked quadruple coefficient matrix."""

    rank: int
    singular_values: tuple
    threshold: float

    def lines(self) -> list[str]:
        out = [f"rank={self.rank}", f"rank_threshold={self.threshold:.9g}"]
        for i, s in enumerate(self.singular_values):
            out.append(f"sigma_{i}={s:.9g}")
        return out


def verify_quadruple_independence(quad: HestenesQuadruple,
                                  threshold_ratio: float = 1e-10) -> IndependenceReport:
    """Report the rank of the four stacked fields.

    Rows are the flattened coefficient arrays; singular values below
    threshold_ratio times the largest count as zero.  All-zero input has
    rank 0.
    """
    matrix = np.stack([f.coeffs.ravel() for f in quad.fields()])
    singular = np.linalg.svd(matrix, compute_uv=False)
    top = float(singular[0])
    threshold = threshold_ratio * top
    rank = 0 if top == 0.0 else int(np.sum(singular > threshold))
    return IndependenceReport(rank=rank,
                              singular_values=tuple(float(s) for s in singular),
                              threshold=threshold)
