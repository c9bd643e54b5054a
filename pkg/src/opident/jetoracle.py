"""Numeric cross-check of the operator identities on concrete functions.

Instead of repeated finite differencing (whose noise compounds through an
n-factor operator chain), every function is represented by its truncated
Taylor jet at the sample point, with closed-form coefficients.  Jet
arithmetic then evaluates D, multiplication by u, and scalar shifts exactly
up to float roundoff, so a residual far above machine precision is a real
disagreement with the symbolic engine, not oracle error.

Residuals come in two flavors: the *relative* residual divides |value at x0|
by the largest magnitude seen anywhere in the computation (intermediate
terms grow roughly like n! * max(|u|,1)^n, so this is the meaningful
scale-free number), and the *absolute* residual is the raw |value|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .exactnum import binomial
from .report import FAIL, PASS, Stopwatch, VerificationReport

SIN = "SIN"
COS = "COS"
EXP_A = "EXP_A"
LINEAR = "LINEAR"
GAUSSIAN_HALF = "GAUSSIAN_HALF"
CUBE_ROOT_MIX = "CUBE_ROOT_MIX"

_OMEGA = cmath.exp(2j * math.pi / 3)


class Jet:
    """Truncated Taylor series at a base point, complex coefficients."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        object.__setattr__(self, "base", complex(base))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a jet needs at least its value coefficient")

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @classmethod
    def constant(cls, base, value, order: int) -> "Jet":
        return cls(base, (value,) + (0.0,) * order)

    @classmethod
    def variable(cls, base, order: int) -> "Jet":
        """The identity function x as a jet at ``base``."""
        if order == 0:
            return cls(base, (base,))
        return cls(base, (base, 1.0) + (0.0,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        """The function value at the base point (coefficient 0)."""
        return self.coeffs[0]

    def _match(self, other: "Jet") -> int:
        if abs(self.base - other.base) > 0.0:
            raise ValueError("jets are centered at different points")
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, Jet):
            n = self._match(other)
            return Jet(self.base, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])
        return Jet(self.base, (self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = self._match(other)
            out = []
            for k in range(n + 1):
                out.append(
                    sum(self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1))
                )
            return Jet(self.base, out)
        return Jet(self.base, [c * complex(other) for c in self.coeffs])

    __rmul__ = __mul__

    def derivative(self) -> "Jet":
        """Order drops by one: c_k <- (k+1) c_{k+1}."""
        if self.order == 0:
            raise ValueError("jet order exhausted; start from a higher order")
        return Jet(
            self.base, [(k + 1) * self.coeffs[k + 1] for k in range(self.order)]
        )

    def power(self, e: int) -> "Jet":
        result = Jet.constant(self.base, 1.0, self.order)
        for _ in range(e):
            result = result * self
        return result

    def __repr__(self):
        return f"Jet(base={self.base.real:g}, coeffs={self.coeffs})"


@dataclass(frozen=True)
class ConcreteFunction:
    """A model function with closed-form derivatives of every order."""

    kind: str
    a: complex = 1.0
    lambda_value: complex | None = None
    equation_order: int | None = None

    def jet(self, x0: float, order: int) -> Jet:
        return jet_of(self, x0, order)

    def __str__(self):
        if self.kind == EXP_A:
            a = self.a.real if self.a.imag == 0 else self.a
            return f"exp({a:g}*x)"
        return {
            SIN: "sin(x)", COS: "cos(x)", LINEAR: "x",
            GAUSSIAN_HALF: "exp(-x^2/2)",
            CUBE_ROOT_MIX: "exp(x)+exp(w*x)+exp(w^2*x)",
        }[self.kind]


def sine() -> ConcreteFunction:
    return ConcreteFunction(SIN, lambda_value=1j, equation_order=2)


def cosine() -> ConcreteFunction:
    return ConcreteFunction(COS, lambda_value=1j, equation_order=2)


def exponential(a=1.0) -> ConcreteFunction:
    return ConcreteFunction(EXP_A, a=complex(a), lambda_value=complex(a), equation_order=1)


def linear() -> ConcreteFunction:
    return ConcreteFunction(LINEAR, lambda_value=0.0, equation_order=2)


def gaussian_half() -> ConcreteFunction:
    return ConcreteFunction(GAUSSIAN_HALF)


def cube_root_mix() -> ConcreteFunction:
    return ConcreteFunction(CUBE_ROOT_MIX, lambda_value=1.0, equation_order=3)


def jet_of(f: ConcreteFunction, x0: float, order: int) -> Jet:
    """Taylor coefficients of f at x0, exact in closed form."""
    if order < 0:
        raise ValueError("order must be >= 0")
    n = order + 1
    if f.kind == SIN:
        cycle = (math.sin(x0), math.cos(x0), -math.sin(x0), -math.cos(x0))
        cs = [cycle[k % 4] / math.factorial(k) for k in range(n)]
    elif f.kind == COS:
        cycle = (math.cos(x0), -math.sin(x0), -math.cos(x0), math.sin(x0))
        cs = [cycle[k % 4] / math.factorial(k) for k in range(n)]
    elif f.kind == EXP_A:
        base = cmath.exp(f.a * x0)
        cs = [base * f.a ** k / math.factorial(k) for k in range(n)]
    elif f.kind == LINEAR:
        cs = ([x0, 1.0] + [0.0] * (n - 2)) if n >= 2 else [x0]
    elif f.kind == GAUSSIAN_HALF:
        # d^k/dx^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2} (probabilists' Hermite)
        base = math.exp(-x0 * x0 / 2.0)
        he = [1.0, x0]
        for k in range(1, n):
            he.append(x0 * he[k] - k * he[k - 1])
        cs = [(-1) ** k * he[k] * base / math.factorial(k) for k in range(n)]
    elif f.kind == CUBE_ROOT_MIX:
        e0 = math.exp(x0)
        e1 = cmath.exp(_OMEGA * x0)
        e2 = cmath.exp(_OMEGA ** 2 * x0)
        cs = [
            (e0 + _OMEGA ** k * e1 + _OMEGA ** (2 * k) * e2) / math.factorial(k)
            for k in range(n)
        ]
    else:
        raise ValueError(f"unknown function kind {f.kind!r}")
    return Jet(x0, cs)


@dataclass(frozen=True)
class ResidualDetail:
    value: complex
    absolute: float
    relative: float
    max_magnitude: float


def eval_identity_detail(f: ConcreteFunction, n: int, x0: float, *,
                         lam: complex | None = None, m: int = 0,
                         order: int | None = None) -> ResidualDetail:
    """Evaluate the identity's left-hand side at x0 by jet arithmetic.

    ``lam`` overrides the function's own lambda (needed e.g. for Du = -L*u,
    where u = e^{-x} but the chain shift is +L).  ``m`` inserts the D^m of
    the generalized L=0 identity between the power and the chain.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if order is None:
        order = n + m + 2
    lam = f.lambda_value if lam is None else complex(lam)
    if lam is None:
        raise ValueError(f"{f} has no lambda; pass lam= explicitly")
    u = jet_of(f, x0, order)
    max_mag = abs(u.value)
    total = 0.0 + 0.0j
    for k in range(n + 1):
        g = u.power(n - k)
        max_mag = max(max_mag, abs(g.value))
        for _ in range(m):
            g = g.derivative()
            max_mag = max(max_mag, abs(g.value))
        for j in range(k - 1, -1, -1):
            g = g.derivative() - u * g + (j * lam) * g
            max_mag = max(max_mag, abs(g.value))
        term = binomial(n, k) * g.value
        total += term
        max_mag = max(max_mag, abs(term), abs(total))
    absolute = abs(total)
    relative = absolute / max_mag if max_mag > 0.0 else 0.0
    return ResidualDetail(total, absolute, relative, max_mag)


def eval_identity_numeric(f: ConcreteFunction, n: int, x0: float, **kwargs) -> float:
    """Relative residual of the identity at x0 (0 means it held exactly)."""
    return eval_identity_detail(f, n, x0, **kwargs).relative


def check_exponent_kernel(x0: float) -> float:
    """|(D + x) e^{-x^2/2}| at x0; zero in exact arithmetic."""
    g = jet_of(gaussian_half(), x0, 3)
    x = Jet.variable(x0, 3)
    return abs((g.derivative() + x * g).value)


def sample_points(count: int = 10, exclude_origin_radius: float = 0.0) -> list[float]:
    """``count`` evenly spaced points in [-1, 1]; optionally drop a ball
    around 0 (where some nonzero witnesses degenerate)."""
    pts = [-1.0 + 2.0 * i / (count - 1) for i in range(count)]
    if exclude_origin_radius > 0.0:
        pts = [x for x in pts if abs(x) > exclude_origin_radius]
    return pts


def residuals_at_samples(f: ConcreteFunction, n: int, count: int = 10,
                         **kwargs) -> list[float]:
    return [eval_identity_numeric(f, n, x0, **kwargs) for x0 in sample_points(count)]


# -- agreement suite -------------------------------------------------------------

ZERO_RTOL = 1e-8  # a symbolically zero identity must stay below this
NONZERO_RTOL = 1e-3  # a symbolically nonzero one must exceed this at >= 9/10 points
KERNEL_ATOL = 1e-12


def zero_instance_report(check_id: str, f: ConcreteFunction, n: int,
                         points: int = 10, **kwargs) -> VerificationReport:
    """The identity is symbolically zero: every sampled relative residual
    must stay below ZERO_RTOL."""
    with Stopwatch() as sw:
        residuals = residuals_at_samples(f, n, points, **kwargs)
        worst = max(residuals)
        good = worst < ZERO_RTOL
    params = {"function": str(f), "n": n, "points": points,
              "max_residual": worst, **{k: v for k, v in kwargs.items() if k != "lam"}}
    return VerificationReport(
        check_id, params, PASS if good else FAIL,
        None if good else f"relative residual {worst:g} >= {ZERO_RTOL:g}",
        sw.ms, good,
    )


def nonzero_instance_report(check_id: str, f: ConcreteFunction, n: int,
                            points: int = 10, **kwargs) -> VerificationReport:
    """The identity is symbolically nonzero: the residual must exceed
    NONZERO_RTOL at >= 9 of 10 points (a nonzero function may still have
    isolated roots among the samples)."""
    with Stopwatch() as sw:
        pts = sample_points(points, exclude_origin_radius=1e-2)
        residuals = [eval_identity_numeric(f, n, x0, **kwargs) for x0 in pts]
        hits = sum(r > NONZERO_RTOL for r in residuals)
        good = hits >= len(pts) - 1
    params = {"function": str(f), "n": n, "points": len(pts), "above_tol": hits}
    return VerificationReport(
        check_id, params, PASS if good else FAIL,
        None if good else f"only {hits}/{len(pts)} residuals exceed {NONZERO_RTOL:g}",
        sw.ms, good,
    )


def agreement_reports(points: int = 10) -> list[VerificationReport]:
    """Numeric counterparts of every symbolically asserted family."""
    reports = []
    for n in range(1, 13):
        reports.append(zero_instance_report("oracle_first_order", exponential(1), n, points))
    for n in range(1, 12, 2):
        reports.append(zero_instance_report("oracle_second_order", sine(), n, points))
    reports.append(second_order_witness_report(points))
    for n in range(1, 12, 2):
        reports.append(zero_instance_report("oracle_lambda_zero", linear(), n, points, lam=0))
    for n in range(1, 8, 2):
        for m in (0, 2, 4):
            reports.append(
                zero_instance_report("oracle_general", linear(), n, points, lam=0, m=m)
            )
    for n in range(1, 8, 2):
        reports.append(
            zero_instance_report("oracle_decay_chain", exponential(-1), n, points, lam=1)
        )
    reports.append(zero_instance_report("oracle_third_order", cube_root_mix(), 1, points))
    reports.append(third_order_negative_report(points))
    reports.append(exponent_kernel_report())
    return reports


def second_order_witness_report(points: int = 10) -> VerificationReport:
    """At n = 2 the sine identity leaves cos x - i sin x = e^{-ix}, of
    modulus exactly 1: the absolute residual must be 1 at every point."""
    with Stopwatch() as sw:
        absolutes = [
            eval_identity_detail(sine(), 2, x0).absolute for x0 in sample_points(points)
        ]
        worst = max(abs(a - 1.0) for a in absolutes)
        good = worst < 1e-9
    params = {"function": str(sine()), "n": 2, "points": points, "max_deviation": worst}
    return VerificationReport(
        "oracle_second_order_witness", params, PASS if good else FAIL,
        None if good else f"|absolute residual - 1| up to {worst:g}",
        sw.ms, good,
    )


def third_order_negative_report(points: int = 10) -> VerificationReport:
    """Some odd n <= 9 must be visibly nonzero for D^3 u = u."""
    with Stopwatch() as sw:
        confirmed = []
        for n in range(3, 10, 2):
            rep = nonzero_instance_report("oracle_third_order", cube_root_mix(), n, points)
            if rep.ok:
                confirmed.append(n)
        good = bool(confirmed)
    params = {"function": str(cube_root_mix()), "confirmed_odd_n": confirmed}
    return VerificationReport(
        "oracle_third_order_negative", params, PASS if good else FAIL,
        None if good else "no odd n <= 9 was confirmed nonzero",
        sw.ms, good,
    )


def exponent_kernel_report(points: int = 5) -> VerificationReport:
    with Stopwatch() as sw:
        values = [check_exponent_kernel(x0) for x0 in sample_points(points)]
        worst = max(values)
        good = worst < KERNEL_ATOL
    params = {"function": str(gaussian_half()), "points": points, "max_value": worst}
    return VerificationReport(
        "oracle_exponent_kernel", params, PASS if good else FAIL,
        None if good else f"|(D+x)e^(-x^2/2)| up to {worst:g}",
        sw.ms, good,
    )
