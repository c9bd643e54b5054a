"""Differential operators over a diffalg signature, kept in normal form.

An :class:`OperatorElem` is a finite sum  f_0 + f_1*D + ... + f_d*D^d  with
FuncElem coefficients standing to the left of the D powers.  Composition
rewrites everything back into this form with the commutation rule

    (f*D^a) o (g*D^b)  =  sum_i  C(a,i) * f * D^i(g) * D^(a+b-i),

where D^i(g) is the i-fold derivative in the algebra.  Since coefficients
are exact, operator equality is decidable coefficient by coefficient.

Also provided: application to an algebra element, right division by a monic
first-order operator (D + g), and the gauge endomorphism D -> D + h' that
models conjugation by a formal exponential with derivative h'.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import LambdaPoly, binomial
from .diffalg import AlgebraSignature, FuncElem, SignatureMismatch


class OperatorElem:
    """Normal-form differential operator: tuple of FuncElem coefficients,
    index = power of D, highest entry nonzero."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: AlgebraSignature, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("OperatorElem is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> "OperatorElem":
        return cls(sig, ())

    @classmethod
    def identity(cls, sig: AlgebraSignature) -> "OperatorElem":
        return cls(sig, (sig.one(),))

    @classmethod
    def derivative(cls, sig: AlgebraSignature) -> "OperatorElem":
        """The bare operator D."""
        return cls(sig, (sig.zero(), sig.one()))

    @classmethod
    def multiplication(cls, f: FuncElem) -> "OperatorElem":
        """Multiplication by f as a degree-0 operator."""
        return cls(f.sig, (f,))

    # -- structure -------------------------------------------------------------

    @property
    def order(self) -> int:
        """D-degree; -1 for the zero operator."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> FuncElem:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.sig.zero()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorElem):
            return NotImplemented
        return self.sig == other.sig and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.sig, self.coeffs))

    def _check_sig(self, other):
        if self.sig != other.sig:
            raise SignatureMismatch("operators live over different signatures")

    # -- module operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, OperatorElem):
            return NotImplemented
        self._check_sig(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OperatorElem(
            self.sig, [self.coeff(j) + other.coeff(j) for j in range(n)]
        )

    def __neg__(self):
        return OperatorElem(self.sig, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, OperatorElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        """Scalar multiplication: coefficient-wise product with a FuncElem,
        LambdaPoly, or rational.  Use ``@`` for operator composition."""
        if isinstance(scalar, OperatorElem):
            raise TypeError("use @ (compose) for operator-by-operator products")
        if not isinstance(scalar, FuncElem):
            if not isinstance(scalar, (LambdaPoly, Fraction, int)):
                return NotImplemented
            scalar = self.sig.scalar(scalar)
        return OperatorElem(self.sig, [scalar * c for c in self.coeffs])

    __rmul__ = __mul__

    # -- ring operations -----------------------------------------------------------

    def compose(self, other: "OperatorElem") -> "OperatorElem":
        """Normal form of self o other."""
        self._check_sig(other)
        if not self.coeffs or not other.coeffs:
            return OperatorElem.zero(self.sig)
        # iterated derivatives of the right factor's coefficients
        max_a = len(self.coeffs) - 1
        derived = [list(other.coeffs)]
        for _ in range(max_a):
            derived.append([g.derive() for g in derived[-1]])
        acc = [dict() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for a, f in enumerate(self.coeffs):
            if not f:
                continue
            for b, g in enumerate(other.coeffs):
                if not g:
                    continue
                for i in range(a + 1):
                    gi = derived[i][b]
                    if not gi:
                        continue
                    bucket = acc[a + b - i]
                    for mono, c in (binomial(a, i) * f * gi).terms.items():
                        s = bucket.get(mono, 0) + c
                        if s:
                            bucket[mono] = s
                        else:
                            bucket.pop(mono, None)
        return OperatorElem(
            self.sig, [FuncElem(self.sig, bucket) for bucket in acc]
        )

    def __matmul__(self, other):
        if not isinstance(other, OperatorElem):
            return NotImplemented
        return self.compose(other)

    def compose_power(self, e: int) -> "OperatorElem":
        if e < 0:
            raise ValueError("negative composition powers are not defined")
        result = OperatorElem.identity(self.sig)
        for _ in range(e):
            result = result.compose(self)
        return result

    def apply(self, f: FuncElem) -> FuncElem:
        """Apply the operator to an algebra element."""
        if f.sig != self.sig:
            raise SignatureMismatch("operand lives over a different signature")
        out = self.sig.zero()
        df = f
        for j, c in enumerate(self.coeffs):
            if j > 0:
                df = df.derive()
            if c:
                out = out + c * df
        return out

    def right_divide(self, g: FuncElem) -> tuple["OperatorElem", FuncElem]:
        """Divide by the monic first-order operator (D + g) from the right:
        self = quotient o (D + g) + remainder, remainder of D-degree 0."""
        if g.sig != self.sig:
            raise SignatureMismatch("divisor lives over a different signature")
        divisor = OperatorElem(self.sig, (g, self.sig.one()))
        quotient = OperatorElem.zero(self.sig)
        rem = self
        while rem.order >= 1:
            d = rem.order
            lead = OperatorElem(
                self.sig,
                [self.sig.zero()] * (d - 1) + [rem.coeffs[d]],
            )
            quotient = quotient + lead
            rem = rem - lead.compose(divisor)
        return quotient, rem.coeff(0)

    def gauge(self, h_prime: FuncElem) -> "OperatorElem":
        """Ring endomorphism D -> D + h': conjugation by a formal exponential
        whose logarithmic derivative is h'."""
        if h_prime.sig != self.sig:
            raise SignatureMismatch("gauge element lives over a different signature")
        shifted = OperatorElem(self.sig, (h_prime, self.sig.one()))
        out = OperatorElem.zero(self.sig)
        power = OperatorElem.identity(self.sig)
        for j, c in enumerate(self.coeffs):
            if j > 0:
                power = power.compose(shifted)
            if c:
                out = out + c * power
        return out

    def substitute_lambda(self, value) -> "OperatorElem":
        return OperatorElem(
            self.sig, [c.substitute_lambda(value) for c in self.coeffs]
        )

    # -- rendering ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            dpart = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            if not dpart:
                text = str(c)
                parts.append(
                    text if len(c.terms) == 1 and not text.startswith("-") else f"({text})"
                )
            elif c.is_one():
                parts.append(dpart)
            else:
                parts.append(f"({c}) o {dpart}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OperatorElem({self})"


def gauge_power_shift(sig: AlgebraSignature, c: FuncElem, w: FuncElem, m: int,
                      lam: LambdaPoly) -> tuple[OperatorElem, OperatorElem]:
    """Both sides of the positive-power commutation identity

        (D - c) o w^m  =  w^m o (D - c + m*lam),

    valid whenever Dw = lam*w.  Returned as (lhs, rhs) for checking.
    """
    d = OperatorElem.derivative(sig)
    wm = OperatorElem.multiplication(w ** m)
    lhs = (d - OperatorElem.multiplication(c)).compose(wm)
    shift = OperatorElem.identity(sig) * (sig.scalar(lam) * m)
    rhs = wm.compose(d - OperatorElem.multiplication(c) + shift)
    return lhs, rhs
