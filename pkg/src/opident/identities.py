"""Builders and exact checkers for the operator-binomial identities.

The object under study is the sum

    S_n(u) = sum_{k=0}^{n} C(n,k) (D-u) o (D-u+L) o ... o (D-u+(k-1)L) u^(n-k),

where the k-th term carries k chain factors (none for k=0, so that term is
just u^n) and the rightmost factor acts first.  For u solving Du = L*u this
vanishes for every n; for D^2 u = L^2 u it vanishes for every odd n and
produces the witness v - L*u at n = 2.  Everything here is verified exactly
over the formal L, so a single run covers all scalar values at once.

The second family lives in the Weyl algebra: the operators

    P_n = sum_k C(n,k) D^k o x^(n-k)

with their recurrence, right-divisibility by (D + x) for odd n, and gauge
equivalence to the L=0 identity.  A small free noncommutative algebra in two
letters carries the binomial rearrangement lemma that powers the general
proof.
"""

from __future__ import annotations

from fractions import Fraction

from .diffalg import (
    NILP2,
    ORDER1,
    ORDER2,
    WEYL_X,
    SPLIT,
    AlgebraSignature,
    FuncElem,
    decay_signature,
    order_signature,
)
from .exactnum import LambdaPoly, binomial
from .opring import OperatorElem
from .report import FAIL, NONZERO, PASS, ZERO, Stopwatch, VerificationReport


# -- free noncommutative algebra ------------------------------------------------

class FreeElem:
    """Noncommutative polynomial over Q in the two letters A and B.

    Terms map words (strings over {A, B}) to rational coefficients;
    multiplication concatenates words and is *not* commutative.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, c in (terms or {}).items():
            if not all(ch in "AB" for ch in word):
                raise ValueError(f"word {word!r} uses letters outside A, B")
            c = Fraction(c)
            if c:
                clean[word] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FreeElem is immutable")

    @classmethod
    def letter(cls, ch: str) -> "FreeElem":
        return cls({ch: 1})

    @classmethod
    def one(cls) -> "FreeElem":
        return cls({"": 1})

    @classmethod
    def scalar(cls, c) -> "FreeElem":
        return cls({"": Fraction(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, FreeElem):
            return other
        if isinstance(other, (int, Fraction)):
            return FreeElem.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeElem(out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeElem(out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined")
        result = FreeElem.one()
        for _ in range(e):
            result = result * self
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda s: (len(s), s)):
            c = self.terms[w]
            body = "*".join(w) if w else "1"
            if abs(c) != 1 or not w:
                body = f"{abs(c)}*{body}" if w else str(abs(c))
            parts.append((c < 0, body))
        text = ""
        for i, (neg, body) in enumerate(parts):
            if i == 0:
                text = ("-" if neg else "") + body
            else:
                text += (" - " if neg else " + ") + body
        return text

    def __repr__(self):
        return f"FreeElem({self})"


# -- identity builders ------------------------------------------------------------

def chain_factor(sig: AlgebraSignature, u_expr: FuncElem, shift, lam=None) -> OperatorElem:
    """The operator D - u + shift*L (or shift*lam for a concrete lam)."""
    if lam is None:
        scale = LambdaPoly.lam(1, shift)
    else:
        scale = LambdaPoly.const(Fraction(shift) * Fraction(lam))
    return (
        OperatorElem.derivative(sig)
        - OperatorElem.multiplication(u_expr)
        + OperatorElem.identity(sig) * scale
    )


def chain_operator(sig, u_expr, k: int, lam=None) -> OperatorElem:
    """(D-u) o (D-u+L) o ... o (D-u+(k-1)L), composed left to right;
    the empty chain (k=0) is the identity operator."""
    op = OperatorElem.identity(sig)
    for j in range(k):
        op = op.compose(chain_factor(sig, u_expr, j, lam))
    return op


def chain_apply(sig, u_expr, k: int, target: FuncElem, lam=None) -> FuncElem:
    """Apply the k-factor chain to ``target`` rightmost factor first,
    without forming the composed operator."""
    out = target
    for j in range(k - 1, -1, -1):
        out = chain_factor(sig, u_expr, j, lam).apply(out)
    return out


def identity_terms(sig, u_expr, n: int, lam=None, via: str = "apply") -> list[FuncElem]:
    """The n+1 summands C(n,k) * chain_k(u^(n-k)) of the identity."""
    if n < 1:
        raise ValueError("the identities are stated for n >= 1")
    terms = []
    for k in range(n + 1):
        target = u_expr ** (n - k)
        if via == "compose":
            value = chain_operator(sig, u_expr, k, lam).apply(target)
        else:
            value = chain_apply(sig, u_expr, k, target, lam)
        terms.append(binomial(n, k) * value)
    return terms


def build_identity_lhs(sig, u_expr, n: int, lam=None, via: str = "apply") -> FuncElem:
    """Left-hand side of the binomial identity for the given u and n.

    ``lam=None`` keeps L formal; a rational value substitutes it in the chain
    shifts (the L=0 route builds the plain (D-u)^k chain).
    """
    total = sig.zero()
    for term in identity_terms(sig, u_expr, n, lam, via):
        total = total + term
    return total


def build_pn(n: int) -> OperatorElem:
    """P_n = sum_k C(n,k) D^k o x^(n-k) over the Weyl signature, normal form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    sig = WEYL_X
    x = sig.gen("x")
    d = OperatorElem.derivative(sig)
    total = OperatorElem.zero(sig)
    for k in range(n + 1):
        term = d.compose_power(k).compose(
            OperatorElem.multiplication(x ** (n - k))
        )
        total = total + term * binomial(n, k)
    return total


def build_gauge_precursor(n: int) -> OperatorElem:
    """sum_k C(n,k) (D-x)^k o x^(n-k): the L=0, u=x identity in operator form."""
    sig = WEYL_X
    x = sig.gen("x")
    dmx = OperatorElem.derivative(sig) - OperatorElem.multiplication(x)
    total = OperatorElem.zero(sig)
    for k in range(n + 1):
        term = dmx.compose_power(k).compose(
            OperatorElem.multiplication(x ** (n - k))
        )
        total = total + term * binomial(n, k)
    return total


# -- checkers -------------------------------------------------------------------

def _zero_report(check_id: str, params: dict, value: FuncElem, expect_zero,
                 ms: float) -> VerificationReport:
    """Report ZERO/NONZERO for an identity value; expect_zero None = no claim."""
    if not value:
        outcome, witness = ZERO, None
        ok = True if expect_zero is True else (False if expect_zero is False else None)
    else:
        outcome, witness = NONZERO, str(value)
        ok = True if expect_zero is False else (False if expect_zero is True else None)
    return VerificationReport(check_id, params, outcome, witness, ms, ok)


def check_theorem1(n_max: int) -> list[VerificationReport]:
    """First-order case Du = L*u: the identity must vanish for every n."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = ORDER1
    u = sig.gen("u")
    reports = []
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            value = build_identity_lhs(sig, u, n)
        reports.append(
            _zero_report("theorem1", {"n": n, "lambda": "formal"}, value, True, sw.ms)
        )
    return reports


def check_theorem2(n_max: int) -> list[VerificationReport]:
    """Second-order case D^2 u = L^2 u: zero for odd n, witness v - L*u at
    n = 2; even n > 2 are reported without a claim."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = ORDER2
    u = sig.gen("u")
    expected_witness = sig.gen("v") - LambdaPoly.lam() * u
    reports = []
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            value = build_identity_lhs(sig, u, n)
        params = {"n": n, "lambda": "formal"}
        if n % 2 == 1:
            reports.append(_zero_report("theorem2", params, value, True, sw.ms))
        elif n == 2:
            ok = bool(value) and value == expected_witness
            reports.append(
                VerificationReport(
                    "theorem2", params,
                    NONZERO if value else ZERO,
                    str(value) if value else None,
                    sw.ms, ok,
                )
            )
        else:
            reports.append(_zero_report("theorem2", params, value, None, sw.ms))
    return reports


def check_split_cancellation(n: int) -> VerificationReport:
    """For Dv = -L*v and odd n, the k and n-k summands cancel pairwise."""
    if n < 1 or n % 2 == 0:
        raise ValueError("pairwise cancellation is stated for odd n only")
    sig = decay_signature()
    v = sig.gen("v")
    with Stopwatch() as sw:
        terms = identity_terms(sig, v, n)
        bad = []
        for k in range((n + 1) // 2):
            if terms[k] + terms[n - k]:
                bad.append((k, n - k, str(terms[k] + terms[n - k])))
        total = sig.zero()
        for t in terms:
            total = total + t
    params = {"n": n, "pairs": (n + 1) // 2}
    if not bad and not total:
        return VerificationReport("split_cancellation", params, PASS, None, sw.ms, True)
    witness = "; ".join(
        f"term[{k}]+term[{nk}] = {w}" for k, nk, w in bad
    ) or f"total = {total}"
    return VerificationReport("split_cancellation", params, FAIL, witness, sw.ms, False)


def check_decomposition(n: int) -> VerificationReport:
    """SPLIT route u = v + w (Dv = -L*v, Dw = L*w): zero for odd n; the n = 2
    witness is the image of v - L*u under the decomposition."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sig = SPLIT
    u = sig.gen("v") + sig.gen("w")
    with Stopwatch() as sw:
        value = build_identity_lhs(sig, u, n)
    params = {"n": n, "u": "v+w"}
    if n % 2 == 1:
        expect = True
    elif n == 2:
        expect = False
    else:
        expect = None
    return _zero_report("decomposition", params, value, expect, sw.ms)


def check_recurrence(n_max: int) -> list[VerificationReport]:
    """P_{n+2} = P_{n+1} o (D + x) + (n+1) P_n, exactly, for n up to n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = WEYL_X
    dpx = OperatorElem.derivative(sig) + OperatorElem.multiplication(sig.gen("x"))
    reports = []
    pn = build_pn(1)
    pn1 = build_pn(2)
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            pn2 = build_pn(n + 2)
            rhs = pn1.compose(dpx) + pn * (n + 1)
            good = pn2 == rhs
        reports.append(
            VerificationReport(
                "pn_recurrence", {"n": n}, PASS if good else FAIL,
                None if good else str(pn2 - rhs), sw.ms, good,
            )
        )
        pn, pn1 = pn1, pn2
    return reports


def check_factorization(n_max: int) -> list[VerificationReport]:
    """Right division of P_n by (D + x): remainder 0 for odd n, 1 for n = 2,
    plus the induction cross-check on the quotients."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = WEYL_X
    x = sig.gen("x")
    dpx = OperatorElem.derivative(sig) + OperatorElem.multiplication(x)
    reports = []
    quotients: dict[int, OperatorElem] = {}
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            pn = build_pn(n)
            q, r = pn.right_divide(x)
            if q.compose(dpx) + OperatorElem.multiplication(r) != pn:
                raise AssertionError("right division failed to recompose")
            quotients[n] = q
        params = {"n": n, "remainder": str(r)}
        if n % 2 == 1:
            good = not r
            reports.append(
                VerificationReport(
                    "pn_factorization", params, PASS if good else FAIL,
                    None if good else str(r), sw.ms, good,
                )
            )
        elif n == 2:
            good = r.is_one()
            reports.append(
                VerificationReport(
                    "pn_factorization", params, PASS if good else FAIL,
                    None if good else str(r), sw.ms, good,
                )
            )
        else:
            reports.append(
                VerificationReport("pn_factorization", params, PASS, None, sw.ms, None)
            )
    for n in range(1, n_max - 1, 2):
        with Stopwatch() as sw:
            expected = build_pn(n + 1) + quotients[n] * (n + 1)
            good = quotients[n + 2] == expected
        reports.append(
            VerificationReport(
                "pn_quotient_induction", {"n": n}, PASS if good else FAIL,
                None if good else str(quotients[n + 2] - expected), sw.ms, good,
            )
        )
    return reports


def check_gauge_equivalence(n_max: int) -> list[VerificationReport]:
    """Gauging D -> D + x turns sum C(n,k)(D-x)^k o x^(n-k) into P_n, so the
    L=0 identity and its exponential-kernel form are the same statement."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = WEYL_X
    x = sig.gen("x")
    reports = []
    for n in range(1, n_max + 1, 2):
        with Stopwatch() as sw:
            gauged = build_gauge_precursor(n).gauge(x)
            pn = build_pn(n)
            good = gauged == pn
        reports.append(
            VerificationReport(
                "gauge_equivalence", {"n": n}, PASS if good else FAIL,
                None if good else str(gauged - pn), sw.ms, good,
            )
        )
    return reports


def check_general_theorem(n: int, m: int) -> VerificationReport:
    """D^2 u = 0 generalization: sum_k C(n,k) (D-u)^k D^m u^(n-k) = 0 for
    odd n and even m (plain powers: the L = 0 chain)."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    if m < 0 or m % 2 == 1:
        raise ValueError("m must be even and nonnegative")
    sig = NILP2
    u = sig.gen("u")
    with Stopwatch() as sw:
        total = sig.zero()
        for k in range(n + 1):
            inner = (u ** (n - k)).derive(m)
            total = total + binomial(n, k) * chain_apply(sig, u, k, inner, lam=0)
    return _zero_report("general_theorem", {"n": n, "m": m}, total, True, sw.ms)


def check_free_lemma(n_max: int) -> list[VerificationReport]:
    """sum C(n,k)(A-1)^k (B+1)^(n-k) = sum C(n,k) A^k B^(n-k) in the free
    algebra: the shift by scalars costs nothing even without commutativity."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = FreeElem.letter("A")
    b = FreeElem.letter("B")
    reports = []
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            lhs = FreeElem()
            rhs = FreeElem()
            for k in range(n + 1):
                c = binomial(n, k)
                lhs = lhs + c * ((a - 1) ** k) * ((b + 1) ** (n - k))
                rhs = rhs + c * (a ** k) * (b ** (n - k))
            good = lhs == rhs
        reports.append(
            VerificationReport(
                "free_lemma", {"n": n}, PASS if good else FAIL,
                None if good else str(lhs - rhs), sw.ms, good,
            )
        )
    return reports


def check_lambda_zero_agreement(n_max: int) -> list[VerificationReport]:
    """Substituting L = 0 into the ORDER2 result must equal the NILP2 result
    built with the L = 0 chain, term map against term map."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    reports = []
    u2 = ORDER2.gen("u")
    un = NILP2.gen("u")
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            via_subst = build_identity_lhs(ORDER2, u2, n).substitute_lambda(0)
            via_preset = build_identity_lhs(NILP2, un, n, lam=0)
            good = via_subst.map_to(NILP2) == via_preset
        reports.append(
            VerificationReport(
                "lambda_zero_agreement", {"n": n}, PASS if good else FAIL,
                None if good else f"{via_subst} vs {via_preset}", sw.ms, good,
            )
        )
    return reports


def explore_order(r: int, n_max: int) -> list[VerificationReport]:
    """Evaluate the identity over D^r u = L^r u for n = 1..n_max.

    Outcomes are reported, not asserted, except: n = 1 must be ZERO (the
    cancellation is forced), and for r = 3 at least one odd n <= 9 must be
    NONZERO (the conjectured odd-n family does not survive at third order).
    """
    if r < 3:
        raise ValueError("exploration starts at order 3; lower orders are theorems")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sig = order_signature(r)
    u = sig.gen(sig.names[0])
    reports = []
    nonzero_odd = []
    for n in range(1, n_max + 1):
        with Stopwatch() as sw:
            value = build_identity_lhs(sig, u, n)
        expect = True if n == 1 else None
        rep = _zero_report(f"explore_order{r}", {"n": n, "order": r}, value, expect, sw.ms)
        reports.append(rep)
        if rep.outcome == NONZERO and n % 2 == 1 and n <= 9:
            nonzero_odd.append(n)
    if r == 3 and n_max >= 9:
        good = bool(nonzero_odd)
        reports.append(
            VerificationReport(
                "explore_order3_negative",
                {"order": 3, "nonzero_odd_n": nonzero_odd},
                PASS if good else FAIL,
                None if good else "no odd n <= 9 gave a nonzero result",
                0.0, good,
            )
        )
    return reports
