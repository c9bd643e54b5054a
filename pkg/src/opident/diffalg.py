"""Commutative differential algebras: polynomials in named generators with a
derivation given by a table.

An :class:`AlgebraSignature` fixes the generator names and, for each
generator, its image under the derivation D (itself an element of the
algebra).  Elements are :class:`FuncElem`: dicts mapping a monomial (tuple of
exponents, one slot per generator) to a nonzero :class:`LambdaPoly`
coefficient.  D extends to products by the Leibniz rule and kills scalars, so
every derivative is computed exactly and equality of elements is plain
term-map equality.

The preset signatures cover the differential equations of interest::

    ORDER1  {u}        Du = L*u
    ORDER2  {u, v}     Du = v,  Dv = L^2*u
    ORDER3  {u, v, w}  Du = v,  Dv = w,  Dw = L^3*u
    WEYL_X  {x}        Dx = 1
    SPLIT   {v, w}     Dv = -L*v,  Dw = L*w
    NILP2   {u, v}     Du = v,  Dv = 0
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import LambdaPoly

Monomial = tuple[int, ...]

TermMap = dict[Monomial, LambdaPoly]


class SignatureMismatch(ValueError):
    """Raised when elements of different algebras are combined."""


class AlgebraSignature:
    """Generator names plus the derivation table D(generator)."""

    __slots__ = ("names", "_images_raw", "_images", "_index")

    def __init__(self, names, images):
        """``names``: ordered generator names; ``images``: name -> raw term
        map {exponent tuple: LambdaPoly} for D(generator)."""
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(names)})
        raw = {}
        for g in names:
            if g not in images:
                raise ValueError(f"missing derivation image for generator {g!r}")
            terms = {}
            for mono, coeff in images[g].items():
                mono = tuple(mono)
                if len(mono) != len(names) or any(e < 0 for e in mono):
                    raise ValueError(
                        f"derivation image of {g!r} references an invalid monomial {mono}"
                    )
                if not isinstance(coeff, LambdaPoly):
                    coeff = LambdaPoly.const(coeff)
                if coeff:
                    terms[mono] = coeff
            raw[g] = terms
        object.__setattr__(self, "_images_raw", raw)
        object.__setattr__(self, "_images", None)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraSignature is immutable")

    def _frozen(self):
        return (
            self.names,
            tuple(
                (g, tuple(sorted(self._images_raw[g].items())))
                for g in self.names
            ),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraSignature):
            return NotImplemented
        return self._frozen() == other._frozen()

    def __hash__(self) -> int:
        return hash(self._frozen())

    def __repr__(self) -> str:
        return f"AlgebraSignature({', '.join(self.names)})"

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}; signature has {self.names}")

    def derivative_of(self, i: int) -> "FuncElem":
        """D(generator i) as an element of this algebra."""
        if self._images is None:
            images = tuple(
                FuncElem(self, dict(self._images_raw[g])) for g in self.names
            )
            object.__setattr__(self, "_images", images)
        return self._images[i]

    # -- element constructors ------------------------------------------------

    def zero(self) -> "FuncElem":
        return FuncElem(self, {})

    def one(self) -> "FuncElem":
        return self.scalar(1)

    def scalar(self, value) -> "FuncElem":
        """Embed a rational or LambdaPoly as a constant element."""
        if not isinstance(value, LambdaPoly):
            value = LambdaPoly.const(value)
        if not value:
            return self.zero()
        return FuncElem(self, {(0,) * len(self.names): value})

    def gen(self, name: str) -> "FuncElem":
        i = self.index_of(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return FuncElem(self, {mono: LambdaPoly.one()})


class FuncElem:
    """Element of the algebra: monomial -> LambdaPoly term map, no zeros."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: TermMap):
        object.__setattr__(self, "sig", sig)
        object.__setattr__(
            self, "terms", {m: c for m, c in terms.items() if c}
        )

    def __setattr__(self, name, value):
        raise AttributeError("FuncElem is immutable")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.sig.names): LambdaPoly.one()}

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.sig, tuple(sorted(self.terms.items()))))

    def _coerce(self, other):
        if isinstance(other, FuncElem):
            return other
        if isinstance(other, (LambdaPoly, Fraction, int)):
            return self.sig.scalar(other)
        return NotImplemented

    def _check_sig(self, other: "FuncElem"):
        if self.sig != other.sig:
            raise SignatureMismatch(
                f"cannot combine elements of {self.sig!r} and {other.sig!r}"
            )

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_sig(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return FuncElem(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return FuncElem(self.sig, {m: -c for m, c in self.terms.items()})

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
        self._check_sig(other)
        out: TermMap = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(mono, 0) + c
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return FuncElem(self.sig, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in the algebra")
        result = self.sig.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derive(self, times: int = 1) -> "FuncElem":
        """Apply D ``times`` times (Leibniz rule over the derivation table)."""
        elem = self
        for _ in range(times):
            out: TermMap = {}
            for mono, coeff in elem.terms.items():
                for i, e in enumerate(mono):
                    if e == 0:
                        continue
                    lowered = tuple(
                        x - 1 if j == i else x for j, x in enumerate(mono)
                    )
                    scaled = coeff * e
                    for im_mono, im_coeff in self.sig.derivative_of(i).terms.items():
                        m = tuple(a + b for a, b in zip(lowered, im_mono))
                        s = out.get(m, 0) + scaled * im_coeff
                        if s:
                            out[m] = s
                        else:
                            out.pop(m, None)
            elem = FuncElem(self.sig, out)
        return elem

    def substitute_lambda(self, value) -> "FuncElem":
        """Specialize the formal L to a rational value, term by term."""
        out: TermMap = {}
        for mono, coeff in self.terms.items():
            c = coeff.substitute(value)
            if c:
                out[mono] = LambdaPoly.const(c)
        return FuncElem(self.sig, out)

    def map_to(self, sig: AlgebraSignature) -> "FuncElem":
        """Reinterpret the term map over another signature with the same
        generator names (the derivation tables may differ)."""
        if sig.names != self.sig.names:
            raise SignatureMismatch(
                f"generator names differ: {self.sig.names} vs {sig.names}"
            )
        return FuncElem(sig, dict(self.terms))

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order (report order)."""
        return sorted(
            self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for mono, coeff in self.sorted_terms():
            mono_part = "*".join(
                (g if e == 1 else f"{g}^{e}")
                for g, e in zip(self.sig.names, mono)
                if e > 0
            )
            rendered.append(_render_term(coeff, mono_part))
        text = ""
        for i, (sign, body) in enumerate(rendered):
            if i == 0:
                text = ("-" if sign < 0 else "") + body
            else:
                text += (" - " if sign < 0 else " + ") + body
        return text

    def __repr__(self) -> str:
        return f"FuncElem({self})"


def _render_term(coeff: LambdaPoly, mono_part: str):
    """Return (sign, text) for one term, text without a leading sign."""
    cs = coeff.coeffs
    if sum(1 for c in cs if c) == 1:
        power = max(i for i, c in enumerate(cs) if c)
        c = cs[power]
        sign = -1 if c < 0 else 1
        lpart = "" if power == 0 else ("L" if power == 1 else f"L^{power}")
        pieces = [lpart, mono_part]
        if abs(c) != 1 or not (lpart or mono_part):
            pieces.insert(0, str(abs(c)))
        return sign, "*".join(p for p in pieces if p)
    if not mono_part:
        return 1, f"({coeff})"
    return 1, f"({coeff})*{mono_part}"


# -- preset signatures --------------------------------------------------------

ORDER1 = AlgebraSignature(("u",), {"u": {(1,): LambdaPoly.lam()}})

ORDER2 = AlgebraSignature(
    ("u", "v"),
    {"u": {(0, 1): LambdaPoly.one()}, "v": {(1, 0): LambdaPoly.lam(2)}},
)

ORDER3 = AlgebraSignature(
    ("u", "v", "w"),
    {
        "u": {(0, 1, 0): LambdaPoly.one()},
        "v": {(0, 0, 1): LambdaPoly.one()},
        "w": {(1, 0, 0): LambdaPoly.lam(3)},
    },
)

WEYL_X = AlgebraSignature(("x",), {"x": {(0,): LambdaPoly.one()}})

SPLIT = AlgebraSignature(
    ("v", "w"),
    {"v": {(1, 0): LambdaPoly.lam(1, -1)}, "w": {(0, 1): LambdaPoly.lam()}},
)

NILP2 = AlgebraSignature(
    ("u", "v"), {"u": {(0, 1): LambdaPoly.one()}, "v": {}}
)

PRESETS = {
    "ORDER1": ORDER1,
    "ORDER2": ORDER2,
    "ORDER3": ORDER3,
    "WEYL_X": WEYL_X,
    "SPLIT": SPLIT,
    "NILP2": NILP2,
}


def decay_signature() -> AlgebraSignature:
    """Single generator v with Dv = -L*v (the first-order decaying case)."""
    return AlgebraSignature(("v",), {"v": {(1,): LambdaPoly.lam(1, -1)}})


def order_signature(r: int) -> AlgebraSignature:
    """Signature for D^r u = L^r u: generators u0..u_{r-1} forming a chain.

    Returns the matching preset for r <= 3.
    """
    if r < 1:
        raise ValueError("equation order must be >= 1")
    if r == 1:
        return ORDER1
    if r == 2:
        return ORDER2
    if r == 3:
        return ORDER3
    names = ["u"] + [f"u{i}" for i in range(1, r)]
    images = {}
    for i, g in enumerate(names):
        if i < r - 1:
            mono = tuple(1 if j == i + 1 else 0 for j in range(r))
            images[g] = {mono: LambdaPoly.one()}
        else:
            mono = tuple(1 if j == 0 else 0 for j in range(r))
            images[g] = {mono: LambdaPoly.lam(r)}
    return AlgebraSignature(names, images)
