"""Exact arithmetic in the Clifford algebras Cl(p, q) and their complexifications.

Sign convention
---------------
We use the convention ``v * v = -g(v, v)`` where ``g`` has ``p`` eigenvalues
``+1`` followed by ``q`` eigenvalues ``-1``.  Concretely the generators
satisfy ``e_i * e_i = -1`` for ``i <= p`` and ``e_i * e_i = +1`` for
``i > p``, so that Cl(1, 0) is isomorphic to the complex numbers.  Many other
texts use the opposite sign; all formulas in this package assume this one.

Blades are encoded as bitmasks (bit ``i - 1`` set means the generator
``e_i`` is present), coefficients are exact Gaussian rationals (:class:`QI`)
by default, with ordinary ``complex`` floats available for numerics.
Multivectors are value-semantic: never mutated after construction, so they
are safe to share across threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Union


class Signature(NamedTuple):
    """Signature (p, q): p generators square to -1, q generators to +1."""

    p: int
    q: int

    @property
    def n(self) -> int:
        return self.p + self.q

    def square(self, i: int) -> int:
        """Square of the generator e_i (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range for Cl({self.p},{self.q})")
        return -1 if i <= self.p else 1


def _validate_signature(sig: Signature) -> Signature:
    sig = Signature(*sig)
    if sig.p < 0 or sig.q < 0:
        raise ValueError("signature counts must be nonnegative")
    if sig.n > 64:
        raise ValueError("at most 64 generators are supported")
    return sig


class QI:
    """Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @staticmethod
    def _coerce(other) -> "QI | None":
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Fraction)):
            return QI(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) == other
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QI({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re}{sign}{imag})"


QI_I = QI(0, 1)

Coefficient = Union[QI, int, Fraction, complex, float]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_mul(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Multiply two basis blades given as bitmasks.

    Returns ``(sign, blade)`` where sign is the product of the transposition
    parity needed to interleave the two index words and the squares of
    repeated generators.
    """
    sig = Signature(*sig)
    limit = (1 << sig.n) - 1 if sig.n < 64 else ~0
    if a & ~limit or b & ~limit:
        raise ValueError(f"blade uses generators beyond Cl({sig.p},{sig.q})")
    # transpositions: pairs (i in a, j in b) with i > j
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += _popcount(rest & b)
        rest >>= 1
    sign = -1 if swaps & 1 else 1
    common = a & b
    i = 1
    while common:
        if common & 1:
            sign *= sig.square(i)
        common >>= 1
        i += 1
    return sign, a ^ b


def _blade_reversal_sign(blade: int) -> int:
    k = _popcount(blade)
    return -1 if (k * (k - 1) // 2) & 1 else 1


class Multivector:
    """Sparse element of Cl(p, q): blade bitmask -> coefficient.

    Zero coefficients are pruned on construction so equality is structural.
    Instances are immutable.
    """

    __slots__ = ("signature", "terms")

    def __init__(self, signature: Signature, terms: dict[int, Coefficient] | None = None):
        sig = _validate_signature(signature)
        clean: dict[int, Coefficient] = {}
        limit = (1 << sig.n) - 1 if sig.n < 64 else ~0
        for blade, coeff in (terms or {}).items():
            if blade & ~limit:
                raise ValueError(f"blade {blade:b} outside Cl({sig.p},{sig.q})")
            if coeff == 0:
                continue
            clean[blade] = coeff
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, {})

    @classmethod
    def scalar(cls, value: Coefficient, sig: Signature) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def basis_vector(cls, i: int, sig: Signature) -> "Multivector":
        sig = _validate_signature(sig)
        if not 1 <= i <= sig.n:
            raise ValueError(f"no generator e_{i} in Cl({sig.p},{sig.q})")
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def blade(cls, indices: Iterable[int], sig: Signature, coeff: Coefficient = 1) -> "Multivector":
        sig = _validate_signature(sig)
        mask = 0
        for i in indices:
            if not 1 <= i <= sig.n:
                raise ValueError(f"no generator e_{i} in Cl({sig.p},{sig.q})")
            bit = 1 << (i - 1)
            if mask & bit:
                raise ValueError("blade indices must be distinct")
            mask |= bit
        return cls(sig, {mask: coeff})

    @classmethod
    def vector(cls, coeffs: Iterable[Coefficient], sig: Signature) -> "Multivector":
        terms = {1 << k: c for k, c in enumerate(coeffs)}
        return cls(sig, terms)

    # -- ring structure ----------------------------------------------------

    def _check_sig(self, other: "Multivector"):
        if self.signature != other.signature:
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return self + Multivector.scalar(other, self.signature)
        self._check_sig(other)
        terms = dict(self.terms)
        for blade, coeff in other.terms.items():
            terms[blade] = terms.get(blade, 0) + coeff
        return Multivector(self.signature, terms)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.signature, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Multivector):
            return Multivector(self.signature, {b: c * other for b, c in self.terms.items()})
        self._check_sig(other)
        terms: dict[int, Coefficient] = {}
        for ba, ca in self.terms.items():
            for bb, cb in other.terms.items():
                sign, blade = blade_mul(ba, bb, self.signature)
                contrib = ca * cb if sign > 0 else -(ca * cb)
                terms[blade] = terms.get(blade, 0) + contrib
        return Multivector(self.signature, terms)

    def __rmul__(self, other):
        # scalars commute with everything
        return Multivector(self.signature, {b: other * c for b, c in self.terms.items()})

    def __truediv__(self, scalar):
        return Multivector(self.signature, {b: c / scalar for b, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: use clifford_inverse")
        out = Multivector.scalar(1, self.signature)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            if other == 0:
                return not self.terms
            return set(self.terms) == {0} and self.terms[0] == other
        return self.signature == other.signature and (self - other).terms == {}

    def __hash__(self):
        return hash((self.signature, frozenset((b, str(c)) for b, c in self.terms.items())))

    # -- grading -----------------------------------------------------------

    def grades(self) -> set[int]:
        return {_popcount(b) for b in self.terms}

    def grade_part(self, k: int) -> "Multivector":
        return Multivector(self.signature, {b: c for b, c in self.terms.items() if _popcount(b) == k})

    def parity(self) -> str:
        gs = {g % 2 for g in self.grades()}
        if gs <= {0}:
            return "even"
        if gs == {1}:
            return "odd"
        return "mixed"

    def scalar_part(self) -> Coefficient:
        return self.terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def max_grade(self) -> int:
        return max((_popcount(b) for b in self.terms), default=0)

    # -- involutions -------------------------------------------------------

    def grade_involution(self) -> "Multivector":
        """The algebra automorphism that negates odd blades."""
        return Multivector(
            self.signature,
            {b: (-c if _popcount(b) & 1 else c) for b, c in self.terms.items()},
        )

    def transpose(self) -> "Multivector":
        """Anti-automorphism reversing each blade's factors: sign (-1)^(k(k-1)/2)."""
        return Multivector(
            self.signature,
            {b: (c if _blade_reversal_sign(b) > 0 else -c) for b, c in self.terms.items()},
        )

    def norm(self) -> "Multivector":
        """N(phi) = phi * grade_involution(transpose(phi))."""
        return self * self.transpose().grade_involution()

    def clifford_inverse(self, atol: float = 1e-9) -> "Multivector":
        """Inverse for elements whose norm is a nonzero scalar (Clifford group).

        In float mode, non-scalar norm components below ``atol`` (relative
        to the scalar part) are treated as rounding noise.
        """
        conj = self.transpose().grade_involution()
        n = self * conj
        scalar = n.terms.get(0, 0)
        stray = [c for b, c in n.terms.items() if b != 0]
        if stray:
            floaty = any(isinstance(c, (float, complex)) for c in n.terms.values())
            bound = atol * max(1.0, abs(complex(scalar))) if floaty else 0
            if not floaty or any(abs(complex(c)) > bound for c in stray):
                raise ValueError("element has no scalar norm; cannot invert")
        if scalar == 0:
            raise ValueError("element has no scalar norm; cannot invert")
        scale = scalar
        if isinstance(scale, int):
            scale = Fraction(scale)  # keep exact-mode division exact
        return conj / scale

    def __repr__(self):
        return f"Multivector({self.signature}, {format_mv(self)!r})"

    def __str__(self):
        return format_mv(self)


def volume_element(n: int, sig: Signature | None = None) -> Multivector:
    """Complex volume element omega = i^floor((n+1)/2) e_1 ... e_n in Cl(n,0)⊗C.

    Satisfies omega^2 = 1; central for n odd, and for n even anticommutes
    with odd elements (v*omega = (-1)^(n-1) omega*v for degree-1 v).
    """
    if n < 1:
        raise ValueError("volume element needs n >= 1")
    if sig is None:
        sig = Signature(n, 0)
    if Signature(*sig).n != n:
        raise ValueError("signature dimension must equal n")
    power = (n + 1) // 2
    coeff = QI(1)
    for _ in range(power):
        coeff = coeff * QI_I
    mask = (1 << n) - 1
    return Multivector(sig, {mask: coeff})


def supercommutator(a: Multivector, b: Multivector) -> Multivector:
    """[a, b]_s = ab - (-1)^{|a||b|} ba, extended bilinearly over parities."""
    a._check_sig(b)
    out = Multivector.zero(a.signature)
    for pa in (0, 1):
        xa = Multivector(a.signature, {bl: c for bl, c in a.terms.items() if _popcount(bl) % 2 == pa})
        if xa.is_zero():
            continue
        for pb in (0, 1):
            xb = Multivector(b.signature, {bl: c for bl, c in b.terms.items() if _popcount(bl) % 2 == pb})
            if xb.is_zero():
                continue
            if pa and pb:
                out = out + xa * xb + xb * xa
            else:
                out = out + xa * xb - xb * xa
    return out


# -- text format ------------------------------------------------------------

def _blade_name(blade: int) -> str:
    if blade == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(blade.bit_length()) if blade >> i & 1)


def _format_coeff(c: Coefficient) -> str:
    if isinstance(c, QI):
        return str(c)
    if isinstance(c, complex):
        if c.imag == 0:
            return repr(c.real)
        if c.real == 0:
            return f"{c.imag!r}*i"
        sign = "+" if c.imag >= 0 else "-"
        return f"({c.real!r}{sign}{abs(c.imag)!r}*i)"
    return str(c)


def format_mv(mv: Multivector) -> str:
    """Render a multivector as text, e.g. ``3/2*e1e3 - i*e2``."""
    if not mv.terms:
        return "0"
    parts = []
    for blade in sorted(mv.terms, key=lambda b: (_popcount(b), b)):
        coeff = mv.terms[blade]
        text = _format_coeff(coeff)
        name = _blade_name(blade)
        neg = text.startswith("-") and not text.startswith("-(")
        if neg:
            text = text[1:]
        if name == "1":
            term = text
        elif text == "1":
            term = name
        else:
            term = f"{text}*{name}"
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>(?:\d+(?:\.\d+)?(?:/\d+)?\*?)?i|\d+(?:\.\d+)?(?:/\d+)?|\((?:[^()]*)\))?
        \*?
        (?P<blade>(?:e\d+)+)?\s*""",
    re.VERBOSE,
)


def _parse_coeff(text: str) -> QI:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1]
        m = re.fullmatch(r"\s*(-?[\d./]+)\s*([+-])\s*([\d./]*)\s*\*?\s*i\s*", inner)
        if not m:
            raise ValueError(f"cannot parse coefficient {text!r}")
        re_part = Fraction(m.group(1))
        im_mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        im_part = im_mag if m.group(2) == "+" else -im_mag
        return QI(re_part, im_part)
    if text.endswith("i"):
        head = text[:-1].rstrip("*")
        mag = Fraction(head) if head else Fraction(1)
        return QI(0, mag)
    return QI(Fraction(text))


def parse_mv(text: str, sig: Signature) -> Multivector:
    """Parse the output of :func:`format_mv` back into a multivector."""
    sig = _validate_signature(sig)
    text = text.strip()
    if text == "0":
        return Multivector.zero(sig)
    terms: dict[int, Coefficient] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("blade") is None):
            raise ValueError(f"cannot parse multivector at {text[pos:]!r}")
        pos = m.end()
        coeff = _parse_coeff(m.group("coeff")) if m.group("coeff") else QI(1)
        if m.group("sign") == "-":
            coeff = -coeff
        blade = 0
        if m.group("blade"):
            for idx in re.findall(r"e(\d+)", m.group("blade")):
                i = int(idx)
                if not 1 <= i <= sig.n:
                    raise ValueError(f"generator e{i} outside Cl({sig.p},{sig.q})")
                bit = 1 << (i - 1)
                if blade & bit:
                    raise ValueError(f"repeated generator e{i} in blade")
                blade |= bit
        terms[blade] = terms.get(blade, 0) + coeff
    return Multivector(sig, terms)
