"""Characteristic classes from curvature data.

The coefficient ring is a truncated exterior algebra on ``m`` coframe
generators, restricted in practice to even-degree monomials (so the ring is
commutative and every positive-degree element is nilpotent).  Genera are
invariant power series evaluated on a curvature matrix: the U(n) family as
``det f(X)``, the O(n) family as ``det^{1/2} f(X)``, the Chern character as
``tr exp(X)`` and the Euler class as ``Pf(F/2π)``, always with
``X = (i/2π) F`` applied internally so callers pass the raw (real,
antisymmetric) curvature matrix ``F``.

Coefficients may be exact sympy numbers/symbols (default for the built-in
models) or complex floats for numerical spot checks; arithmetic is agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, pi as _PI

import sympy

from .spinrep import pfaffian


# -- scalar series ------------------------------------------------------------

def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (B_1 = -1/2) from the defining recurrence."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    values = [Fraction(1)]
    for m in range(1, k + 1):
        acc = sum(Fraction(comb(m + 1, j)) * values[j] for j in range(m))
        values.append(-acc / (m + 1))
    return values[k]


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] += ai * bj
    return out


def _series_inv(a: list[Fraction], order: int) -> list[Fraction]:
    if a[0] != 1:
        raise ValueError("series inversion needs constant term 1")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = Fraction(1)
    for m in range(1, order + 1):
        inv[m] = -sum(a[j] * inv[m - j] for j in range(1, m + 1))
    return inv


def taylor_series(name: str, order: int = 10) -> list[Fraction]:
    """Exact Taylor coefficients of the named genus series up to x^order.

    chern: 1 + x; todd: x/(1-e^{-x}); chern_char: e^x;
    lgenus: x/tanh(x); ahat: (x/2)/sinh(x/2); pontryagin: 1 + x^2.
    """
    N = order
    if name == "chern":
        out = [Fraction(0)] * (N + 1)
        out[0] = Fraction(1)
        if N >= 1:
            out[1] = Fraction(1)
        return out
    if name == "pontryagin":
        out = [Fraction(0)] * (N + 1)
        out[0] = Fraction(1)
        if N >= 2:
            out[2] = Fraction(1)
        return out
    if name == "chern_char":
        return [Fraction(1, factorial(k)) for k in range(N + 1)]
    if name == "todd":
        # invert (1 - e^{-x})/x = sum (-1)^k x^k/(k+1)!
        base = [Fraction((-1) ** k, factorial(k + 1)) for k in range(N + 1)]
        return _series_inv(base, N)
    if name == "lgenus":
        cosh = [Fraction(1, factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(N + 1)]
        sinh_over_x = [
            Fraction(1, factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(N + 1)
        ]
        return _series_mul(cosh, _series_inv(sinh_over_x, N), N)
    if name == "ahat":
        base = [
            Fraction(1, factorial(k + 1) * 2**k) if k % 2 == 0 else Fraction(0)
            for k in range(N + 1)
        ]
        return _series_inv(base, N)
    raise ValueError(f"unknown genus series {name!r}")


def genus_expand(name: str) -> dict[str, Fraction]:
    """Leading coefficients of the named genus in the Pontryagin classes.

    Returns the coefficients of 1, p1, p1^2 and p2 in Π f(x_j) where
    p1 = Σ x_j² and p2 = Σ_{j<k} x_j² x_k² (enough for 8-dimensional bases).
    """
    coeffs = taylor_series(name, 4)
    a2, a4 = coeffs[2], coeffs[4]
    return {
        "1": Fraction(1),
        "p1": a2,
        "p1^2": a4,
        "p2": a2 * a2 - 2 * a4,
    }


# -- the truncated exterior coefficient ring ----------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _interleave_sign(a: int, b: int) -> int:
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += _popcount(rest & b)
        rest >>= 1
    return -1 if swaps & 1 else 1


def _is_zero(c) -> bool:
    if isinstance(c, sympy.Basic):
        return bool(sympy.expand(c) == 0)
    return c == 0


class FormPoly:
    """Element of the exterior algebra on generators e^1..e^m, truncated at m.

    Stored as bitmask -> coefficient.  Products of overlapping monomials
    vanish; merging disjoint monomials contributes the interleaving sign.
    All monomials used by the genus machinery have even degree, so these
    elements commute.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict[int, object] | None = None):
        self.m = m
        limit = (1 << m) - 1
        clean = {}
        for mask, coeff in (terms or {}).items():
            if mask & ~limit:
                raise ValueError("monomial outside the generator range")
            if _is_zero(coeff):
                continue
            clean[mask] = coeff
        self.terms = clean

    @classmethod
    def scalar(cls, value, m: int) -> "FormPoly":
        return cls(m, {0: value})

    @classmethod
    def monomial(cls, indices, m: int, coeff=1) -> "FormPoly":
        mask = 0
        for i in indices:
            bit = 1 << (i - 1)
            if mask & bit:
                raise ValueError("repeated generator in monomial")
            mask |= bit
        return cls(m, {mask: coeff})

    def _coerce(self, other) -> "FormPoly":
        if isinstance(other, FormPoly):
            if other.m != self.m:
                raise ValueError("generator count mismatch")
            return other
        return FormPoly.scalar(other, self.m)

    def __add__(self, other):
        o = self._coerce(other)
        terms = dict(self.terms)
        for mask, c in o.terms.items():
            terms[mask] = terms.get(mask, 0) + c
        return FormPoly(self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return FormPoly(self.m, {mask: -c for mask, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FormPoly):
            return FormPoly(self.m, {mask: c * other for mask, c in self.terms.items()})
        o = self._coerce(other)
        terms: dict[int, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                if ma & mb:
                    continue
                sign = _interleave_sign(ma, mb)
                contrib = ca * cb if sign > 0 else -(ca * cb)
                mask = ma | mb
                terms[mask] = terms.get(mask, 0) + contrib
        return FormPoly(self.m, terms)

    def __rmul__(self, other):
        return FormPoly(self.m, {mask: other * c for mask, c in self.terms.items()})

    def __eq__(self, other):
        diff = self - self._coerce(other)
        return all(_is_zero(c) for c in diff.terms.values())

    def __hash__(self):
        return hash((self.m, frozenset(self.terms)))

    def coefficient(self, indices) -> object:
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        return self.terms.get(mask, 0)

    def top_coefficient(self) -> object:
        return self.terms.get((1 << self.m) - 1, 0)

    def constant(self) -> object:
        return self.terms.get(0, 0)

    def degree_part(self, d: int) -> "FormPoly":
        return FormPoly(self.m, {mask: c for mask, c in self.terms.items() if _popcount(mask) == d})

    def max_abs(self) -> float:
        """Largest coefficient magnitude (float mode residuals)."""
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def expand(self) -> "FormPoly":
        return FormPoly(
            self.m,
            {mask: (sympy.expand(c) if isinstance(c, sympy.Basic) else c) for mask, c in self.terms.items()},
        )

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "FormPoly(0)"
        bits = []
        for mask in sorted(self.terms, key=lambda s: (_popcount(s), s)):
            name = "1" if mask == 0 else "e" + "".join(
                str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1
            )
            bits.append(f"({self.terms[mask]})*{name}")
        return "FormPoly(" + " + ".join(bits) + ")"


class FormMatrix:
    """Square matrix with FormPoly entries."""

    def __init__(self, entries: list[list[FormPoly]]):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        if n == 0:
            raise ValueError("empty matrix")
        self.n = n
        self.m = entries[0][0].m
        for row in entries:
            for e in row:
                if e.m != self.m:
                    raise ValueError("inconsistent generator counts")
        self.entries = entries

    @classmethod
    def zero(cls, n: int, m: int) -> "FormMatrix":
        return cls([[FormPoly(m) for _ in range(n)] for _ in range(n)])

    @classmethod
    def identity(cls, n: int, m: int) -> "FormMatrix":
        return cls(
            [[FormPoly.scalar(1 if i == j else 0, m) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_scalar(cls, mat, m: int) -> "FormMatrix":
        return cls([[FormPoly.scalar(v, m) for v in row] for row in mat])

    def __add__(self, other: "FormMatrix") -> "FormMatrix":
        return FormMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.n)] for i in range(self.n)]
        )

    def __sub__(self, other: "FormMatrix") -> "FormMatrix":
        return FormMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(self.n)] for i in range(self.n)]
        )

    def scale(self, factor) -> "FormMatrix":
        return FormMatrix([[e * factor for e in row] for row in self.entries])

    def __matmul__(self, other: "FormMatrix") -> "FormMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = FormPoly(self.m)
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return FormMatrix(out)

    def conjugate_by(self, g) -> "FormMatrix":
        """G M G^{-1} for a scalar invertible matrix G."""
        import numpy as np

        g = np.asarray(g)
        ginv = np.linalg.inv(g)
        n = self.n
        out = FormMatrix.zero(n, self.m)
        for i in range(n):
            for j in range(n):
                acc = FormPoly(self.m)
                for k in range(n):
                    for l in range(n):
                        acc = acc + self.entries[k][l] * complex(g[i, k] * ginv[l, j])
                out.entries[i][j] = acc
        return out

    def is_antisymmetric(self, tol: float = 1e-9) -> bool:
        for i in range(self.n):
            for j in range(i, self.n):
                s = self.entries[i][j] + self.entries[j][i]
                if s.is_zero():
                    continue
                try:
                    if s.max_abs() <= tol:  # float-mode rounding slack
                        continue
                except TypeError:
                    pass
                return False
        return True


def form_tr(M: FormMatrix) -> FormPoly:
    acc = FormPoly(M.m)
    for i in range(M.n):
        acc = acc + M.entries[i][i]
    return acc


def form_det(M: FormMatrix) -> FormPoly:
    """Determinant by cofactor expansion (entries commute)."""

    def det(rows, cols):
        if len(cols) == 1:
            return M.entries[rows[0]][cols[0]]
        acc = FormPoly(M.m)
        r0 = rows[0]
        for pos, c in enumerate(cols):
            minor = det(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = M.entries[r0][c] * minor
            acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    idx = tuple(range(M.n))
    return det(idx, idx)


def form_det_sqrt(M: FormMatrix) -> FormPoly:
    """Square root of det(M) with constant term fixed to 1."""
    d = form_det(M)
    if not _is_zero(d.constant() - 1):
        raise ValueError("det must have constant term 1 for the square root")
    u = d - 1  # nilpotent
    acc = FormPoly.scalar(1, M.m)
    power = FormPoly.scalar(1, M.m)
    for k in range(1, M.m // 2 + 1):
        power = power * u
        if power.is_zero():
            break
        # binomial series sqrt(1+u): C(1/2, k) = (-1)^{k-1} C(2k,k) / (4^k (2k-1))
        binom = Fraction((-1) ** (k - 1) * comb(2 * k, k), 4**k * (2 * k - 1))
        acc = acc + power * _as_coeff(binom, power)
    return acc


def _as_coeff(frac: Fraction, sample: FormPoly):
    """Render an exact Fraction in the coefficient domain of sample."""
    for c in sample.terms.values():
        if isinstance(c, sympy.Basic):
            return sympy.Rational(frac.numerator, frac.denominator)
        if isinstance(c, (complex, float)):
            return float(frac)
    return frac


def form_exp(M: FormMatrix) -> FormMatrix:
    """exp(M) for a matrix with positive-degree entries (nilpotent)."""
    acc = FormMatrix.identity(M.n, M.m)
    power = FormMatrix.identity(M.n, M.m)
    k = 0
    while True:
        k += 1
        power = power @ M
        if all(e.is_zero() for row in power.entries for e in row):
            break
        coeff = _as_coeff_matrix(Fraction(1, factorial(k)), power)
        acc = acc + power.scale(coeff)
        if 2 * k > M.m:
            break
    return acc


def _as_coeff_matrix(frac: Fraction, M: FormMatrix):
    for row in M.entries:
        for e in row:
            got = _as_coeff(frac, e)
            if not isinstance(got, Fraction):
                return got
    return frac


def form_pfaffian(A: FormMatrix) -> FormPoly:
    """Pfaffian of an antisymmetric FormMatrix (perfect-matching expansion)."""
    if A.n % 2:
        raise ValueError("Pfaffian needs even size")
    if not A.is_antisymmetric():
        raise ValueError("Pfaffian needs an antisymmetric matrix")
    return pfaffian(A.entries)


def _apply_series(coeffs: list[Fraction], X: FormMatrix) -> FormMatrix:
    """Σ a_k X^k, truncated by nilpotency of the positive-degree entries."""
    acc = FormMatrix.identity(X.n, X.m).scale(_as_coeff_matrix(coeffs[0], X))
    power = FormMatrix.identity(X.n, X.m)
    for k in range(1, len(coeffs)):
        power = power @ X
        if all(e.is_zero() for row in power.entries for e in row):
            break
        if coeffs[k] != 0:
            acc = acc + power.scale(_as_coeff_matrix(coeffs[k], power))
    return acc


_UN_FAMILY = {"chern", "todd"}
_ON_FAMILY = {"pontryagin", "lgenus", "ahat"}


def genus_eval(name: str, F: FormMatrix, exact: bool = True) -> FormPoly:
    """Evaluate the named genus on a curvature matrix F.

    The conventional substitution X = (i/2π) F happens here: callers pass
    the raw curvature.  For the O(n) family and the Euler class F must be
    antisymmetric.
    """
    if name == "euler":
        if not F.is_antisymmetric():
            raise ValueError("Euler class needs an antisymmetric curvature")
        factor = sympy.Rational(1, 2) / sympy.pi if exact else 1.0 / (2 * _PI)
        return form_pfaffian(F.scale(factor))
    two_pi_i = (sympy.I / (2 * sympy.pi)) if exact else (1j / (2 * _PI))
    X = F.scale(two_pi_i)
    order = F.m + 1
    if name == "chern_char":
        return form_tr(form_exp(X))
    coeffs = taylor_series(name, order)
    fX = _apply_series(coeffs, X)
    if name in _UN_FAMILY:
        return form_det(fX)
    if name in _ON_FAMILY:
        if not F.is_antisymmetric():
            raise ValueError(f"{name} needs an antisymmetric curvature")
        return form_det_sqrt(fX)
    raise ValueError(f"unknown genus {name!r}")


def invariance_check(name: str, F: FormMatrix, G, exact: bool = False) -> float:
    """Max-norm residual between genus(F) and genus(G F G^{-1})."""
    base = genus_eval(name, F, exact=exact)
    conj = genus_eval(name, F.conjugate_by(G), exact=exact)
    return (base - conj).max_abs()


# -- curvature models ----------------------------------------------------------

@dataclass
class CurvatureModel:
    """Constant-coefficient curvature in a global orthonormal coframe."""

    name: str
    n: int
    F: FormMatrix
    volume: object  # total volume (sympy expression in exact mode)


def curvature_model(name: str, r=1) -> CurvatureModel:
    """Built-in homogeneous models: sphere2(r), torus2, sphere4(r)."""
    r = sympy.nsimplify(sympy.sympify(r), rational=True)
    if name == "sphere2":
        m = 2
        F = FormMatrix.zero(2, m)
        curv = FormPoly.monomial((1, 2), m, 1 / r**2)
        F.entries[0][1] = curv
        F.entries[1][0] = -curv
        return CurvatureModel("sphere2", 2, F, 4 * sympy.pi * r**2)
    if name == "torus2":
        return CurvatureModel("torus2", 2, FormMatrix.zero(2, 2), sympy.Integer(1))
    if name == "sphere4":
        m = 4
        F = FormMatrix.zero(4, m)
        for a in range(1, 5):
            for b in range(1, 5):
                if a < b:
                    curv = FormPoly.monomial((a, b), m, 1 / r**2)
                    F.entries[a - 1][b - 1] = curv
                    F.entries[b - 1][a - 1] = -curv
        return CurvatureModel("sphere4", 4, F, sympy.Rational(8, 3) * sympy.pi**2 * r**4)
    raise ValueError(f"unknown curvature model {name!r}")


def product_model(m1: CurvatureModel, m2: CurvatureModel) -> CurvatureModel:
    """Riemannian product: block-diagonal curvature on the combined coframe."""
    n = m1.n + m2.n
    F = FormMatrix.zero(n, n)
    for i in range(m1.n):
        for j in range(m1.n):
            F.entries[i][j] = _extend_poly(m1.F.entries[i][j], n, 0)
    for i in range(m2.n):
        for j in range(m2.n):
            F.entries[m1.n + i][m1.n + j] = _extend_poly(m2.F.entries[i][j], n, m1.n)
    name = f"product({m1.name},{m2.name})"
    return CurvatureModel(name, n, F, m1.volume * m2.volume)


def _extend_poly(poly: FormPoly, m: int, shift: int) -> FormPoly:
    return FormPoly(m, {mask << shift: c for mask, c in poly.terms.items()})


def integrate_top(phi: FormPoly, model: CurvatureModel) -> object:
    """Integrate a form over a homogeneous model: top coefficient × volume.

    The built-in models have constant coefficients in an orthonormal
    coframe, so integration is exactly this product.
    """
    if phi.m != model.F.m:
        raise ValueError("form was built over a different coframe")
    value = phi.top_coefficient() * model.volume
    if isinstance(value, sympy.Basic):
        return sympy.simplify(value)
    return value


def model_from_dict(data: dict) -> CurvatureModel:
    """Load a curvature model from {n, entries, volume} JSON data.

    ``entries`` is a list of [i, j, [[indices, coeff], ...]] with 1-based
    matrix positions and coefficients parseable by sympy.
    """
    n = int(data["n"])
    F = FormMatrix.zero(n, n)
    for i, j, monomials in data.get("entries", []):
        poly = FormPoly(n)
        for indices, coeff in monomials:
            poly = poly + FormPoly.monomial(indices, n, sympy.sympify(coeff))
        F.entries[i - 1][j - 1] = poly
    return CurvatureModel(
        str(data.get("name", "custom")), n, F, sympy.sympify(data.get("volume", 1))
    )
