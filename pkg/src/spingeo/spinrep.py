"""Spin groups, spinor representations, and relative supertraces.

Covers the twisted adjoint action (reflections and the double cover of
SO(n)), the Lie algebra isomorphism spin(n) ≅ so(n), the complex spinor
representation on Λ(V^{1,0}) for even n, the exterior Clifford module with
the two multiplications c and c̃, the relative supertrace, and the
Berezin/Pfaffian formula for supertraces of quadratic exponentials.

Normalization convention
------------------------
The relative supertrace is ``2^{-n/2} * tr(γ · c(ω_C) · F)``.  With this
constant the top-degree value is ``str c̃(e^1 ... e^n) = (-2i)^{n/2}`` and
the Berezin formula ``str exp(½ Σ A_ij c̃(e^i) c̃(e^j)) = Pf(-2iA) /
det^{1/2} Â(-2A)`` holds; see :func:`relative_supertrace`.  The constant is
exposed as :data:`RELATIVE_SUPERTRACE_NORMALIZATION` and pinned by the n = 2
consistency check in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
import scipy.linalg

from .clifford import Multivector, Signature

#: The constant kappa(n) in str^{E/S} F = kappa(n) * tr(gamma c(omega) F).
#: Pinned to 2^{-n/2} by a dense n = 2 computation of both sides of the
#: Berezin formula (the alternative (2i)^{-n/2} fails it by a phase).
RELATIVE_SUPERTRACE_NORMALIZATION = lambda n: 2.0 ** (-n / 2)


# -- twisted adjoint and Spin ------------------------------------------------

def twisted_adjoint(x: Multivector, w: Multivector) -> Multivector:
    """The twisted adjoint action ρ̃(x)(w) = ε(x) w x^{-1}."""
    return x.grade_involution() * w * x.clifford_inverse()


def reflection_formula(v: Multivector, w: Multivector) -> Multivector:
    """w - 2 (g(v,w)/g(v,v)) v for degree-1 v, w; the hyperplane reflection."""
    if v.grades() - {1} or w.grades() - {1}:
        raise ValueError("reflection formula needs degree-1 arguments")
    # g(v, w) = -(vw + wv)/2 scalar part under the convention v*v = -g(v,v)
    gvw = -((v * w + w * v) / 2).scalar_part()
    gvv = -(v * v).scalar_part()
    if gvv == 0:
        raise ValueError("null vector cannot be inverted")
    return w - (2 * gvw / gvv) * v


def twisted_adjoint_matrix(x: Multivector, dtype=complex) -> np.ndarray:
    """Matrix of ρ̃(x) restricted to the degree-1 subspace."""
    sig = x.signature
    n = sig.n
    out = np.zeros((n, n), dtype=dtype)
    xe = x.grade_involution()
    xi = x.clifford_inverse()
    for j in range(1, n + 1):
        image = xe * Multivector.basis_vector(j, sig) * xi
        stray = [c for b, c in image.terms.items() if bin(b).count("1") != 1]
        if any(abs(complex(c)) > 1e-9 for c in stray):
            raise ValueError("twisted adjoint did not preserve degree 1")
        for i in range(1, n + 1):
            c = image.terms.get(1 << (i - 1), 0)
            out[i - 1, j - 1] = complex(c) if dtype is complex else c
    return out


def spin_rotation(i: int, j: int, t: float, sig: Signature) -> Multivector:
    """cos(t) + sin(t) e_i e_j; its twisted adjoint is rotation by 2t in (i,j)."""
    if i == j:
        raise ValueError("spin rotation needs distinct axes")
    import math

    sig = Signature(*sig)
    return Multivector.scalar(complex(math.cos(t)), sig) + Multivector.blade(
        sorted((i, j)), sig, complex(math.sin(t)) * (1 if i < j else -1)
    )


def lie_iso(i: int, j: int, n: int) -> np.ndarray:
    """Image of e_i e_j ∈ spin(n) in so(n): the matrix of 2 e_i ∧ e_j.

    With (v ∧ w)(x) = v g(w,x) - w g(v,x), the generator e_i e_j maps to
    2(E_ji - E_ij) for i < j (indices 1-based).
    """
    if i == j:
        raise ValueError("need i != j")
    a = np.zeros((n, n))
    a[j - 1, i - 1] = 2.0
    a[i - 1, j - 1] = -2.0
    return a


def lie_iso_inv(a: np.ndarray, sig: Signature) -> Multivector:
    """Inverse of the spin(n) ≅ so(n) isomorphism: v ∧ w ↦ ¼[v, w].

    Accepts any antisymmetric matrix a = Σ a_ij e_i ∧ e_j (i < j entries
    a[j-1, i-1]) and returns the corresponding element of spin(n).
    """
    sig = Signature(*sig)
    n = sig.n
    if a.shape != (n, n):
        raise ValueError("matrix size must match the signature dimension")
    out = Multivector.zero(sig)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            coeff = a[j - 1, i - 1]
            if coeff != 0:
                # e_i ∧ e_j ↦ ¼ [e_i, e_j] = ½ e_i e_j
                out = out + Multivector.blade((i, j), sig, coeff * Fraction(1, 2))
    return out


# -- exterior-algebra machinery ----------------------------------------------

def _wedge_matrix(n: int, i: int) -> np.ndarray:
    """Matrix of e^i ∧ · on Λ(R^n) in the subset basis (bitmask order)."""
    dim = 1 << n
    out = np.zeros((dim, dim))
    bit = 1 << (i - 1)
    for s in range(dim):
        if s & bit:
            continue
        below = bin(s & (bit - 1)).count("1")
        out[s | bit, s] = (-1.0) ** below
    return out


def _contract_matrix(n: int, i: int) -> np.ndarray:
    """Matrix of the contraction ι_{e_i} on Λ(R^n)."""
    dim = 1 << n
    out = np.zeros((dim, dim))
    bit = 1 << (i - 1)
    for s in range(dim):
        if not s & bit:
            continue
        below = bin(s & (bit - 1)).count("1")
        out[s ^ bit, s] = (-1.0) ** below
    return out


class ExteriorModule:
    """The Clifford module Λ(R^n) ⊗ C with both multiplications.

    ``c(e^i) = e^i ∧ - ι_i`` generates a Cl(n, 0) action ({c, c} = -2δ),
    while ``c̃(e^i) = e^i ∧ + ι_i`` generates the opposite-sign action
    ({c̃, c̃} = +2δ); the two anticommute.  All matrices are 2^n-dimensional
    and immutable after construction.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.dim = 1 << n
        wedges = [_wedge_matrix(n, i) for i in range(1, n + 1)]
        contracts = [_contract_matrix(n, i) for i in range(1, n + 1)]
        self._c = [w - k for w, k in zip(wedges, contracts)]
        self._ct = [w + k for w, k in zip(wedges, contracts)]
        degs = np.array([bin(s).count("1") for s in range(self.dim)])
        self.gamma = np.diag((-1.0) ** degs).astype(complex)

    def c(self, i: int) -> np.ndarray:
        return self._c[i - 1].astype(complex)

    def c_tilde(self, i: int) -> np.ndarray:
        return self._ct[i - 1].astype(complex)

    def _word(self, mats, indices) -> np.ndarray:
        out = np.eye(self.dim, dtype=complex)
        for i in indices:
            out = out @ mats[i - 1]
        return out

    def c_word(self, indices) -> np.ndarray:
        """c(e^{i_1}) ... c(e^{i_k})."""
        return self._word(self._c, indices).astype(complex)

    def c_tilde_word(self, indices) -> np.ndarray:
        return self._word(self._ct, indices).astype(complex)

    def c_omega(self) -> np.ndarray:
        """c of the complex volume element i^{⌊(n+1)/2⌋} e^1 ... e^n."""
        return (1j) ** ((self.n + 1) // 2) * self.c_word(range(1, self.n + 1))

    def c_tilde_omega(self) -> np.ndarray:
        return (1j) ** ((self.n + 1) // 2) * self.c_tilde_word(range(1, self.n + 1))


def relative_supertrace(F: np.ndarray, module: ExteriorModule) -> complex:
    """str^{E/S} F = 2^{-n/2} tr(γ c(ω_C) F) on the exterior module.

    Since γ ∘ c(ω_C) = c̃(ω_C) this equals 2^{-n/2} tr(c̃(ω_C) F); the
    supertrace of c̃(e^I) vanishes for \\|I\\| < n and is (-2i)^{n/2} on the
    top monomial.
    """
    n = module.n
    if n % 2:
        raise ValueError("relative supertrace needs even n")
    norm = RELATIVE_SUPERTRACE_NORMALIZATION(n)
    return norm * complex(np.trace(module.gamma @ module.c_omega() @ F))


# -- Berezin / Pfaffian -------------------------------------------------------

def pfaffian(a) -> complex:
    """Pfaffian of an antisymmetric matrix by recursive expansion.

    Works over any commutative coefficient ring (floats, Fractions, form
    polynomials); intended for the small matrices appearing here.
    """
    rows = [list(r) for r in a]
    m = len(rows)
    if m % 2:
        raise ValueError("Pfaffian needs even size")

    def rec(idx):
        if not idx:
            return 1
        i0 = idx[0]
        total = 0
        for pos, j in enumerate(idx[1:], start=1):
            rest = idx[1:pos] + idx[pos + 1 :]
            sign = -1 if (pos - 1) % 2 else 1
            term = rows[i0][j] * rec(rest)
            total = total + (term if sign > 0 else -term)
        return total

    return rec(tuple(range(m)))


def _ahat_scalar_coeffs(order: int) -> list[Fraction]:
    """Taylor coefficients of (x/2)/sinh(x/2) up to x^order (exact)."""
    from math import factorial

    # sinh(x/2)/(x/2) = sum (x/2)^{2k} / (2k+1)!
    series = [Fraction(0)] * (order + 1)
    for k in range(0, order // 2 + 1):
        series[2 * k] = Fraction(1, factorial(2 * k + 1) * 4**k)
    # invert the power series (constant term 1)
    inv = [Fraction(0)] * (order + 1)
    inv[0] = Fraction(1)
    for m in range(1, order + 1):
        inv[m] = -sum(series[j] * inv[m - j] for j in range(1, m + 1))
    return inv


def ahat_matrix_det_sqrt(B: np.ndarray, order: int = 80) -> complex:
    """det^{1/2} Â(B) for an antisymmetric matrix via a truncated power series.

    Â(x) = (x/2)/sinh(x/2) applied as an even matrix power series; the
    square root takes the branch with value 1 at B = 0 (valid when no
    eigenvalue pair reaches the sinh singularity, i.e. spectral radius of B
    below 2π).
    """
    coeffs = _ahat_scalar_coeffs(order)
    m = B.shape[0]
    acc = np.zeros((m, m), dtype=complex)
    power = np.eye(m, dtype=complex)
    for k in range(0, order + 1, 2):
        acc += float(coeffs[k]) * power
        power = power @ B @ B
    det = np.linalg.det(acc)
    return complex(np.sqrt(det))


def berezin_supertrace_exp(A: np.ndarray, atol: float = 1e-12) -> tuple[complex, complex]:
    """Both sides of str^{E/S} exp(½ A_ij c̃(e^i) c̃(e^j)) = Pf(-2iA)/det^{1/2}Â(-2A).

    The left side is a dense matrix exponential on the 2^n-dimensional
    exterior module; the right side uses the Pfaffian and the power-series
    square-rooted determinant.  Returns ``(lhs, rhs)``.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or n % 2:
        raise ValueError("A must be square of even size")
    if np.max(np.abs(A + A.T)) > atol:
        raise ValueError("A must be antisymmetric")
    module = ExteriorModule(n)
    quad = np.zeros((module.dim, module.dim), dtype=complex)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if A[i - 1, j - 1] != 0:
                quad += 0.5 * A[i - 1, j - 1] * (module.c_tilde(i) @ module.c_tilde(j))
    lhs = relative_supertrace(scipy.linalg.expm(quad), module)
    rhs = pfaffian(-2j * A) / ahat_matrix_det_sqrt(-2.0 * A)
    return lhs, complex(rhs)


# -- complex spinor representation -------------------------------------------

class SpinorSpace:
    """The spinor module Λ(V^{1,0}) for Cl(n, 0) ⊗ C, n = 2k even.

    The basis pairs (e_{2j-1}, e_{2j}) give isotropic generators
    ε_j = (e_{2j-1} - i e_{2j})/√2 and the action c(v) = √2 (v^{1,0} ∧ -
    ι_{v^{0,1}}) becomes c(e_{2j-1}) = a_j† - a_j, c(e_{2j}) = i(a_j† + a_j)
    in terms of fermionic creation/annihilation operators on Λ(C^k); the
    matrix entries are Gaussian integers, hence exact even in floats.
    """

    def __init__(self, n: int):
        if n < 2 or n % 2:
            raise ValueError("spinor representation implemented for even n >= 2")
        self.n = n
        self.k = n // 2
        self.dim = 1 << self.k
        gens = []
        for j in range(1, self.k + 1):
            create = _wedge_matrix(self.k, j).astype(complex)
            annihilate = _contract_matrix(self.k, j).astype(complex)
            gens.append(create - annihilate)           # c(e_{2j-1})
            gens.append(1j * (create + annihilate))    # c(e_{2j})
        self.generators = gens

    def c(self, i: int) -> np.ndarray:
        """Matrix of Clifford multiplication by e_i."""
        return self.generators[i - 1]

    def c_vector(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for i, coeff in enumerate(v, start=1):
            out += coeff * self.c(i)
        return out

    def c_omega(self) -> np.ndarray:
        """Chirality operator: the action of the complex volume element."""
        out = np.eye(self.dim, dtype=complex)
        for g in self.generators:
            out = out @ g
        return (1j) ** ((self.n + 1) // 2) * out

    def monomial_span_dim(self) -> int:
        """Dimension of the span of all products of generator matrices."""
        words = []
        for r in range(self.n + 1):
            for combo in combinations(range(1, self.n + 1), r):
                m = np.eye(self.dim, dtype=complex)
                for i in combo:
                    m = m @ self.c(i)
                words.append(m.reshape(-1))
        return int(np.linalg.matrix_rank(np.array(words)))


def chirality_split(space: SpinorSpace) -> tuple[np.ndarray, np.ndarray]:
    """Projectors π± = (1 ± c(ω))/2 onto the half-spinor spaces S±."""
    omega = space.c_omega()
    ident = np.eye(space.dim)
    if not np.allclose(omega @ omega, ident, atol=1e-12):
        raise ValueError("volume element action is not an involution")
    return (ident + omega) / 2, (ident - omega) / 2
