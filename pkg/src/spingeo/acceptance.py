"""The package's acceptance checks, shared by the test suite and the CLI.

Each ``criterion_*`` function performs one end-to-end verification and
returns a :class:`CheckResult`; :func:`run_all` executes the full battery.
Randomized checks take an explicit seed so runs are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy

from . import cech, chern_weil, classification, index_lab, spinrep
from .clifford import Multivector, Signature


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


# 1 ---------------------------------------------------------------------------

_TABLE1 = {
    1: (("C", 1, False), ("R", 1, True)),
    2: (("H", 1, False), ("R", 2, False)),
    3: (("H", 1, True), ("C", 2, False)),
    4: (("H", 2, False), ("H", 2, False)),
    5: (("C", 4, False), ("H", 2, True)),
    6: (("R", 8, False), ("H", 4, False)),
    7: (("R", 8, True), ("C", 8, False)),
    8: (("R", 16, False), ("R", 16, False)),
}


def criterion_classification_table() -> CheckResult:
    """classify_real reproduces all 16 golden entries for n = 1..8."""
    bad = []
    for n, (pos, neg) in _TABLE1.items():
        got_pos = classification.classify_real(n, 0)
        got_neg = classification.classify_real(0, n)
        if (got_pos.base, got_pos.size, got_pos.doubled) != pos:
            bad.append(f"Cl({n},0) -> {got_pos}")
        if (got_neg.base, got_neg.size, got_neg.doubled) != neg:
            bad.append(f"Cl(0,{n}) -> {got_neg}")
    return CheckResult(
        "classification golden table",
        not bad,
        "all 16 entries match" if not bad else "; ".join(bad),
    )


# 2 ---------------------------------------------------------------------------

def criterion_periodicity() -> CheckResult:
    """Mod-8 real periodicity (sizes x16) and mod-2 complex periodicity (x2)."""
    ok = True
    notes = []
    for n in range(0, 17):
        a = classification.classify_real(n, 0)
        b = classification.classify_real(n + 8, 0)
        if not (b.base == a.base and b.doubled == a.doubled and b.size == 16 * a.size):
            ok = False
            notes.append(f"real period fails at n={n}")
    for n in range(0, 17):
        a = classification.classify_complex(n)
        b = classification.classify_complex(n + 2)
        if not (b.doubled == a.doubled and b.size == 2 * a.size):
            ok = False
            notes.append(f"complex period fails at n={n}")
    for p in range(0, 9):
        for q in range(0, 9):
            t = classification.classify_real(p, q)
            if t.real_dim != 2 ** (p + q):
                ok = False
                notes.append(f"dimension audit fails at ({p},{q})")
    return CheckResult("periodicity + dimension audit", ok, "; ".join(notes) or "8-/2-periodic, dims 2^n")


# 3 ---------------------------------------------------------------------------

def criterion_clifford_relations(seed: int = 0) -> CheckResult:
    """10^4 generator relation checks and 10^3 exact associativity checks."""
    rng = random.Random(seed)
    for trial in range(10_000):
        p = rng.randint(0, 5)
        q = rng.randint(0, 5 - p) if p < 5 else 0
        n = p + q
        if n == 0:
            continue
        sig = Signature(p, q)
        i = rng.randint(1, n)
        j = rng.randint(1, n)
        ei = Multivector.basis_vector(i, sig)
        ej = Multivector.basis_vector(j, sig)
        eta = 0 if i != j else (1 if i <= p else -1)
        if ei * ej + ej * ei != Multivector.scalar(-2 * eta, sig):
            return CheckResult("Clifford relations", False, f"relation fails at {(p, q, i, j)}")

    def random_mv(sig: Signature) -> Multivector:
        terms = {}
        for _ in range(3):
            blade = rng.randrange(1 << sig.n)
            terms[blade] = terms.get(blade, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        return Multivector(sig, terms)

    for trial in range(1_000):
        p = rng.randint(0, 6)
        q = rng.randint(0, 6 - p)
        if p + q == 0:
            continue
        sig = Signature(p, q)
        a, b, c = (random_mv(sig) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return CheckResult("Clifford relations", False, f"associativity fails in Cl({p},{q})")
    return CheckResult("Clifford relations", True, "10^4 relation + 10^3 associativity checks, exact")


# 4 ---------------------------------------------------------------------------

def criterion_spinor_representation() -> CheckResult:
    """Spinor generators for n = 2, 4, 6: relations, span, chirality."""
    for n in (2, 4, 6):
        sp = spinrep.SpinorSpace(n)
        ident = np.eye(sp.dim)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                anti = sp.c(i) @ sp.c(j) + sp.c(j) @ sp.c(i)
                target = -2.0 * (i == j) * ident
                if np.max(np.abs(anti - target)) > 1e-12:
                    return CheckResult("spinor representation", False, f"relation fails n={n} ({i},{j})")
        if sp.monomial_span_dim() != 4 ** (n // 2):
            return CheckResult("spinor representation", False, f"span defect at n={n}")
        pp, pm = spinrep.chirality_split(sp)
        if (
            np.max(np.abs(pp @ pp - pp)) > 1e-12
            or np.max(np.abs(pm @ pm - pm)) > 1e-12
            or np.max(np.abs(pp @ pm)) > 1e-12
            or np.max(np.abs(pp + pm - ident)) > 1e-12
        ):
            return CheckResult("spinor representation", False, f"chirality projectors fail at n={n}")
    return CheckResult("spinor representation", True, "relations, 4^{n/2} span, projectors for n=2,4,6")


# 5 ---------------------------------------------------------------------------

def criterion_twisted_adjoint(seed: int = 0, samples: int = 1000) -> CheckResult:
    """Random unit-vector products: orthogonality, det +1 on Spin, reflections."""
    rng = np.random.default_rng(seed)
    n = 4
    sig = Signature(n, 0)
    worst = 0.0
    for trial in range(samples):
        length = int(rng.integers(1, 6))
        x = Multivector.scalar(complex(1.0), sig)
        for _ in range(length):
            v = rng.normal(size=n)
            v /= np.linalg.norm(v)
            x = x * Multivector.vector([complex(c) for c in v], sig)
        mat = spinrep.twisted_adjoint_matrix(x).real
        worst = max(worst, float(np.max(np.abs(mat @ mat.T - np.eye(n)))))
        if worst > 1e-12:
            return CheckResult("twisted adjoint", False, f"orthogonality residual {worst:.2e}")
        if length % 2 == 0 and abs(np.linalg.det(mat) - 1.0) > 1e-10:
            return CheckResult("twisted adjoint", False, "even product left SO(n)")
    # exact reflection formula on rational vectors
    rexact = random.Random(seed)
    for trial in range(100):
        v = Multivector.vector([Fraction(rexact.randint(-3, 3)) for _ in range(n)], sig)
        w = Multivector.vector([Fraction(rexact.randint(-3, 3)) for _ in range(n)], sig)
        if (v * v).is_zero():
            continue
        if spinrep.twisted_adjoint(v, w) != spinrep.reflection_formula(v, w):
            return CheckResult("twisted adjoint", False, "reflection formula mismatch")
    return CheckResult("twisted adjoint", True, f"{samples} products orthogonal (worst {worst:.2e}), reflections exact")


# 6 ---------------------------------------------------------------------------

def criterion_berezin(seed: int = 0) -> CheckResult:
    """Quadratic-exponential supertraces match the Pfaffian closed form."""
    worst = 0.0
    for lam10 in range(1, 21):
        lam = lam10 / 10.0
        A = np.array([[0.0, lam], [-lam, 0.0]])
        lhs, rhs = spinrep.berezin_supertrace_exp(A)
        worst = max(worst, abs(lhs - rhs), abs(lhs - (-2j * math.sin(lam))))
    rng = np.random.default_rng(seed)
    for trial in range(20):
        B = rng.normal(size=(4, 4)) * 0.4
        A = B - B.T
        lhs, rhs = spinrep.berezin_supertrace_exp(A)
        worst = max(worst, abs(lhs - rhs))
    passed = worst <= 1e-10
    return CheckResult("Berezin/Pfaffian identity", passed, f"worst |lhs-rhs| = {worst:.2e}")


# 7 ---------------------------------------------------------------------------

def criterion_genus_expansions() -> CheckResult:
    """Exact genus Taylor coefficients and the symbolic p1 identity."""
    ahat = chern_weil.taylor_series("ahat", 4)
    lg = chern_weil.taylor_series("lgenus", 4)
    todd = chern_weil.taylor_series("todd", 2)
    if ahat[2] != Fraction(-1, 24) or ahat[4] != Fraction(7, 5760):
        return CheckResult("genus expansions", False, f"ahat series {ahat}")
    if lg[2] != Fraction(1, 3) or lg[4] != Fraction(-1, 45):
        return CheckResult("genus expansions", False, f"L series {lg}")
    if todd[1] != Fraction(1, 2):
        return CheckResult("genus expansions", False, f"todd series {todd}")
    pont = chern_weil.genus_expand("ahat")
    if pont["p1"] != Fraction(-1, 24) or pont["p1^2"] != Fraction(7, 5760) or pont["p2"] != Fraction(-1, 1440):
        return CheckResult("genus expansions", False, f"ahat pontryagin form {pont}")
    # p1 == -(1/8π²) tr(F∧F) on a generic antisymmetric FormMatrix
    m = 4
    F = chern_weil.FormMatrix.zero(3, m)
    for i in range(3):
        for j in range(i + 1, 3):
            poly = chern_weil.FormPoly(m)
            for mu, nu in combinations(range(1, m + 1), 2):
                poly = poly + chern_weil.FormPoly.monomial(
                    (mu, nu), m, sympy.Symbol(f"a_{i}{j}_{mu}{nu}")
                )
            F.entries[i][j] = poly
            F.entries[j][i] = -poly
    p1 = chern_weil.genus_eval("pontryagin", F).degree_part(4)
    rhs = chern_weil.form_tr(F @ F) * (sympy.Rational(-1, 8) / sympy.pi**2)
    if not (p1 - rhs).expand().is_zero():
        return CheckResult("genus expansions", False, "p1 != -(1/8π²) tr(F∧F)")
    return CheckResult("genus expansions", True, "ahat/L/todd coefficients and symbolic p1 exact")


# 8 ---------------------------------------------------------------------------

def criterion_chern_gauss_bonnet() -> CheckResult:
    """Euler characteristic numbers from curvature models, exactly."""
    for r in (Fraction(1, 2), 1, 3):
        model = chern_weil.curvature_model("sphere2", r)
        chi = chern_weil.integrate_top(chern_weil.genus_eval("euler", model.F), model)
        if chi != 2:
            return CheckResult("Chern-Gauss-Bonnet", False, f"sphere2({r}) gave {chi}")
    torus = chern_weil.curvature_model("torus2")
    if chern_weil.integrate_top(chern_weil.genus_eval("euler", torus.F), torus) != 0:
        return CheckResult("Chern-Gauss-Bonnet", False, "torus2 nonzero")
    prod = chern_weil.product_model(
        chern_weil.curvature_model("sphere2"), chern_weil.curvature_model("sphere2", 2)
    )
    chi = chern_weil.integrate_top(chern_weil.genus_eval("euler", prod.F), prod)
    if chi != 4:
        return CheckResult("Chern-Gauss-Bonnet", False, f"product gave {chi}")
    return CheckResult("Chern-Gauss-Bonnet", True, "χ = 2 (any r), 0, 4 exactly")


# 9 ---------------------------------------------------------------------------

def criterion_cech(seed: int = 0, trials: int = 1000) -> CheckResult:
    """δ² triviality plus spin-structure counts 2 / 1 / 4 with torsor checks."""
    rng = random.Random(seed)
    for trial in range(trials):
        patches = rng.randint(3, 6)
        all_triples = list(combinations(range(patches), 3))
        chosen = [t for t in all_triples if rng.random() < 0.5]
        extra_pairs = [p for p in combinations(range(patches), 2) if rng.random() < 0.5]
        nerve = cech.make_nerve(patches, chosen + extra_pairs)
        for k in (0, 1):
            values = {
                s: rng.choice((1, -1)) for s in nerve.simplices_of_dim(k)
            }
            sigma = cech.Cochain(nerve, k, values)
            if not cech.coboundary(cech.coboundary(sigma)).is_trivial():
                return CheckResult("Čech suite", False, f"δ² failed on trial {trial}")
    expected = {"circle": 2, "sphere": 1, "torus": 4}
    for name, want in expected.items():
        nerve = cech.BUILTIN_NERVES[name]()
        lifts = cech.Cochain(nerve, 1)
        report = cech.w2_and_spin_structures(lifts)
        if not report.w2_trivial or report.count != want:
            return CheckResult("Čech suite", False, f"{name}: got {report.count}, want {want}")
        if not report.torsor_verified:
            return CheckResult("Čech suite", False, f"{name}: H¹ action not a verified torsor")
    return CheckResult("Čech suite", True, f"δ² trivial ({trials} trials); spin counts 2/1/4 with torsor")


# 10 ---------------------------------------------------------------------------

def criterion_index_lab() -> CheckResult:
    """D_λ sweep, S² Hodge supertrace, torus Dirac cancellation, Mehler."""
    # (a) λ sweep
    for k in range(0, 21):
        lam = k / 10.0
        res = index_lab.dlambda_index(lam, 10)
        want_kernel = 1 if lam == int(lam) else 0
        if res["index"] != 0 or res["kernel_dim"] != want_kernel:
            return CheckResult("index lab", False, f"dlambda sweep fails at λ={lam}")
    # (b) sphere2 supertrace within tail bound
    for t in (0.1, 0.5, 1.0, 2.0):
        tau = index_lab.sphere2_tail_bound(t, 40)
        val = index_lab.hodge_supertrace("sphere2", t, 40)
        if abs(val - 2.0) > max(tau, 1e-12):
            return CheckResult("index lab", False, f"sphere2 supertrace {val} at t={t}")
    ms = index_lab.mckean_singer_check(index_lab.sphere2_hodge_model(40), [0.1, 0.5, 1.0, 2.0])
    if ms["inferred_index"] != 2:
        return CheckResult("index lab", False, "sphere2 inferred index != 2")
    # (c) torus Dirac supertrace
    for delta in ((0, 0), (0, 0.5), (0.5, 0), (0.5, 0.5)):
        model = index_lab.torus_dirac_model(delta, 12)
        for t in (0.2, 1.0, 5.0):
            if abs(model.supertrace(t)) > 1e-12:
                return CheckResult("index lab", False, f"torus Dirac str != 0 at δ={delta}")
        want_kernel = 2 if delta == (0, 0) else 0
        if model.kernel_dim() != want_kernel:
            return CheckResult("index lab", False, f"torus Dirac kernel at δ={delta}")
    # (d) Mehler vs Hermite oracle + semigroup residual
    worst = 0.0
    for x in np.linspace(-1, 1, 5):
        for y in np.linspace(-1, 1, 5):
            worst = max(
                worst,
                abs(
                    index_lab.mehler_kernel(0.3, x, y, 1.0)
                    - index_lab.oscillator_eigen_expansion(0.3, x, y, 1.0, terms=60)
                ),
            )
    if worst > 1e-8:
        return CheckResult("index lab", False, f"Mehler vs Hermite worst {worst:.2e}")
    xs = np.linspace(-1, 1, 3)
    res_line = index_lab.semigroup_residual(index_lab.line_heat_kernel, 0.5, 0.5, xs)
    res_meh = index_lab.semigroup_residual(
        lambda t, x, y: index_lab.mehler_kernel(t, x, y, 1.0), 0.2, 0.3, xs
    )
    if max(res_line, res_meh) > 1e-6:
        return CheckResult("index lab", False, f"semigroup residual {max(res_line, res_meh):.2e}")
    return CheckResult(
        "index lab",
        True,
        f"λ-sweep, S² str→2, torus str=0, Mehler {worst:.1e}, semigroup {max(res_line, res_meh):.1e}",
    )


# 11 ---------------------------------------------------------------------------

def criterion_substitution_suites(seed: int = 0) -> CheckResult:
    """Flat D² identity, symbol ellipticity, McKean-Singer t-independence."""
    if index_lab.flat_dirac_square_residual(4) > 1e-14:
        return CheckResult("substitution suites", False, "flat D² != -Σ∂² ⊗ I")
    rng = np.random.default_rng(seed)
    for n in (2, 4):
        for _ in range(25):
            xi = rng.normal(size=n)
            if not index_lab.symbol_is_elliptic(xi, n):
                return CheckResult("substitution suites", False, f"symbol not invertible, n={n}")
        if index_lab.symbol_is_elliptic(np.zeros(n), n):
            return CheckResult("substitution suites", False, "zero covector reported elliptic")
    models = [
        index_lab.sphere2_hodge_model(40),
        index_lab.torus2_hodge_model(10),
        index_lab.dlambda_model(0.5, 30),
        index_lab.torus_dirac_model((0.5, 0.5), 10),
    ]
    for model in models:
        if not model.spectral_symmetry_holds():
            return CheckResult("substitution suites", False, f"spectral symmetry fails in {model.name}")
        values = [model.supertrace(t) for t in (0.2, 0.7, 1.3, 3.0)]
        if max(values) - min(values) > 1e-10:
            return CheckResult("substitution suites", False, f"heat trace t-dependent in {model.name}")
    return CheckResult("substitution suites", True, "D² identity, ellipticity, t-independence")


ALL_CRITERIA = [
    criterion_classification_table,
    criterion_periodicity,
    criterion_clifford_relations,
    criterion_spinor_representation,
    criterion_twisted_adjoint,
    criterion_berezin,
    criterion_genus_expansions,
    criterion_chern_gauss_bonnet,
    criterion_cech,
    criterion_index_lab,
    criterion_substitution_suites,
]


def run_all(seed: int = 0) -> list[CheckResult]:
    results = []
    for fn in ALL_CRITERIA:
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            results.append(fn(seed=seed))
        else:
            results.append(fn())
    return results
