"""Spectral data of substitution matrices, the gcd criterion and two-letter periodicity."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .core import DeterministicSubstitution, IntMatrix, RandomSubstitution, is_primitive, substitution_matrix
from .errors import NotPeriodic, NotPrimitive, NotTwoLetter
from .quadratic import QuadNumber

# working precision for matrices of size three and more
DIGITS = 50
RESIDUAL_TOLERANCE = 1e-12


# --------------------------------------------------------------------------- characteristic polynomial


def characteristic_polynomial(M: IntMatrix) -> tuple[int, ...]:
    """Coefficients of det(xI - M), leading coefficient first (Faddeev–LeVerrier)."""
    d = M.size
    coeffs = [1]
    N = IntMatrix(tuple(tuple(0 for _ in range(d)) for _ in range(d)))
    c = 1
    for k in range(1, d + 1):
        # N_k = M N_{k-1} + c_{k-1} I, then c_k = -tr(M N_k) / k
        MN = M @ N
        N = IntMatrix(tuple(tuple(MN[i, j] + (c if i == j else 0) for j in range(d)) for i in range(d)))
        trace = (M @ N).trace()
        if trace % k:
            raise ArithmeticError("non-integral characteristic polynomial coefficient")
        c = -trace // k
        coeffs.append(c)
    return tuple(coeffs)


def _poly_value(coeffs, x):
    v = 0
    for c in coeffs:
        v = v * x + c
    return v


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def integer_roots(coeffs: tuple[int, ...]) -> list[int]:
    """Integer roots of a monic integer polynomial (rational root theorem)."""
    roots = []
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        if 0 not in roots:
            roots.append(0)
        c.pop()
    if len(c) == 1:
        return sorted(roots)
    for q in _divisors(c[-1]):
        for r in (q, -q):
            if _poly_value(c, r) == 0:
                roots.append(r)
    return sorted(set(roots))


def _has_quadratic_factor(coeffs: tuple[int, ...]) -> bool:
    """Whether a monic integer quartic splits as two monic integer quadratics."""
    _, c3, c2, c1, c0 = coeffs
    # (x² + p x + q)(x² + r x + s): p + r = c3, q + s + p r = c2, p s + q r = c1, q s = c0
    if c0 == 0:
        return True
    for q in _divisors(c0):
        for q in (q, -q):
            s = c0 // q
            if s != q:
                num = c1 - q * c3
                if num % (s - q):
                    continue
                p = num // (s - q)
                candidates = [p]
            else:
                if c1 != q * c3:
                    continue
                # p + r = c3 and p r = c2 - 2q
                disc = c3 * c3 - 4 * (c2 - 2 * q)
                if disc < 0 or math.isqrt(disc) ** 2 != disc:
                    continue
                root = math.isqrt(disc)
                if (c3 + root) % 2:
                    continue
                candidates = [(c3 + root) // 2]
            for p in candidates:
                r = c3 - p
                if q + s + p * r == c2 and p * s + q * r == c1:
                    return True
    return False


def is_irreducible_polynomial(coeffs: tuple[int, ...]) -> Optional[bool]:
    """Irreducibility over ℚ of a monic integer polynomial; ``None`` when undecided.

    Degree ≤ 3 is decided by the rational root theorem, degree 4 adds a
    search for monic integer quadratic factors, higher degrees are decided
    only when an integer root exists.
    """
    degree = len(coeffs) - 1
    if degree <= 1:
        return True
    if integer_roots(coeffs):
        return False
    if degree <= 3:
        return True
    if degree == 4:
        return not _has_quadratic_factor(coeffs)
    return None


# --------------------------------------------------------------------------- spectral data


@dataclass(frozen=True)
class SpectralData:
    """Eigen-data of a primitive substitution matrix.

    For ``d ≤ 2`` every number is an exact :class:`QuadNumber`.  Otherwise
    eigenvalues and eigenvectors are ``mpmath`` numbers at :data:`DIGITS`
    digits and ``error_bound`` bounds the root error.  Eigenvalues are
    listed by decreasing modulus; ``lambda2`` is the second one.
    ``lambda2_class`` compares ``|λ₂|`` with 1 (``"lt1"``, ``"eq1"``,
    ``"gt1"``, or ``"unknown"`` when the numeric interval straddles 1).
    ``frequencies`` is the right PF eigenvector summing to 1,
    ``natural_lengths`` the left one scaled to minimum entry 1.
    """

    matrix: IntMatrix
    charpoly: tuple[int, ...]
    eigenvalues: tuple
    lambda1: object
    lambda2: object
    frequencies: tuple
    natural_lengths: tuple
    exact: bool
    error_bound: float
    is_pisot: Optional[bool]
    is_irreducible: Optional[bool]
    lambda2_class: str
    diagonalizable: Optional[bool]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def d(self) -> int:
        return self.matrix.size

    @property
    def is_irreducible_pisot(self) -> bool:
        return bool(self.is_pisot) and bool(self.is_irreducible)

    @property
    def lambda1_is_integer(self) -> Optional[bool]:
        if self.exact:
            return self.lambda1.is_integer
        return self.lambda1 in [mpmath.mpf(r) for r in integer_roots(self.charpoly)]

    def to_json(self) -> dict:
        def show(x):
            if isinstance(x, QuadNumber):
                return x.to_json()
            if isinstance(x, mpmath.mpc):
                return {"re": mpmath.nstr(x.real, 20), "im": mpmath.nstr(x.imag, 20)}
            return mpmath.nstr(x, 20)

        return {
            "matrix": self.matrix.tolist(),
            "charpoly": list(self.charpoly),
            "eigenvalues": [show(x) for x in self.eigenvalues],
            "lambda1": show(self.lambda1),
            "lambda2": show(self.lambda2) if self.lambda2 is not None else None,
            "frequencies": [show(x) for x in self.frequencies],
            "natural_lengths": [show(x) for x in self.natural_lengths],
            "exact": self.exact,
            "error_bound": self.error_bound,
            "is_pisot": self.is_pisot,
            "is_irreducible": self.is_irreducible,
            "lambda2_class": self.lambda2_class,
            "diagonalizable": self.diagonalizable,
            "notes": list(self.notes),
        }


def _compare_one(x: QuadNumber) -> str:
    m = abs(x)
    if m < 1:
        return "lt1"
    if m == 1:
        return "eq1"
    return "gt1"


def _exact_data(M: IntMatrix, charpoly) -> SpectralData:
    d = M.size
    if d == 1:
        lam = QuadNumber(M[0, 0])
        one = QuadNumber(1)
        return SpectralData(
            M, charpoly, (lam,), lam, None, (one,), (one,), True, 0.0,
            is_pisot=lam > 1, is_irreducible=True, lambda2_class="none", diagonalizable=True,
        )
    (p, q), (r, s) = M.rows
    tr, det = p + s, p * s - q * r
    disc = tr * tr - 4 * det
    lam1 = QuadNumber(Fraction(tr, 2), Fraction(1, 2), disc)
    lam2 = QuadNumber(Fraction(tr, 2), Fraction(-1, 2), disc)
    # right eigenvector from whichever row is non-degenerate
    right = (QuadNumber(q), lam1 - p) if q else (lam1 - s, QuadNumber(r))
    total = right[0] + right[1]
    freqs = (right[0] / total, right[1] / total)
    left = (QuadNumber(r), lam1 - p) if r else (lam1 - s, QuadNumber(q))
    low = min(left)
    lengths = (left[0] / low, left[1] / low)
    irreducible = not lam1.is_rational
    # an integer λ₁ has no conjugates; otherwise λ₂ is its only conjugate
    pisot = lam1 > 1 and (lam1.is_integer or abs(lam2) < 1)
    return SpectralData(
        M, charpoly, (lam1, lam2), lam1, lam2, freqs, lengths, True, 0.0,
        is_pisot=pisot, is_irreducible=irreducible, lambda2_class=_compare_one(lam2), diagonalizable=True,
    )


def _numeric_data(M: IntMatrix, charpoly) -> SpectralData:
    d = M.size
    notes = []
    with mpmath.workdps(DIGITS):
        roots, err = mpmath.polyroots(list(charpoly), maxsteps=400, extraprec=400, error=True)
        err = float(err) + 10.0 ** (-DIGITS + 10)
        exact_ints = integer_roots(charpoly)
        roots = [mpmath.mpf(r.real) if abs(r.imag) <= err else r for r in roots]
        # snap roots onto exact integer roots where they agree
        snapped = []
        for r in roots:
            hit = [z for z in exact_ints if abs(r - z) <= err]
            snapped.append(mpmath.mpf(hit[0]) if hit else r)
        roots = sorted(snapped, key=lambda z: (-abs(z), -mpmath.re(z)))
        # primitivity makes the PF root real, simple and strictly dominant
        lam1 = roots[0]
        lam2 = roots[1]
        A = mpmath.matrix(M.tolist())
        E, EL, ER = mpmath.eig(A, left=True, right=True)
        k = min(range(d), key=lambda i: abs(E[i] - lam1))
        right = [mpmath.re(ER[i, k]) for i in range(d)]
        left = [mpmath.re(EL[k, i]) for i in range(d)]
        total = sum(right)
        freqs = tuple(x / total for x in right)
        low = min(left, key=abs)
        lengths = tuple(x / low for x in left)
        residual = max(
            abs(sum(A[i, j] * freqs[j] for j in range(d)) - lam1 * freqs[i]) for i in range(d)
        )
        if residual > RESIDUAL_TOLERANCE:
            notes.append(f"PF residual {mpmath.nstr(residual, 5)} above tolerance")

        modulus = abs(lam2)
        if lam2 in (1, -1) and int(lam2) in exact_ints:
            cls = "eq1"
        elif modulus > 1 + err:
            cls = "gt1"
        elif modulus < 1 - err:
            cls = "lt1"
        else:
            cls = "unknown"

        irreducible = is_irreducible_polynomial(charpoly)
        if irreducible:
            others = [abs(z) for z in roots[1:]]
            if all(m < 1 - err for m in others):
                pisot = lam1 > 1
            elif any(m > 1 - err for m in others) and all(m < 1 - err or m > 1 + err for m in others):
                pisot = False
            else:
                pisot = None
        elif int(mpmath.nint(lam1)) in exact_ints and lam1 == int(mpmath.nint(lam1)):
            pisot = lam1 > 1
        else:
            pisot = None
        if irreducible is None:
            notes.append(f"irreducibility of a degree-{d} polynomial not decided")

        distinct = all(abs(roots[i] - roots[j]) > 10 * err for i in range(d) for j in range(i + 1, d))
        diagonalizable = True if distinct else None
        if not distinct and any(abs(z) <= err for z in roots[1:]):
            notes.append("repeated eigenvalue 0: the matrix may not be diagonalisable")
    return SpectralData(
        M, charpoly, tuple(roots), lam1, lam2, freqs, lengths, False, err,
        is_pisot=pisot, is_irreducible=irreducible, lambda2_class=cls,
        diagonalizable=diagonalizable, notes=tuple(notes),
    )


def spectral_data(M: IntMatrix | RandomSubstitution) -> SpectralData:
    """Exact (d ≤ 2) or validated numeric (d ≥ 3) spectral data of a primitive matrix."""
    if isinstance(M, RandomSubstitution):
        M = substitution_matrix(M)
    if not is_primitive(M):
        raise NotPrimitive()
    charpoly = characteristic_polynomial(M)
    if M.size <= 2:
        return _exact_data(M, charpoly)
    return _numeric_data(M, charpoly)


# --------------------------------------------------------------------------- gcd criterion


@dataclass(frozen=True)
class GcdReport:
    """``values[n-1] = gcd{|ϑⁿ(a)|}`` for ``n = 1..len(values)``.

    ``verdict`` is ``"AllOne"`` or ``"GreaterThanOneAt"`` (then ``at`` holds
    ``(n, gcd_n)`` for the first such ``n``).
    """

    values: tuple[int, ...]
    lengths: tuple[tuple[int, ...], ...]
    d: int
    n_max: int
    verdict: str
    at: Optional[tuple[int, int]]
    divisibility_chain: bool
    rationale: str

    @property
    def all_one(self) -> bool:
        return self.verdict == "AllOne"

    def to_json(self) -> dict:
        return {
            "values": list(self.values),
            "d": self.d,
            "n_max": self.n_max,
            "verdict": self.verdict,
            "at": list(self.at) if self.at else None,
            "divisibility_chain": self.divisibility_chain,
            "rationale": self.rationale,
        }


STABILISATION_NOTE = (
    "a prime divides some gcd_n iff it divides gcd_d: the left kernels of the powers of M "
    "over a prime field stop growing by exponent d, and once (1,...,1)·Mⁿ vanishes mod p "
    "it stays zero"
)


def gcd_report(sub: RandomSubstitution, n_max: int = 10) -> GcdReport:
    """gcd of the super-word lengths for ``n = 1..max(d, n_max)``, from column sums of Mⁿ."""
    M = substitution_matrix(sub)
    d = M.size
    top = max(d, n_max)
    row = tuple(1 for _ in range(d))
    values, lengths = [], []
    for _ in range(top):
        # row = (1,...,1)·Mⁿ, i.e. the lengths |ϑⁿ(a)|
        row = tuple(sum(row[i] * M[i, j] for i in range(d)) for j in range(d))
        lengths.append(row)
        values.append(math.gcd(*row))
    chain = all(values[i + 1] % values[i] == 0 for i in range(top - 1))
    assert chain, "gcd_n must divide gcd_(n+1)"
    first = next((n for n, g in enumerate(values, 1) if g > 1), None)
    if first is None:
        return GcdReport(tuple(values), tuple(lengths), d, top, "AllOne", None, chain, STABILISATION_NOTE)
    return GcdReport(
        tuple(values), tuple(lengths), d, top, "GreaterThanOneAt", (first, values[first - 1]), chain,
        STABILISATION_NOTE,
    )


# --------------------------------------------------------------------------- two-letter periodicity


@dataclass(frozen=True)
class PeriodicityVerdict:
    """``status`` is ``"periodic"`` or ``"aperiodic"``.

    A periodic verdict names its normal form (``"PowerOfCommonWord"`` with
    ``u, k, l``; ``"AlternatingAB"`` or ``"AlternatingBA"`` with ``k, l``),
    matched on the substitution as given.  An aperiodic verdict carries the
    conjugation steps, the standard form reached and the asymptotic-pair
    seeds as certificate.
    """

    status: str
    form: Optional[str] = None
    params: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)

    @property
    def periodic(self) -> bool:
        return self.status == "periodic"

    def to_json(self) -> dict:
        return {"status": self.status, "form": self.form, "params": self.params, "certificate": self.certificate}


def primitive_root(word: str) -> str:
    """The shortest ``u`` with ``word = uᵏ``."""
    n = len(word)
    for k in range(1, n + 1):
        if n % k == 0 and word[:k] * (n // k) == word:
            return word[:k]
    return word


def _alternating(word: str, first: str, second: str) -> Optional[int]:
    """``k`` if ``word = (first second)ᵏ first``."""
    if len(word) % 2 == 0:
        return None
    k = len(word) // 2
    return k if word == (first + second) * k + first else None


def _two_letter(theta: DeterministicSubstitution) -> tuple[str, str]:
    if len(theta.alphabet) != 2:
        raise NotTwoLetter(len(theta.alphabet))
    M = substitution_matrix(theta.as_random())
    if not is_primitive(M):
        raise NotPrimitive("substitution")
    return theta.alphabet


def classify_periodicity(theta: DeterministicSubstitution) -> PeriodicityVerdict:
    """Periodic exactly for the three two-letter normal forms."""
    a, b = _two_letter(theta)
    x, y = theta[a], theta[b]

    if x + y == y + x:
        u = primitive_root(x)
        return PeriodicityVerdict("periodic", "PowerOfCommonWord", {"u": u, "k": len(x) // len(u), "l": len(y) // len(u)})
    k, l = _alternating(x, a, b), _alternating(y, b, a)
    if k is not None and l is not None:
        return PeriodicityVerdict("periodic", "AlternatingAB", {"k": k, "l": l})
    k, l = _alternating(x, b, a), _alternating(y, a, b)
    if k is not None and l is not None:
        return PeriodicityVerdict("periodic", "AlternatingBA", {"k": k, "l": l})

    # conjugate until the images start with different letters; the images do
    # not commute, so this stops within |θ(a)| + |θ(b)| steps
    steps = []
    for _ in range(len(x) + len(y) + 1):
        if x[0] != y[0]:
            break
        c = x[0]
        x, y = x[1:] + c, y[1:] + c
        steps.append(c)
    else:  # pragma: no cover - excluded by the commutation test above
        raise AssertionError("conjugation did not reach a standard form")
    form = {a: x, b: y}
    squared = False

    def square(f):
        return {c: "".join(f[e] for e in f[c]) for c in f}

    if x[0] == b:
        form, squared = square(form), True
    ends = [c for c in (a, b) if form[c][-1] == c]
    if not ends:
        form, squared = square(form), True
        ends = [c for c in (a, b) if form[c][-1] == c]
    seed = ends[0]
    return PeriodicityVerdict(
        "aperiodic",
        certificate={
            "conjugations": "".join(steps),
            "standard_form": form,
            "squared": squared,
            "seeds": [f"{seed}.{a}", f"{seed}.{b}"],
        },
    )


def second_eigenvalue_of_periodic(theta: DeterministicSubstitution) -> QuadNumber:
    """λ₂ of a periodic two-letter substitution; always 0, 1 or -1."""
    verdict = classify_periodicity(theta)
    if not verdict.periodic:
        raise NotPeriodic(str(theta))
    lam2 = spectral_data(substitution_matrix(theta.as_random())).lambda2
    assert lam2 in (0, 1, -1), f"periodic substitution with λ₂ = {lam2}"
    return lam2
