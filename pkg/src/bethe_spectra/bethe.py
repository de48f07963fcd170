"""Closed-form characteristic polynomials for line graphs of generalized
Bethe trees B(d_1, ..., d_k), built from the g-polynomial recurrence.

Indexing follows the usual convention: d[0] holds d_1, so ``d.d[i - 1]`` is d_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import poly
from .poly import DEFAULT_EPS, IntPoly, RootInterval, SturmCounter

LAMBDA_PLUS_2 = IntPoly.linear(1, 2)


class InvalidDegreeSequence(ValueError):
    pass


class DkTooSmall(ValueError):
    """The last degree is 1, outside the range where g_{k-1} carries lambda_min."""


class MultiplicityMismatch(AssertionError):
    pass


class InterlacingViolation(AssertionError):
    pass


class ConstancyViolation(AssertionError):
    pass


@dataclass(frozen=True)
class DegreeSequence:
    d: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "d", d)
        k = len(d)
        if k < 2:
            raise InvalidDegreeSequence("need at least two levels (k >= 2)")
        if d[0] != 1:
            raise InvalidDegreeSequence("d_1 must equal 1")
        for i in range(1, k - 1):
            if d[i] < 2:
                raise InvalidDegreeSequence(f"d_{i + 1} must be >= 2 (got {d[i]})")
        if d[-1] < 1:
            raise InvalidDegreeSequence(f"d_{k} must be >= 1 (got {d[-1]})")

    @classmethod
    def parse(cls, text: str) -> DegreeSequence:
        try:
            values = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError as exc:
            raise InvalidDegreeSequence(f"cannot parse degree list {text!r}") from exc
        return cls(values)

    @classmethod
    def from_prefix(cls, prefix: Sequence[int], dk: int) -> DegreeSequence:
        return cls(tuple(prefix) + (dk,))

    @property
    def k(self) -> int:
        return len(self.d)

    @property
    def dk(self) -> int:
        return self.d[-1]

    @property
    def prefix(self) -> tuple[int, ...]:
        return self.d[:-1]

    def __getitem__(self, i: int) -> int:
        """1-based access: ``seq[i]`` is d_i."""
        if not 1 <= i <= self.k:
            raise IndexError(i)
        return self.d[i - 1]

    def replace(self, i: int, value: int) -> DegreeSequence:
        d = list(self.d)
        d[i - 1] = value
        return DegreeSequence(tuple(d))

    def __str__(self) -> str:
        return ",".join(map(str, self.d))


def validate_prefix(prefix: Sequence[int]) -> tuple[int, ...]:
    """Check that (d_1, ..., d_{k-1}) can be completed by any d_k >= 1."""
    prefix = tuple(int(x) for x in prefix)
    DegreeSequence(prefix + (1,))
    return prefix


@dataclass(frozen=True)
class LevelMultiplicities:
    m: tuple[int, ...]
    sigma: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(self.m[1:-1])


def level_multiplicities(d: DegreeSequence) -> LevelMultiplicities:
    k, dk = d.k, d.dk
    m = []
    for l in range(k):
        prod = dk
        for i in range(l + 1, k):
            prod *= d[i] - 1
        m.append(prod)
    m.append(1)
    sigma = [m[l] - m[l + 1] for l in range(k)] + [1]
    return LevelMultiplicities(tuple(m), tuple(sigma))


def g_polynomials(d: DegreeSequence) -> tuple[IntPoly, ...]:
    """g_0, ..., g_k. Index k always uses the d_k rule, including when k == 2."""
    k = d.k
    g = [poly.ONE, IntPoly.linear(1, 1)]
    for i in range(2, k + 1):
        di = d[i]
        b = di if i == k else di - 1
        g.append(IntPoly.linear(1, 2 - di) * g[i - 1] - g[i - 2] * b)
    return tuple(g)


@dataclass(frozen=True)
class FactoredCharPoly:
    """(1 / (lambda + 2)) * prod g_l ** sigma_l, kept factored.

    Factors with exponent 0 stay in the list so the output says which g_l
    dropped out.
    """

    degrees: tuple[int, ...]
    factors: tuple[tuple[IntPoly, int], ...]
    divisor: IntPoly = LAMBDA_PLUS_2

    def numerator(self) -> IntPoly:
        out = poly.ONE
        for f, e in self.factors:
            if e:
                out = out * poly.pow(f, e)
        return out

    def expand(self) -> IntPoly:
        return poly.exact_div(self.numerator(), self.divisor)

    @property
    def degree(self) -> int:
        return sum(l * e for l, (_, e) in enumerate(self.factors, start=1)) - 1

    def to_json(self) -> dict:
        return {
            "factors": [{"poly": f.to_json(), "exp": e} for f, e in self.factors],
            "divisor": "lambda+2",
            "degrees": list(self.degrees),
        }

    def pretty(self, var: str = "x") -> str:
        parts = []
        for f, e in self.factors:
            if e == 0:
                continue
            body = f"({poly.to_str(f, var)})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return f"[{' * '.join(parts) or '1'}] / ({var} + 2)"


def char_poly_factored(d: DegreeSequence) -> FactoredCharPoly:
    g = g_polynomials(d)
    sigma = level_multiplicities(d).sigma
    factors = tuple((g[l], sigma[l]) for l in range(1, d.k + 1))
    return FactoredCharPoly(degrees=d.d, factors=factors)


def char_poly_expanded(d: DegreeSequence) -> IntPoly:
    return char_poly_factored(d).expand()


def critical_factor(d: DegreeSequence) -> IntPoly:
    """g_k + d_k (g_{k-1} + g_{k-2}).

    For k == 2 this reads g_2 + d_2 (g_1 + g_0) with g_0 = 1; no special case
    is needed and the identity with (lambda + 2) g_{k-1} still holds.
    The factor lambda + 2 contributes the zero -2, which is not an eigenvalue;
    lambda_min is the smallest zero of the cofactor g_{k-1}.
    """
    g = g_polynomials(d)
    k = d.k
    return g[k] + (g[k - 1] + g[k - 2]) * d.dk


def _require_dk_ge_2(d: DegreeSequence) -> None:
    if d.dk < 2:
        raise DkTooSmall(
            f"d_k = {d.dk}; lambda_min via g_(k-1) needs d_k >= 2, "
            "use the expanded characteristic polynomial instead"
        )


def smallest_eigenvalue(d: DegreeSequence, eps: Fraction = DEFAULT_EPS) -> RootInterval:
    _require_dk_ge_2(d)
    return poly.isolate_smallest_root(g_polynomials(d)[d.k - 1], eps)


def smallest_root_of_char_poly(d: DegreeSequence, eps: Fraction = DEFAULT_EPS) -> RootInterval:
    """lambda_min of L(B(d)) for any d, d_k = 1 included."""
    return poly.isolate_smallest_root(char_poly_expanded(d), eps)


def _separate(p: IntPoly, iv: RootInterval, q: IntPoly) -> RootInterval:
    """Shrink iv (isolating a root r of p) until q has no root in it.

    Caller guarantees q(r) != 0.
    """
    pc, qc = SturmCounter(p), SturmCounter(q)
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        if poly.sign_at(q, lo) == 0:
            raise MultiplicityMismatch("exact root is shared")
        return iv
    while qc.count(lo, hi):
        mid = (lo + hi) / 2
        if poly.sign_at(p, mid) == 0:
            return RootInterval(mid, mid)
        if pc.count(lo, mid):
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi)


def _shares_root(p: IntPoly, iv: RootInterval, q: IntPoly) -> bool:
    """Does q vanish at the unique root of p isolated by iv?"""
    h = poly.gcd(p, q)
    if h.degree == 0:
        return False
    if iv.is_exact:
        return poly.sign_at(h, iv.lo) == 0
    return SturmCounter(h).count(iv.lo, iv.hi) > 0


def smallest_eigenvalue_multiplicity(d: DegreeSequence, eps: Fraction = DEFAULT_EPS) -> int:
    """d_k - 1, after checking structurally that nothing else contributes.

    The smallest zero of g_{k-1} must not be a zero of g_k / (lambda + 2) or
    of g_1, ..., g_{k-2}; then its multiplicity in the factored form is
    sigma_{k-1} = d_k - 1.
    """
    _require_dk_ge_2(d)
    k = d.k
    g = g_polynomials(d)
    sigma = level_multiplicities(d).sigma
    if sigma[k - 1] != d.dk - 1:
        raise MultiplicityMismatch(f"sigma_(k-1) = {sigma[k - 1]} != d_k - 1 = {d.dk - 1}")
    target = g[k - 1]
    iv = poly.isolate_smallest_root(target, eps)
    others = [poly.exact_div(g[k], LAMBDA_PLUS_2)] + [g[l] for l in range(1, k - 1)]
    for q in others:
        if _shares_root(target, iv, q):
            raise MultiplicityMismatch(
                f"smallest zero of g_(k-1) is also a zero of {poly.to_str(q)}"
            )
        iv = _separate(target, iv, q)
        if SturmCounter(q).count(iv.lo, iv.hi) != 0:
            raise MultiplicityMismatch("could not separate roots")
    if not poly.is_squarefree(target):
        raise MultiplicityMismatch("g_(k-1) has a repeated zero")
    return d.dk - 1


@dataclass(frozen=True)
class Interlacing:
    gammas: tuple[RootInterval, ...]  # gamma_1, ..., gamma_k
    beta: RootInterval  # second smallest zero of g_k

    def __iter__(self):
        return iter(self.gammas)

    def __len__(self) -> int:
        return len(self.gammas)

    def __getitem__(self, i):
        return self.gammas[i]


_SEPARATION_FLOOR = Fraction(1, 2**200)


def _second_root(p: IntPoly, above: Fraction, eps: Fraction) -> RootInterval:
    """Isolate the smallest zero of p strictly greater than ``above``."""
    counter = SturmCounter(p)
    lo, hi = Fraction(above), Fraction(poly.cauchy_bound(p))
    if counter.count(lo, hi) == 0:
        raise InterlacingViolation(f"{poly.to_str(p)} has no zero above {above}")
    while hi - lo > eps or counter.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if counter.count(lo, mid):
            hi = mid
        else:
            lo = mid
    if poly.sign_at(p, hi) == 0:
        return RootInterval(hi, hi)
    return RootInterval(lo, hi)


def _order_strictly(
    p_up: IntPoly, up: RootInterval, p_low: IntPoly, low: RootInterval, what: str
) -> tuple[RootInterval, RootInterval]:
    """Refine two isolating intervals until ``up`` lies strictly above ``low``."""
    while not up.strictly_above(low):
        if up.hi < low.lo:
            raise InterlacingViolation(f"{what}: order reversed")
        if up.is_exact and low.is_exact:
            raise InterlacingViolation(f"{what}: roots coincide")
        if max(up.width, low.width) < _SEPARATION_FLOOR:
            raise InterlacingViolation(f"{what}: not separated")
        if low.is_exact or (not up.is_exact and up.width >= low.width):
            up = poly.refine(p_up, up, up.width / 2)
        else:
            low = poly.refine(p_low, low, low.width / 2)
    return up, low


def verify_interlacing(d: DegreeSequence, eps: Fraction = DEFAULT_EPS) -> Interlacing:
    """Certify gamma_1 > gamma_2 > ... > gamma_k = -2 and beta > gamma_{k-1}.

    gamma_i is the smallest zero of g_i and beta the second smallest zero of g_k.
    """
    k = d.k
    g = g_polynomials(d)
    minus2 = Fraction(-2)
    if poly.sign_at(g[k], minus2) != 0:
        raise InterlacingViolation("g_k(-2) != 0")
    if SturmCounter(g[k]).count_below(minus2) != 1:
        raise InterlacingViolation("g_k has a zero below -2")
    gammas = [poly.isolate_smallest_root(g[i], eps) for i in range(1, k)]
    gammas.append(RootInterval(minus2, minus2))
    for i in range(k - 1):
        gammas[i], gammas[i + 1] = _order_strictly(
            g[i + 1], gammas[i], g[i + 2], gammas[i + 1], f"gamma_{i + 1} > gamma_{i + 2}"
        )
    # Refining gamma_{i+1} against gamma_{i+2} only shrinks it, so earlier pairs stay ordered.
    beta = _second_root(g[k], minus2, eps)
    beta, gammas[k - 2] = _order_strictly(g[k], beta, g[k - 1], gammas[k - 2], "beta > gamma_(k-1)")
    return Interlacing(tuple(gammas), beta)


def verify_simple_zeros(d: DegreeSequence) -> bool:
    g = g_polynomials(d)
    return all(poly.is_squarefree(g[i]) for i in range(1, d.k + 1))


@dataclass(frozen=True)
class FamilyRow:
    dk: int
    interval: RootInterval
    multiplicity: int
    g_km1: IntPoly


def family_scan(
    prefix: Sequence[int], dk_range: Iterable[int], eps: Fraction = DEFAULT_EPS
) -> list[FamilyRow]:
    """lambda_min and its multiplicity for B(prefix + (d_k,)) over a range of d_k.

    Raises ConstancyViolation if g_{k-1} differs between rows; the interval
    overlap check is only a readable consequence of that.
    """
    prefix = validate_prefix(prefix)
    rows = []
    for dk in dk_range:
        if dk < 2:
            raise DkTooSmall(f"family rows need d_k >= 2 (got {dk})")
        d = DegreeSequence.from_prefix(prefix, dk)
        g = g_polynomials(d)
        iv = smallest_eigenvalue(d, eps)
        mult = smallest_eigenvalue_multiplicity(d, eps)
        if mult != dk - 1:
            raise MultiplicityMismatch(f"d_k = {dk}: multiplicity {mult}")
        rows.append(FamilyRow(dk, iv, mult, g[d.k - 1]))
    for row in rows[1:]:
        if row.g_km1 != rows[0].g_km1:
            raise ConstancyViolation(f"g_(k-1) differs at d_k = {row.dk}")
        if not row.interval.overlaps(rows[0].interval):
            raise ConstancyViolation(f"lambda_min interval moved at d_k = {row.dk}")
    return rows


def verify_dk1_dependence(d: DegreeSequence, alt_dk1: int, eps: Fraction = DEFAULT_EPS) -> bool:
    """True iff changing d_{k-1} to alt_dk1 moves lambda_min.

    eps is halved (at most 64 times) until the two isolating intervals are
    disjoint; if they never separate, a shared root is decided exactly through
    the gcd of the two g_{k-1} polynomials.
    """
    if d.k < 3:
        raise ValueError("need k >= 3 to vary d_(k-1)")
    _require_dk_ge_2(d)
    if alt_dk1 < 2 or alt_dk1 == d[d.k - 1]:
        raise ValueError("alt_dk1 must be >= 2 and differ from d_(k-1)")
    other = d.replace(d.k - 1, alt_dk1)
    p = g_polynomials(d)[d.k - 1]
    q = g_polynomials(other)[other.k - 1]
    eps = Fraction(eps)
    a = poly.isolate_smallest_root(p, eps)
    b = poly.isolate_smallest_root(q, eps)
    for _ in range(64):
        if a.disjoint_from(b):
            return True
        eps /= 2
        a = poly.refine(p, a, eps)
        b = poly.refine(q, b, eps)
    if a.disjoint_from(b):
        return True
    # Still overlapping: only an exactly shared zero explains that.
    h = poly.gcd(p, q)
    if h.degree and _shares_root(p, a, h):
        return False
    raise ValueError("lambda_min intervals failed to separate within 64 halvings")
