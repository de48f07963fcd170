"""Exact univariate integer polynomials with certified real-root isolation.

Rationals are plain :class:`fractions.Fraction` values (always reduced, positive
denominator). Polynomials are :class:`IntPoly` with ascending integer
coefficients. Nothing in here touches floating point except the ``float()``
conveniences used for reporting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Sequence

Rational = Fraction

DEFAULT_EPS = Fraction(1, 2**40)


class NonDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class EndpointRoot(ValueError):
    """Raised when a Sturm query endpoint is itself a root."""


class NoRealRoot(ValueError):
    """Raised when a polynomial has no real root to isolate."""


class IntPoly:
    """Dense polynomial over Z, coefficient index = degree.

    The zero polynomial has an empty coefficient tuple and ``degree`` None.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def linear(cls, a: int, b: int) -> IntPoly:
        """The polynomial a*x + b."""
        return cls((b, a))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return to_str(self)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        return pow(self, e)

    def __call__(self, x):
        if isinstance(x, int):
            return eval_int(self, x)
        return eval_rational(self, Fraction(x))

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> IntPoly:
        return cls(int(c) for c in obj["coeffs"])


ZERO = IntPoly()
ONE = IntPoly.constant(1)
X = IntPoly.x()


def add(p: IntPoly, q: IntPoly) -> IntPoly:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return IntPoly(out)


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return IntPoly(out)


def pow(p: IntPoly, e: int) -> IntPoly:
    """``p**e`` by repeated squaring. ``p**0`` is 1, the zero polynomial included."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result, base = ONE, p
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def divmod_exact_lc(p: IntPoly, q: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder over Z; requires every step's division by lc(q) to be exact."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lq = q.lc
    if len(rem) - 1 < dq:
        return ZERO, p
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        t, r = divmod(c, lq)
        if r:
            raise NonDivisible(f"{to_str(p)} is not divisible by {to_str(q)} over Z")
        quot[i - dq] = t
        for j, qc in enumerate(q.coeffs):
            rem[i - dq + j] -= t * qc
    return IntPoly(quot), IntPoly(rem)


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """Return r with p == q*r, or raise NonDivisible."""
    quot, rem = divmod_exact_lc(p, q)
    if rem:
        raise NonDivisible(
            f"{to_str(p)} is not divisible by {to_str(q)} (remainder {to_str(rem)})"
        )
    return quot


def eval_int(p: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def eval_rational(p: IntPoly, x: Fraction) -> Fraction:
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    n = len(p.coeffs) - 1
    if n < 0:
        return Fraction(0)
    # Homogenised Horner keeps everything in Z until the final division.
    acc = 0
    bpow = 1
    for c in reversed(p.coeffs):
        acc = acc * a + c * bpow
        bpow *= b
    return Fraction(acc, b**n)


def sign_at(p: IntPoly, x: Fraction) -> int:
    """Sign of p(x) without building the Fraction."""
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    for c in reversed(p.coeffs):
        acc = acc * a + c * bpow
        bpow *= b
    return (acc > 0) - (acc < 0)


def derivative(p: IntPoly) -> IntPoly:
    return IntPoly(i * c for i, c in enumerate(p.coeffs) if i)


def content(p: IntPoly) -> int:
    g = 0
    for c in p.coeffs:
        g = _igcd(g, c)
    return g


def primitive(p: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if p.is_zero():
        return p
    c = content(p)
    if p.lc < 0:
        c = -c
    return IntPoly(x // c for x in p.coeffs)


def prem(a: IntPoly, b: IntPoly) -> tuple[IntPoly, int]:
    """Pseudo-remainder of a by b and the multiplier lc(b)**(deg a - deg b + 1)."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.lc
    delta = len(r) - 1 - db
    if delta < 0:
        return a, 1
    for _ in range(delta + 1):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lead = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b.coeffs):
            r[shift + j] -= lead * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return IntPoly(r), lb ** (delta + 1)


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS).

    Integer contents are discarded, so ``gcd(2x, 4x) == x``.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = primitive(p), primitive(q)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r, _ = prem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def is_squarefree(p: IntPoly) -> bool:
    if p.is_zero():
        return False
    return gcd(p, derivative(p)).degree == 0


def to_str(p: IntPoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


def rational_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


# --------------------------------------------------------------------------
# Sturm chains and root isolation
# --------------------------------------------------------------------------


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p'): same distinct roots, all simple."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return p
    return exact_div(p, gcd(p, derivative(p)))


def sturm_chain(p: IntPoly) -> tuple[IntPoly, ...]:
    """Signed remainder sequence p, p', -rem, ... scaled by positive constants."""
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    d = derivative(p)
    if d.is_zero():
        return tuple(chain)
    chain.append(d)
    while True:
        r, mult = prem(chain[-2], chain[-1])
        if r.is_zero():
            break
        if mult < 0:
            r = -r
        c = content(r)
        chain.append(IntPoly(-x // c for x in r.coeffs))
    return tuple(chain)


def _variations(chain: Sequence[IntPoly], x: Fraction) -> int:
    v = 0
    last = 0
    for q in chain:
        s = sign_at(q, x)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _variations_at_minus_infinity(chain: Sequence[IntPoly]) -> int:
    v, last = 0, 0
    for q in chain:
        s = 1 if q.lc > 0 else -1
        if q.degree % 2:
            s = -s
        if last and s != last:
            v += 1
        last = s
    return v


def _variations_at_plus_infinity(chain: Sequence[IntPoly]) -> int:
    v, last = 0, 0
    for q in chain:
        s = 1 if q.lc > 0 else -1
        if last and s != last:
            v += 1
        last = s
    return v


class SturmCounter:
    """Counts distinct real roots of one polynomial on intervals (lo, hi].

    The chain is built from the squarefree part of p, which has the same
    distinct roots. Zero entries are dropped when counting sign variations,
    which makes ``V(lo) - V(hi)`` the root count on the half-open interval
    (lo, hi] even when an endpoint is a root.
    """

    def __init__(self, p: IntPoly):
        self.p = p
        self.chain = sturm_chain(squarefree_part(p))

    def variations(self, x: Fraction) -> int:
        return _variations(self.chain, Fraction(x))

    def count(self, lo: Fraction, hi: Fraction) -> int:
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        return self.variations(lo) - self.variations(hi)

    def count_below(self, x: Fraction) -> int:
        """Roots in (-inf, x]."""
        return _variations_at_minus_infinity(self.chain) - self.variations(x)

    def total(self) -> int:
        return _variations_at_minus_infinity(self.chain) - _variations_at_plus_infinity(
            self.chain
        )


def roots_in(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    return SturmCounter(p).count(Fraction(lo), Fraction(hi))


def sturm_count(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Both endpoints must be non-roots; otherwise EndpointRoot is raised and the
    caller should nudge (see :func:`nudge_off_root`).
    """
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    for end in (lo, hi):
        if sign_at(p, end) == 0:
            raise EndpointRoot(f"{end} is a root of {to_str(p)}")
    return SturmCounter(p).count(lo, hi)


def nudge_off_root(p: IntPoly, x: Fraction, direction: int) -> Fraction:
    """Move x by +-1/2**j (j = 1, 2, ...) until it is not a root of p.

    Each candidate in the sequence is distinct and p has finitely many roots,
    so the loop terminates.
    """
    x = Fraction(x)
    if sign_at(p, x):
        return x
    step = Fraction(1, 2)
    while True:
        y = x + step if direction > 0 else x - step
        if sign_at(p, y):
            return y
        step /= 2


def cauchy_bound(p: IntPoly) -> int:
    """Integer B with every complex root z of p satisfying |z| < B."""
    if p.degree is None or p.degree < 1:
        return 1
    lead = abs(p.lc)
    m = max(abs(c) for c in p.coeffs[:-1])
    return 1 + -(-m // lead)


@dataclass(frozen=True)
class RootInterval:
    """Interval (lo, hi] holding exactly one real root; lo == hi means the root is exact."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("RootInterval needs lo <= hi")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def contains(self, x) -> bool:
        """Closed containment test; accepts floats for reporting-level checks."""
        if isinstance(x, float):
            return float(self.lo) <= x <= float(self.hi)
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def overlaps(self, other: RootInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def disjoint_from(self, other: RootInterval) -> bool:
        return not self.overlaps(other)

    def strictly_above(self, other: RootInterval) -> bool:
        return self.lo > other.hi

    def to_json(self) -> dict:
        return {"lo": rational_to_json(self.lo), "hi": rational_to_json(self.hi)}

    @classmethod
    def from_json(cls, obj: dict) -> RootInterval:
        return cls(rational_from_json(obj["lo"]), rational_from_json(obj["hi"]))


def _finish(counter: SturmCounter, lo: Fraction, hi: Fraction) -> RootInterval:
    if sign_at(counter.p, hi) == 0:
        return RootInterval(hi, hi)
    return RootInterval(lo, hi)


def refine(p: IntPoly, iv: RootInterval, eps: Fraction, counter: SturmCounter | None = None) -> RootInterval:
    """Bisect an isolating interval of p until its width is at most eps."""
    counter = counter or SturmCounter(p)
    lo, hi = iv.lo, iv.hi
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if counter.count(lo, mid):
            hi = mid
        else:
            lo = mid
    return _finish(counter, lo, hi)


def isolate_smallest_root(p: IntPoly, eps: Fraction = DEFAULT_EPS) -> RootInterval:
    """Isolating interval of width <= eps around the smallest real root of p.

    Brackets with the Cauchy bound, then bisects keeping the invariant that
    no root lies at or below ``lo`` and at least one lies in (lo, hi].
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    counter = SturmCounter(p)
    b = cauchy_bound(p)
    lo, hi = Fraction(-b), Fraction(b)
    if counter.count(lo, hi) == 0:
        raise NoRealRoot(f"{to_str(p)} has no real root")
    while hi - lo > eps or counter.count(lo, hi) > 1:
        mid = (lo + hi) / 2
        if counter.count(lo, mid):
            hi = mid
        else:
            lo = mid
    return _finish(counter, lo, hi)


def isolate_real_roots(p: IntPoly, eps: Fraction = DEFAULT_EPS) -> list[RootInterval]:
    """Isolating intervals for every distinct real root of p, ascending."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    counter = SturmCounter(p)
    b = cauchy_bound(p)
    out: list[RootInterval] = []
    stack = [(Fraction(-b), Fraction(b))]
    while stack:
        lo, hi = stack.pop()
        n = counter.count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(refine(p, RootInterval(lo, hi), eps, counter))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda iv: iv.lo)
    return out


def root_multiplicity(p: IntPoly, iv: RootInterval) -> int:
    """Multiplicity of the unique root of p isolated by iv.

    Repeated gcd with the derivative strips one multiplicity per step; the root
    survives in the k-th gcd iff its multiplicity exceeds k.
    """
    mult = 1
    q = p
    while True:
        q = gcd(q, derivative(q))
        if q.degree == 0:
            return mult
        if iv.is_exact:
            present = sign_at(q, iv.lo) == 0
        else:
            present = SturmCounter(q).count(iv.lo, iv.hi) > 0
        if not present:
            return mult
        mult += 1
