"""Characteristic polynomials of rooted compositions, computed from the
characteristic polynomials of the pieces.

Everything here consumes polynomial pairs (chi_H, chi_{H-v}); the pairs may
come from explicit graphs through the oracle or from closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import poly
from .poly import IntPoly


@dataclass(frozen=True)
class RootedCharPair:
    chi: IntPoly  # chi_H
    chi_minus_root: IntPoly  # chi_{H - v}

    def __post_init__(self):
        if not (self.chi.is_monic() and self.chi_minus_root.is_monic()):
            raise ValueError("characteristic polynomials must be monic")
        if self.chi.degree != self.chi_minus_root.degree + 1:
            raise ValueError("deg chi_H must be deg chi_(H-v) + 1")

    @property
    def order(self) -> int:
        return self.chi.degree

    @classmethod
    def from_graph(cls, rooted) -> RootedCharPair:
        from .oracle import graph_char_poly

        return cls(graph_char_poly(rooted.graph), graph_char_poly(rooted.minus_root()))

    @classmethod
    def single_vertex(cls) -> RootedCharPair:
        return cls(poly.X, poly.ONE)


def coalesce(g: RootedCharPair, h: RootedCharPair) -> IntPoly:
    """chi of G . H (roots identified)."""
    return (
        g.chi_minus_root * h.chi
        + g.chi * h.chi_minus_root
        - poly.X * g.chi_minus_root * h.chi_minus_root
    )


def attach_to_all(chi_g0: IntPoly, p: int, h: RootedCharPair) -> IntPoly:
    """chi of G0 with a copy of H glued at every vertex.

    chi_{H-v}^p * chi_G0(chi_H / chi_{H-v}) with denominators cleared:
    sum_j c_j chi_H^j chi_{H-v}^(p-j).
    """
    if chi_g0.degree != p:
        raise ValueError("chi_G0 must have degree p")
    a, b = h.chi, h.chi_minus_root
    a_pows = [poly.ONE]
    b_pows = [poly.ONE]
    for _ in range(p):
        a_pows.append(a_pows[-1] * a)
        b_pows.append(b_pows[-1] * b)
    out = poly.ZERO
    for j, c in enumerate(chi_g0.coeffs):
        if c:
            out = out + a_pows[j] * b_pows[p - j] * c
    return out


def complete_graph_char_poly(s: int) -> IntPoly:
    """(x - s + 1)(x + 1)^(s - 1)."""
    return IntPoly.linear(1, 1 - s) * poly.pow(IntPoly.linear(1, 1), s - 1)


def attach_complete(h: RootedCharPair, s: int) -> tuple[IntPoly, IntPoly, int]:
    """H glued at every vertex of K_s, as (factor_a, factor_b, exponent_b).

    chi_G = factor_a * factor_b ** exponent_b.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    a, b = h.chi, h.chi_minus_root
    return a - b * (s - 1), a + b, s - 1


def attach_complete_minus_one(h: RootedCharPair, s: int) -> tuple[IntPoly, IntPoly, int]:
    """H glued at all but one vertex of K_s. For s == 2 the exponent is 0."""
    if s < 2:
        raise ValueError("s must be >= 2")
    a, b = h.chi, h.chi_minus_root
    factor_a = poly.X * a - IntPoly.linear(s - 2, s - 1) * b
    return factor_a, a + b, s - 2


def expand_factors(factors: tuple[IntPoly, IntPoly, int]) -> IntPoly:
    fa, fb, e = factors
    return fa * poly.pow(fb, e)


def attach_complete_minus_one_via_coalesce(h: RootedCharPair, s: int) -> IntPoly:
    """Same polynomial as attach_complete_minus_one, rebuilt from attach_complete.

    With G rooted at the bare vertex u0 of K_s: G . H is H on all of K_s and
    G - u0 is H on all of K_{s-1}, so coalescence can be solved for chi_G.
    """
    a, b = h.chi, h.chi_minus_root
    full = expand_factors(attach_complete(h, s))
    if s - 1 >= 2:
        minus_u0 = expand_factors(attach_complete(h, s - 1))
    else:
        minus_u0 = a  # K_1 with H attached is H itself
    return poly.exact_div(full + (poly.X * b - a) * minus_u0, b)
