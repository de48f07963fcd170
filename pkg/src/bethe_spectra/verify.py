"""Randomised cross-checks of the closed forms against explicit graphs.

Each check returns None on success or a short failure message. The runner
stops at the first failure and reports a reproducer.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bethe, graphs, oracle, poly, schwenk
from .bethe import LAMBDA_PLUS_2, DegreeSequence
from .schwenk import RootedCharPair

log = logging.getLogger(__name__)

NUMERIC_TOL = 1e-9


@dataclass
class Failure:
    check: str
    message: str
    reproducer: str


@dataclass
class VerifyReport:
    seed: int
    trials: int
    checks_run: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def random_degree_sequence(rng: random.Random, max_size: int) -> DegreeSequence:
    """Random valid sequence whose line graph has at most max_size vertices."""
    while True:
        k = rng.randint(2, 5)
        mid = tuple(rng.randint(2, 5) for _ in range(k - 2))
        d = DegreeSequence((1,) + mid + (rng.randint(1, 6),))
        if 1 <= bethe.level_multiplicities(d).edge_count <= max_size:
            return d


def _describe_mismatch(ours: poly.IntPoly, theirs: poly.IntPoly) -> str:
    if ours.degree != theirs.degree:
        return f"degree {ours.degree} vs {theirs.degree}"
    i = next(i for i, (a, b) in enumerate(zip(ours.coeffs, theirs.coeffs)) if a != b)
    return f"coefficient of x^{i}: {ours.coeffs[i]} vs {theirs.coeffs[i]}"


def _corrupt_sigma(fcp: bethe.FactoredCharPoly) -> bethe.FactoredCharPoly:
    factors = list(fcp.factors)
    f, e = factors[0]
    factors[0] = (f, e + 1)
    return bethe.FactoredCharPoly(fcp.degrees, tuple(factors), fcp.divisor)


def degree_sequence_checks(
    d: DegreeSequence, inject_fault: str | None = None
) -> list[tuple[str, Callable[[], str | None]]]:
    """Named checks for one degree sequence, in execution order."""
    k = d.k
    g = bethe.g_polynomials(d)
    lm = bethe.level_multiplicities(d)
    tree = graphs.build_bethe_tree(d)
    lg = graphs.line_graph(tree.graph)

    def charpoly():
        fcp = bethe.char_poly_factored(d)
        if inject_fault == "sigma":
            fcp = _corrupt_sigma(fcp)
        try:
            ours = fcp.expand()
        except poly.NonDivisible as exc:
            return f"factored form not divisible by lambda+2: {exc}"
        theirs = oracle.graph_char_poly(lg)
        if ours != theirs:
            return "closed form disagrees with oracle: " + _describe_mismatch(ours, theirs)
        return None

    def bookkeeping():
        total = sum(l * lm.sigma[l] for l in range(1, k + 1)) - 1
        if not (total == lm.edge_count == tree.graph.m == lg.n):
            return f"degree count {total}, edges {tree.graph.m}, sum m_l {lm.edge_count}"
        degs = tree.graph.degrees()
        for v, lev in enumerate(graphs.bfs_levels(tree.graph, tree.root)):
            if degs[v] != d[k - lev + 1]:
                return f"vertex {v} at level {lev} has degree {degs[v]}"
        return None

    def divisibility():
        try:
            poly.exact_div(g[k], LAMBDA_PLUS_2)
            for i in range(1, k):
                poly.exact_div(g[i] + g[i - 1], LAMBDA_PLUS_2)
        except poly.NonDivisible as exc:
            return str(exc)
        return None

    def critical():
        if bethe.critical_factor(d) != LAMBDA_PLUS_2 * g[k - 1]:
            return "g_k + d_k(g_(k-1) + g_(k-2)) != (lambda+2) g_(k-1)"
        return None

    def simple():
        return None if bethe.verify_simple_zeros(d) else "some g_i has a repeated zero"

    def interlacing():
        try:
            bethe.verify_interlacing(d)
        except bethe.InterlacingViolation as exc:
            return str(exc)
        return None

    def multiplicity():
        if d.dk < 2:
            return None
        try:
            mult = bethe.smallest_eigenvalue_multiplicity(d)
        except bethe.MultiplicityMismatch as exc:
            return str(exc)
        iv = bethe.smallest_eigenvalue(d)
        eigs = oracle.graph_eigenvalues(lg)
        if abs(eigs[0] - float(iv)) > NUMERIC_TOL:
            return f"numeric lambda_min {eigs[0]} vs {float(iv)}"
        num_mult = oracle.min_multiplicity(eigs, 1e-7)
        if num_mult != mult:
            return f"numeric multiplicity {num_mult} vs {mult}"
        return None

    return [
        ("charpoly", charpoly),
        ("bookkeeping", bookkeeping),
        ("divisibility", divisibility),
        ("critical-factor", critical),
        ("simple-zeros", simple),
        ("interlacing", interlacing),
        ("multiplicity", multiplicity),
    ]


def schwenk_checks(h: graphs.RootedGraph, s: int) -> list[tuple[str, Callable[[], str | None]]]:
    """Composition formulas against explicitly glued graphs."""
    pair = RootedCharPair.from_graph(h)
    ks = graphs.complete_graph(s)

    def coalesce():
        g = graphs.RootedGraph(graphs.path_graph(s), 0)
        gp = RootedCharPair.from_graph(g)
        want = oracle.graph_char_poly(graphs.coalesce_graphs(g, h).graph)
        if schwenk.coalesce(gp, pair) != want or schwenk.coalesce(pair, gp) != want:
            return "coalesce formula disagrees with the glued graph"
        return None

    def attach_all():
        g0 = graphs.path_graph(s)
        got = schwenk.attach_to_all(oracle.graph_char_poly(g0), s, pair)
        if got != oracle.graph_char_poly(graphs.attach_to_all_graph(g0, h)):
            return "attach_to_all disagrees with the glued graph"
        return None

    def complete():
        got = schwenk.expand_factors(schwenk.attach_complete(pair, s))
        if got != oracle.graph_char_poly(graphs.attach_to_all_graph(ks, h)):
            return "attach_complete disagrees with the glued graph"
        return None

    def complete_minus_one():
        got = schwenk.expand_factors(schwenk.attach_complete_minus_one(pair, s))
        want = oracle.graph_char_poly(graphs.attach_at(ks, h, range(1, s)))
        if got != want:
            return "attach_complete_minus_one disagrees with the glued graph"
        if schwenk.attach_complete_minus_one_via_coalesce(pair, s) != want:
            return "coalescence route to the all-but-one attachment disagrees"
        return None

    return [
        ("schwenk-coalesce", coalesce),
        ("schwenk-attach-all", attach_all),
        ("schwenk-complete", complete),
        ("schwenk-complete-minus-one", complete_minus_one),
    ]


def run_verify(
    seed: int = 0,
    trials: int = 200,
    max_size: int = 500,
    inject_fault: str | None = None,
) -> VerifyReport:
    if max_size > 500:
        raise ValueError("max_size is capped at 500")
    report = VerifyReport(seed=seed, trials=trials)
    if trials == 0:
        log.warning("trials = 0: nothing checked, vacuous pass")
        return report
    rng = random.Random(seed)
    for t in range(trials):
        d = random_degree_sequence(rng, max_size)
        h = graphs.random_rooted_tree(10, rng)
        s = rng.randint(2, 4)
        repro_d = f"--degrees {d}"
        repro_h = f"H edges {list(h.graph.edges)} root {h.root}, s={s}"
        for name, fn in degree_sequence_checks(d, inject_fault):
            report.checks_run += 1
            msg = fn()
            if msg:
                report.failures.append(Failure(name, msg, f"trial {t}: {repro_d}"))
                return report
        for name, fn in schwenk_checks(h, s):
            report.checks_run += 1
            msg = fn()
            if msg:
                report.failures.append(Failure(name, msg, f"trial {t}: {repro_h}"))
                return report
    return report


def graph_consistency(g: graphs.Graph, tol: float = 1e-9) -> list[str]:
    """Exact versus numeric spectrum of an arbitrary graph; returns problems found."""
    problems = []
    chi = oracle.graph_char_poly(g)
    eigs = oracle.graph_eigenvalues(g, tol)
    if abs(sum(eigs)) > g.n * tol:
        problems.append(f"trace check failed: sum of eigenvalues {sum(eigs)}")
    # One cluster of numerically equal eigenvalues per cut interval; each
    # must hold exactly one distinct exact root.
    clusters = [[eigs[0]]]
    for x in eigs[1:]:
        if x - clusters[-1][-1] > 1e-6:
            clusters.append([x])
        else:
            clusters[-1].append(x)
    cuts = [Fraction(clusters[0][0] - 1)]
    for a, b in zip(clusters, clusters[1:]):
        cuts.append(Fraction((a[-1] + b[0]) / 2))
    cuts.append(Fraction(clusters[-1][-1] + 1))
    counter = poly.SturmCounter(chi)
    for (lo, hi), cl in zip(zip(cuts, cuts[1:]), clusters):
        if counter.count(lo, hi) != 1:
            problems.append(f"cluster near {cl[0]:.9f}: {counter.count(lo, hi)} distinct exact roots")
    if sum(counter.count(lo, hi) for lo, hi in zip(cuts, cuts[1:])) != counter.total():
        problems.append("exact roots outside the numeric spectrum")
    return problems
