"""Acceptance criteria, one test group per criterion.

Test names start with ``test_criterion_NN_``; the summary hook in conftest.py
folds their outcomes into one PASS/FAIL line per criterion.
"""
import itertools
import random
from decimal import Decimal, localcontext

import pytest

from bethe_spectra import bethe, graphs, oracle, poly, verify
from bethe_spectra.bethe import LAMBDA_PLUS_2
from bethe_spectra.bethe import DegreeSequence as D
from bethe_spectra.cli import corona_check, fixed_string
from bethe_spectra.schwenk import RootedCharPair


def _corpus():
    out = []
    for k in range(2, 6):
        for mid in itertools.product((2, 3, 4), repeat=k - 2):
            for dk in range(1, 6):
                d = D((1,) + mid + (dk,))
                if bethe.level_multiplicities(d).edge_count <= 500:
                    out.append(d)
    return out


CORPUS = _corpus()


def _line_graph(d):
    return graphs.line_graph(graphs.build_bethe_tree(d).graph)


def _random_sequences(count, seed):
    rng = random.Random(seed)
    return [verify.random_degree_sequence(rng, 500) for _ in range(count)]


RANDOM_50 = _random_sequences(50, seed=2024)


def _decimal_12(x: Decimal) -> str:
    return f"{x:.12f}"


with localcontext() as _ctx:
    _ctx.prec = 50
    GOLDEN_12 = _decimal_12((-1 - Decimal(5).sqrt()) / 2)
    SQRT3_12 = _decimal_12(-Decimal(3).sqrt())


# 1 ----------------------------------------------------------------------


def test_criterion_01_corpus_shape():
    assert len(CORPUS) == 200
    assert max(bethe.level_multiplicities(d).edge_count for d in CORPUS) <= 500


@pytest.mark.parametrize("d", CORPUS, ids=str)
def test_criterion_01_factorization_identity(d):
    assert bethe.char_poly_expanded(d) == oracle.graph_char_poly(_line_graph(d))


# 2 ----------------------------------------------------------------------

PREFIXES = [
    (1, 2), (1, 3), (1, 4), (1, 5),
    (1, 2, 2), (1, 2, 3), (1, 3, 2), (1, 3, 3), (1, 4, 2), (1, 4, 3),
    (1, 3, 4), (1, 2, 4), (1, 2, 2, 2), (1, 3, 2, 2), (1, 2, 3, 2),
    (1, 3, 3, 3), (1, 4, 2, 3), (1, 2, 4, 3), (1, 3, 2, 4), (1, 4, 4, 4),
]


@pytest.mark.parametrize("prefix", PREFIXES, ids=lambda p: ",".join(map(str, p)))
def test_criterion_02_constancy(prefix):
    gs = {bethe.g_polynomials(D(prefix + (dk,)))[len(prefix) - 1] for dk in range(2, 7)}
    assert len(gs) == 1
    mins = [oracle.graph_eigenvalues(_line_graph(D(prefix + (dk,))))[0] for dk in range(2, 7)]
    assert max(mins) - min(mins) < 1e-9


# 3 ----------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 7))
def test_criterion_03_multiplicity(n):
    d = D((1, 3, n))
    eigs = oracle.graph_eigenvalues(_line_graph(d))
    assert sum(1 for x in eigs if abs(x - -1.732050807569) < 1e-9) == n - 1
    assert bethe.level_multiplicities(d).sigma[d.k - 1] == n - 1
    g = bethe.g_polynomials(d)
    iv = bethe.smallest_eigenvalue(d)
    assert poly.SturmCounter(g[d.k - 1]).count(iv.lo, iv.hi) == 1
    for q in [poly.exact_div(g[d.k], LAMBDA_PLUS_2)] + list(g[1 : d.k - 1]):
        assert poly.SturmCounter(q).count(iv.lo, iv.hi) == 0
    assert bethe.smallest_eigenvalue_multiplicity(d) == n - 1


# 4 ----------------------------------------------------------------------


@pytest.mark.parametrize("d", RANDOM_50, ids=str)
def test_criterion_04_interlacing(d):
    res = bethe.verify_interlacing(d)
    gammas = res.gammas
    assert len(gammas) == d.k
    for a, b in zip(gammas, gammas[1:]):
        assert a.disjoint_from(b) and a.strictly_above(b)
    assert gammas[-1].is_exact and gammas[-1].lo == -2
    assert res.beta.strictly_above(gammas[d.k - 2])


# 5 ----------------------------------------------------------------------


@pytest.mark.parametrize("d", RANDOM_50, ids=str)
def test_criterion_05_simple_zeros(d):
    for gi in bethe.g_polynomials(d)[1:]:
        assert poly.gcd(gi, poly.derivative(gi)).degree == 0


# 6 ----------------------------------------------------------------------


def test_criterion_06_divisibility():
    errors = []
    for d in CORPUS:
        g = bethe.g_polynomials(d)
        try:
            poly.exact_div(g[d.k], LAMBDA_PLUS_2)
            for i in range(1, d.k):
                poly.exact_div(g[i] + g[i - 1], LAMBDA_PLUS_2)
        except poly.NonDivisible as exc:
            errors.append(f"{d}: {exc}")
    assert errors == []


# 7 ----------------------------------------------------------------------


def _schwenk_cases():
    rng = random.Random(7)
    return [(graphs.random_rooted_tree(10, rng), rng.choice((2, 3, 4))) for _ in range(100)]


@pytest.mark.parametrize("h, s", _schwenk_cases(), ids=lambda x: None)
def test_criterion_07_schwenk(h, s):
    assert h.graph.n <= 10
    for name, check in verify.schwenk_checks(h, s):
        assert check() is None, name


# 8 ----------------------------------------------------------------------


def test_criterion_08_critical_factor():
    bad = [
        str(d) for d in CORPUS
        if bethe.critical_factor(d) != LAMBDA_PLUS_2 * bethe.g_polynomials(d)[d.k - 1]
    ]
    assert bad == []


# 9 ----------------------------------------------------------------------


def _dk1_pairs():
    rng = random.Random(9)
    pairs = []
    while len(pairs) < 20:
        k = rng.randint(3, 5)
        mid = [rng.randint(2, 5) for _ in range(k - 2)]
        alt = rng.randint(2, 6)
        if alt == mid[-1]:
            continue
        pairs.append((D((1, *mid, rng.randint(2, 5))), alt))
    return pairs


@pytest.mark.parametrize("d, alt", _dk1_pairs(), ids=lambda x: str(x))
def test_criterion_09_dk1_dependence(d, alt):
    assert bethe.verify_dk1_dependence(d, alt) is True
    other = d.replace(d.k - 1, alt)
    assert bethe.smallest_eigenvalue(d).disjoint_from(bethe.smallest_eigenvalue(other))


# 10 ---------------------------------------------------------------------


def test_criterion_10_corona_consistency(record_property):
    verdicts = {}
    for n in range(1, 5):
        for q in range(2, 5):
            verdicts[(n, q)] = tuple(corona_check(n, q)["matching"])
    distinct = set(verdicts.values())
    assert len(distinct) == 1, verdicts
    (verdict,) = distinct
    assert verdict, "no corona convention matched"
    record_property("corona_verdict", ", ".join(verdict))


# 11 ---------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 7))
def test_criterion_11_named_constants(n):
    iv = bethe.smallest_eigenvalue(D((1, 2, n)))
    lo, hi = 2 * iv.lo + 1, 2 * iv.hi + 1  # maps (-1 - sqrt 5) / 2 to -sqrt 5
    assert hi < 0 and lo**2 > 5 >= hi**2
    assert fixed_string(iv.midpoint) == GOLDEN_12 == "-1.618033988750"

    iv = bethe.smallest_eigenvalue(D((1, 3, n)))
    assert iv.hi < 0 and iv.lo**2 > 3 >= iv.hi**2
    assert fixed_string(iv.midpoint) == SQRT3_12 == "-1.732050807569"

    eigs = oracle.graph_eigenvalues(_line_graph(D((1, 3, n))))
    assert abs(eigs[0] - float(SQRT3_12)) < 1e-11


def test_criterion_11_via_rooted_pair():
    # same constants from chi_H + chi_(H-e) of the capped line graphs
    for prefix, text in (((1, 2), GOLDEN_12), ((1, 3), SQRT3_12)):
        pair = RootedCharPair.from_graph(graphs.rooted_line_graph_of_capped_tree(prefix))
        iv = poly.isolate_smallest_root(pair.chi + pair.chi_minus_root)
        assert fixed_string(iv.midpoint) == text
