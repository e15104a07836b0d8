"""Acceptance criteria, one test each. Every test prints a single
``criterion N: PASS|FAIL`` line regardless of pytest's output capture."""

import random
import time

import pytest

from conftest import CORPUS, load, m1, m2
from oracles import dfa_isomorphic, find_renaming, random_dfa
from stralg.automaton import enumerate_linguage, linguage_flags, make_dfa, trim_good
from stralg.exceptional import (LEFT, SOURCE, decide_exceptional, exceptional_by_simulation,
                                exceptional_report)
from stralg.hammock import build_hammock_automaton
from stralg.regular_orders import (OMEGA, OMEGA_STAR, ONE, ZERO, OmegaProd, OmegaStarProd,
                                   Shuffle, Sum, format_term, normalize, predicates, term_size,
                                   term_to_automaton)
from stralg.strings import enumerate_hl_naive, short_universe, sign_sequence
from stralg.word_problems import (STAR, automaton_to_word_problem, parse_word_problem,
                                  quasi_rational, solve)
from test_word_problems import GP23_SYSTEM, corpus_systems, expansion_checks


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}")
        assert ok, detail
    return emit


REFERENCE = make_dfa(
    [("1", "0", "a"), ("1", "1", "b-"), ("a", "1", "b-a"), ("b-", "0", "ab-"),
     ("b-", "1", "b-b-"), ("b-b-", "0", "ab-"), ("ab-", "1", "b-a"), ("b-a", "0", "ab-"),
     ("b-a", "1", "b-b-")],
    "1", ["1", "a", "b-", "b-a", "ab-", "b-b-"])


def test_criterion_1_gp23_table(gp23, report):
    h = build_hammock_automaton(gp23, ("v", 1))
    table = {(q.replace("1_(v,+1)", "1"), c, q2) for q, c, q2 in h.dfa.transitions()}
    ok = dfa_isomorphic(h.dfa, REFERENCE) and table == set(REFERENCE.transitions())
    report(1, ok, f"{len(h.dfa.states)} states, {len(table)} transitions")


def test_criterion_2_oracle_equivalence(report):
    t0 = time.perf_counter()
    ok = True
    for name in ("gp23", "loop_a2", "kronecker"):
        p = load(name)
        for v in p.vertices:
            dfa = build_hammock_automaton(p, (v, 1)).dfa
            for n in range(9):
                ok &= enumerate_linguage(dfa, n) == [sign_sequence(x)
                                                     for x in enumerate_hl_naive(p, v, n)]
    elapsed = time.perf_counter() - t0
    report(2, ok and elapsed < 5, f"{elapsed:.2f} s")


def test_criterion_3_gamma(gp23, report):
    w = automaton_to_word_problem(build_hammock_automaton(gp23, ("v", 1)).dfa)
    ren = find_renaming(dict(w.rhs), GP23_SYSTEM)
    report(3, ren is not None and ren[w.start] == "w", f"renaming {ren}")


def test_criterion_4_solver(report):
    def start_term(w):
        return solve(w)[w.start]
    a = format_term(start_term(parse_word_problem("u = * u *")))
    b = format_term(start_term(parse_word_problem("u = * u * * u *")))
    c = format_term(start_term(automaton_to_word_problem(m1())))
    d = predicates(start_term(automaton_to_word_problem(m2()))).is_eta
    ok = (a, b, c, d) == ("w + w*", "w + sh(w* + w) + w*", "w*", True)
    report(4, ok, f"{a} | {b} | {c} | eta={d}")


def test_criterion_5_scatteredness(report):
    rng = random.Random(20240501)
    done = bad = 0
    while done < 200:
        m = trim_good(random_dfa(rng, 6))
        if m.is_empty:
            continue
        done += 1
        w = automaton_to_word_problem(m)
        s1 = linguage_flags(m).scattered
        s2 = quasi_rational(w)
        s3 = predicates(solve(w)[w.start]).scattered
        bad += not (s1 == s2 == s3)
    report(5, bad == 0, f"{done} automata, {bad} disagreements")


def random_term(rng, budget):
    if budget <= 1:
        return rng.choice([ZERO, ONE, OMEGA, OMEGA_STAR])
    kind = rng.randrange(5)
    if kind == 0:
        return rng.choice([ZERO, ONE, OMEGA, OMEGA_STAR])
    if kind == 1:
        k = rng.randint(2, 3)
        return Sum(tuple(random_term(rng, (budget - 1) // k) for _ in range(k)))
    if kind == 2:
        return OmegaProd(random_term(rng, budget - 1))
    if kind == 3:
        return OmegaStarProd(random_term(rng, budget - 1))
    k = rng.randint(1, 2)
    return Shuffle(tuple(random_term(rng, (budget - 1) // k) for _ in range(k)))


def test_criterion_6_round_trip(report):
    rng = random.Random(7)
    seen = bad = 0
    while seen < 100:
        t = normalize(random_term(rng, 8))
        if term_size(t) > 8:
            continue
        seen += 1
        q = predicates(t)
        m = term_to_automaton(t)
        f = linguage_flags(m)
        ok = (f.empty, f.finite, f.scattered) == (q.empty, q.finite, q.scattered)
        if not q.empty:
            w = automaton_to_word_problem(m)
            s = predicates(solve(w)[w.start])
            ok &= (s.empty, s.finite, s.cardinality, s.scattered, s.has_least,
                   s.has_greatest) == (q.empty, q.finite, q.cardinality, q.scattered,
                                       q.has_least, q.has_greatest)
        bad += not ok
    report(6, bad == 0, f"{seen} terms, {bad} disagreements")


def test_criterion_7_bounded_expansion(report):
    checked = bad = 0
    for w in corpus_systems():
        sol = solve(w)
        for u in w.unknowns:
            checked += 1
            bad += not expansion_checks(w, u, sol[u], depth=6)
    report(7, bad == 0, f"{checked} unknowns, {bad} failures")


def test_criterion_8_exceptional(report):
    gp23, kron = load("gp23"), load("kronecker")
    r1 = exceptional_report(gp23)
    r2 = exceptional_report(kron)
    both = all(pt.left_exceptional and pt.right_exceptional for pt in r2.points)
    agree = all({(pt.vertex, pt.cyclic_word, pt.left_exceptional, pt.right_exceptional)
                 for pt in exceptional_report(load(n)).points} == exceptional_by_simulation(load(n))
                for n in CORPUS)
    src = exceptional_report(gp23, d_orientation=SOURCE)
    rejected = bool(src.rejected) and all(not decide_exceptional(gp23, v, b, s)
                                          for v, s, b in src.rejected)
    ok = r1.e == 0 and r2.e == 2 and both and agree and rejected
    report(8, ok, f"e(GP23)={r1.e}, e(Kronecker)={r2.e}, routes agree={agree}, "
                  f"source-coupled rejections={len(src.rejected)}")


def test_criterion_9_bounds(report):
    lines, ok = [], True
    for name in CORPUS:
        p = load(name)
        if not p.relations:
            continue
        n = len(short_universe(p).members)
        ub = len(p.vertices) * (2 ** (p.r + 2) - 1)
        e = exceptional_report(p).e
        eb = len(p.vertices) * (2 ** (p.r + 3) - 2)
        ok &= n <= ub and e < eb
        lines.append(f"{name}: {n} <= {ub}, {e} < {eb}")
    report(9, ok, "; ".join(lines))


def test_criterion_10_out_of_scope(capsys):
    # Quantitative results about module categories need machinery this
    # package does not provide; the property suites above are the stand-in.
    with capsys.disabled():
        print("\ncriterion 10: N/A  not reproducible here by design, no numeric check")
    pytest.skip("not reproducible by design")
