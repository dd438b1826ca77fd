"""Acceptance criteria 1 to 8, exact and with zero tolerance.

Each criterion is one test; the conftest hook prints a PASS/FAIL line per
criterion after the run.  Each test also prints its own verdict line, which
shows up with ``pytest -s``.
"""
import random
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from nichols.braiding import diagram_of
from nichols.cartan import cartan_row
from nichols.cartan_graph import exchange_graph, verify_axioms
from nichols.classification import (
    BadParameter,
    instantiate_row,
    load_appendix,
    load_exchange_fixtures,
    load_impossible_families,
    parse_root_notation,
    point_classes,
    root_set_permutations,
    verify_row,
)
from nichols.neighborhoods import good_neighborhood, goodnei_exists
from nichols.reflection import reflect_diagram, reflect_matrix, s_map

import pytest

from _support import (
    ROWS,
    impossible_hits,
    impossible_pairs,
    q_integer_disagreements,
    random_braiding,
    row_diagrams,
    row_graph,
)

APPENDIX = load_appendix()
RANK5, RANK6, RANK7 = (11, 12, 13, 14, 15), (17, 18, 19), (21,)


def verdict(n, problems):
    print(f"criterion {n}: {'PASS' if not problems else 'FAIL'}")
    for p in problems:
        print(f"  {p}")
    assert problems == []


def test_criterion_1_positive_root_counts():
    problems = []
    allowed = {5: {25, 30, 33, 41, 46, 49}, 6: {46, 63, 68}, 7: {91}}
    realized = set()
    for rid in RANK5 + RANK6 + RANK7:
        g, rs = row_graph(rid)
        n = len(rs.positive(g.base))
        if n not in allowed[g.theta]:
            problems.append(f"row {rid}: {n} positive roots")
        realized.add((g.theta, n))
    wanted = {(rl.theta, rl.count) for rl in APPENDIX.values()}
    for theta, n in sorted(wanted - realized):
        label = next(l for l, rl in APPENDIX.items() if (rl.theta, rl.count) == (theta, n))
        problems.append(f"{label} ({n} roots, rank {theta}) realized by no row")
    verdict(1, problems)


def _base_point_matches(rid):
    g, rs = row_graph(rid)
    pos = rs.positive(g.base)
    return {
        label: perms
        for label, rl in APPENDIX.items()
        if rl.theta == g.theta
        for perms in [root_set_permutations(pos, rl.roots, g.theta, first_only=True)]
        if perms
    }


def test_criterion_2_root_multisets_at_the_base_point():
    problems = []
    for rid in sorted(ROWS):
        hits = _base_point_matches(rid)
        if len(hits) != 1:
            problems.append(f"row {rid}: base point matches {sorted(hits) or 'no list'}")
    target = parse_root_notation("1^{5}2^{4}3^{3}4^{4}5^{2}6^{3}7^{2}", 7)
    hits = _base_point_matches(21)
    if not any(target in APPENDIX[label].roots for label in hits):
        problems.append("row 21: no base-point match contains 1^{5}2^{4}3^{3}4^{4}5^{2}6^{3}7^{2}")
    verdict(2, problems)


def test_criterion_3_exchange_graphs():
    problems = []
    fixtures = load_exchange_fixtures()
    expected = {11: 6, 15: 7, 17: 7, 21: 8}
    for rid in sorted(ROWS):
        g, _ = row_graph(rid)
        fx = fixtures[rid]
        n = len(exchange_graph(g).vertices)
        if n != len(fx.nodes) or n != expected.get(rid, n):
            problems.append(f"row {rid}: {n} vertices, table has {len(fx.nodes)}")
        diagrams = row_diagrams(rid)
        classes = point_classes(g, diagrams)
        if None in classes or set(classes) != set(range(len(diagrams))):
            problems.append(f"row {rid}: point classes {classes}")
        computed = Counter(c + 1 for c in classes if c is not None)
        drawn = Counter(k for _, k in fx.nodes)
        if computed != drawn:
            problems.append(f"row {rid}: classes {dict(computed)} vs table {dict(drawn)}")
    verdict(3, problems)


def test_criterion_4_good_neighborhoods():
    problems = []
    for rid in sorted(ROWS):
        g, _ = row_graph(rid)
        if goodnei_exists(g) is None:
            problems.append(f"row {rid}: no point has a good neighborhood")
    g, _ = row_graph(11)
    params = {w.params for x in range(len(g.points)) for w in [good_neighborhood(g, x)] if w}
    if (1, 1, 0, 0, 1) not in params:
        problems.append(f"row 11: witness parameters {params}")
    verdict(4, problems)


def test_criterion_5_impossible_families():
    problems = []
    for fam in load_impossible_families():
        for q_order, p in impossible_pairs(fam):
            hits = impossible_hits(fam.rank, fam.name, q_order, p)
            if hits:
                x, w = hits[0]
                problems.append(f"{fam.rank}{fam.name} q of order {q_order}, p={p}: P{x} {w}")
    verdict(5, problems)


def _axiom_problems():
    problems = []
    for rid in sorted(ROWS):
        g, rs = row_graph(rid)
        rep = verify_axioms(g, rs)
        problems.extend(f"row {rid}: {k}: {v[:2]}" for k, v in rep.failures().items())
    return problems


@settings(max_examples=150, deadline=None, derandomize=True)
@given(st.sampled_from(sorted(ROWS)), st.integers(0, 10_000), st.integers(0, 6))
def _check_random_point(rid, x, i):
    g, rs = row_graph(rid)
    x %= len(g.points)
    i %= g.theta
    y = g.r(x, i)
    assert g.r(y, i) == x
    a = g.cartan_at(x)
    assert g.cartan_at(y).a[i] == a.a[i]
    assert {s_map(a, i, v) for v in rs.roots[x]} == set(rs.roots[y])
    assert len(rs.positive(x)) == len(rs.positive(g.base))


def test_criterion_6_axiom_suite():
    problems = _axiom_problems()
    try:
        _check_random_point()
    except AssertionError as exc:
        problems.append(f"random point check: {exc}")
    verdict(6, problems)


def test_criterion_7_oracle_cross_checks():
    problems = []
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        m = random_braiding(rng)
        i = rng.randrange(m.theta)
        d = diagram_of(m)
        cartan_row(d, i)  # i-finite; raises otherwise
        if diagram_of(reflect_matrix(m, i)) != reflect_diagram(d, i):
            problems.append(f"reflection disagreement at {i} on {m}")
        checked += 1
    for p in (0, 2, 3, 5, 7):
        bad = q_integer_disagreements(p)
        problems.extend(f"q-integer p={p}: (N, e, n) = {t}" for t in bad[:3])
    verdict(7, problems)


def test_criterion_8_characteristic_sensitivity():
    problems = []
    for rid, row in sorted(ROWS.items()):
        try:
            instantiate_row(row, row.char_excluded)
            problems.append(f"row {rid}: p={row.char_excluded} accepted")
        except BadParameter:
            pass
    if not verify_row(ROWS[19], 3).passed:
        problems.append("row 19 fails at p=3")
    a, b = verify_row(ROWS[11], 7), verify_row(ROWS[11], 13)
    if not (a.passed and b.passed):
        problems.append("row 11 fails at p=7 or p=13")
    da, db = a.to_dict(), b.to_dict()
    for k in ("p", "N"):
        da.pop(k), db.pop(k)
    if da != db:
        problems.append(f"row 11 reports differ: {sorted(k for k in da if da[k] != db[k])}")
    verdict(8, problems)
