import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nichols.braiding import diagram_iso
from nichols.classification import (
    CHECKS,
    BadParameter,
    ParseError,
    RootList,
    emit_root,
    instantiate_row,
    load_appendix,
    load_exchange_fixtures,
    load_impossible_families,
    parse_appendix,
    parse_root_notation,
    root_set_permutations,
    verify_all,
    verify_row,
)
from nichols.cyclotomic import Ambient

from _support import ROWS, row_graph

APPENDIX = load_appendix()
HEADER_COUNTS = {
    "A.Nr1": 25, "A.Nr2": 30, "A.Nr3": 33, "A.Nr4": 41, "A.Nr5": 46, "A.Nr6": 49,
    "B.Nr2": 46, "B.Nr3": 63, "B.Nr4": 68,
    "C.Nr2": 91,
}


@pytest.fixture(scope="module")
def full_report():
    return verify_all()


# ---------------------------------------------------------------- instantiation


def test_row11_instantiates_four_diagrams():
    ds = instantiate_row(ROWS[11], 7, 2, 6)
    assert len(ds) == 4
    assert all(d.theta == 5 and d.ambient == Ambient(6, 7) for d in ds)
    z = Ambient(6, 7)(2)
    assert [v.exp for v in ds[0].vertex] == [2, 2, 3, 2, 2]
    assert all(x == z.inv() for _, _, x in ds[0].edges())


def test_row19_labels():
    ds = instantiate_row(ROWS[19], 3, 1, 4)
    amb = Ambient(4, 3)
    allowed = {amb(1), amb(3), amb(2)}  # zeta, -zeta, -1
    for d in ds:
        assert d.theta == 6
        assert {v for v in d.vertex} <= allowed | {amb(3)}
    assert any(v == amb(2) for d in ds for v in d.vertex)


def test_excluded_characteristic():
    with pytest.raises(BadParameter, match="excludes"):
        instantiate_row(ROWS[11], 3)


@pytest.mark.parametrize("row_id", sorted(ROWS))
def test_every_row_rejects_its_characteristic(row_id):
    row = ROWS[row_id]
    with pytest.raises(BadParameter):
        instantiate_row(row, row.char_excluded)


def test_bad_parameters():
    with pytest.raises(BadParameter, match="order"):
        instantiate_row(ROWS[11], 7, 3, 6)
    with pytest.raises(BadParameter):
        instantiate_row(ROWS[11], 2, 2, 6)  # gcd(N, p) > 1
    with pytest.raises(BadParameter):
        instantiate_row(ROWS[11], 0)


def test_larger_ambient():
    ds = instantiate_row(ROWS[11], 7, 4, 12)
    assert ds[0].vertex[0].order() == 3


# ---------------------------------------------------------------- root notation


@pytest.mark.parametrize(
    "token,root",
    [
        ("12", (1, 1, 0, 0, 0)),
        ("1^{2}234", (2, 1, 1, 1, 0)),
        ("1^{5}2^{4}3^{2}4^{3}5^{2}", (5, 4, 2, 3, 2)),
    ],
)
def test_parse_examples(token, root):
    assert parse_root_notation(token, 5) == root
    assert emit_root(root) == token


def test_appendix_a4_final_token():
    assert APPENDIX["A.Nr4"].tokens[-1] == "1^{5}2^{4}3^{2}4^{3}5^{2}"


@pytest.mark.parametrize("bad", ["", "6", "12a", "1^{2", "1^{}", "1^{0}", "11", "0", "1^2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_root_notation(bad, 5)


def test_header_counts():
    assert {k: v.count for k, v in APPENDIX.items()} == HEADER_COUNTS


@pytest.mark.parametrize("label", sorted(HEADER_COUNTS))
def test_appendix_tokens_round_trip(label):
    rl = APPENDIX[label]
    assert [emit_root(v) for v in rl.roots] == list(rl.tokens)
    assert all(min(v) >= 0 and any(v) for v in rl.roots)
    assert all(len(v) == rl.theta for v in rl.roots)


def test_appendix_header_mismatch():
    with pytest.raises(ValueError, match="header"):
        parse_appendix("# rank 2\nNr. 1 with 4 positive roots:\n1, 2, 12\n", "X")
    with pytest.raises(ValueError, match="repeated"):
        parse_appendix("# rank 2\nNr. 1 with 3 positive roots:\n1, 2, 2\n", "X")


@given(st.lists(st.integers(0, 12), min_size=1, max_size=9).filter(any))
def test_emit_parse_round_trip(v):
    assert parse_root_notation(emit_root(v), len(v)) == tuple(v)


def test_root_set_permutation_convention():
    roots = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    rho = (2, 0, 1)
    moved = set()
    for v in roots:
        w = [0] * 3
        for k in range(3):
            w[rho[k]] = v[k]
        moved.add(tuple(w))
    perms = root_set_permutations(roots, moved, 3)
    assert rho in perms and len(perms) == 2  # the chain's flip is the other one


def test_fixture_files_consistent():
    ex = load_exchange_fixtures()
    assert sorted(ex) == sorted(ROWS)
    for rid, fx in ex.items():
        n = len(ROWS[rid].diagrams)
        assert {k for _, k in fx.nodes} == set(range(1, n + 1))
    fams = load_impossible_families()
    assert len(fams) == 34
    assert {f.rank for f in fams} == {5, 6, 7}


# ---------------------------------------------------------------- verification


def test_verify_row11():
    rep = verify_row(ROWS[11])
    assert rep.passed, rep.to_text()
    assert rep.positive_roots == 25 and rep.points == 6 and rep.table_nodes == 6
    assert rep.appendix_label == "A.Nr1"
    assert set(rep.checks) == set(CHECKS)


def test_verify_row21():
    rep = verify_row(ROWS[21])
    assert rep.passed, rep.to_text()
    assert (rep.positive_roots, rep.points, rep.appendix_label) == (91, 8, "C.Nr2")


def test_verify_row18():
    rep = verify_row(ROWS[18])
    assert rep.passed, rep.to_text()
    assert rep.positive_roots in (46, 63, 68)
    assert rep.appendix_label.startswith("B.")


def test_appendix_match_is_exact(full_report):
    for rep in full_report.reports:
        g, rs = row_graph(rep.row_id)
        pos = rs.positive(rep.appendix_point)
        rho = rep.appendix_permutation
        moved = set()
        for v in pos:
            w = [0] * g.theta
            for k in range(g.theta):
                w[rho[k]] = v[k]
            moved.add(tuple(w))
        assert moved == set(APPENDIX[rep.appendix_label].roots)


def test_verify_all_rows(full_report):
    assert [r.row_id for r in full_report.reports] == sorted(ROWS)
    for rep in full_report.reports:
        assert rep.passed, rep.to_text()


def test_verify_all_coverage(full_report):
    assert full_report.uncovered == [], full_report.coverage


def test_rows_are_exchange_equivalent_to_their_diagram_lists():
    for rid in sorted(ROWS):
        g, _ = row_graph(rid)
        ds = instantiate_row(ROWS[rid], g.points[0].diagram.ambient.p)
        for p in g.points:
            assert any(diagram_iso(p.diagram, d) is not None for d in ds)


def test_mutated_appendix_fails_match():
    broken = dict(APPENDIX)
    rl = broken["A.Nr1"]
    broken["A.Nr1"] = dataclasses.replace(rl, roots=rl.roots[:-1], tokens=rl.tokens[:-1])
    rep = verify_row(ROWS[11], appendix=broken)
    assert not rep.checks["appendix match"]
    assert not rep.passed
    assert rep.checks["graph finite"] and rep.checks["axioms"]


def test_verify_all_at_excluded_characteristic():
    full = verify_all(p=3)
    rejected = {r.row_id for r in full.reports if "parameters" in r.checks}
    assert rejected == {rid for rid, row in ROWS.items() if row.char_excluded == 3}
    for r in full.reports:
        if r.row_id in rejected:
            assert not r.passed and r.errors[0].startswith("BadParameter")


def test_row19_at_p3():
    assert verify_row(ROWS[19], 3).passed


def test_report_independent_of_prime():
    a = verify_row(ROWS[11], 7).to_dict()
    b = verify_row(ROWS[11], 13).to_dict()
    assert (a.pop("p"), b.pop("p")) == (7, 13)
    assert a == b


def test_report_text_and_dict():
    rep = verify_row(ROWS[11])
    text = rep.to_text()
    assert text.startswith("row 11: PASS (p=5, N=6")
    d = rep.to_dict()
    assert d["passed"] is True and d["appendix_label"] == "A.Nr1"
    assert isinstance(d["appendix_permutation"], str)


def test_rootlist_is_hashable():
    rl = RootList("X.Nr1", 1, ((1,),), ("1",))
    assert rl.count == 1 and hash(rl)
