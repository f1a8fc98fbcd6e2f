import pytest
from hypothesis import given, strategies as st

from kaprekar.core import WidthMismatch, make_number
from kaprekar.dynamics import build_graph
from kaprekar.equivalence import (
    EquivMap,
    bridge_links,
    catalog_r2,
    class_equiv,
    find_map,
    general_maps,
    group_classify,
    higher_equiv_examples,
    new_equivalences,
    partition,
    product,
    r_equiv,
    set_maps,
    stabilize,
    verify_catalog,
)
from kaprekar.parametric import ParamVector, enumerate_classes


def P(text, width=6):
    return ParamVector.parse(text, width)


def N(text):
    return make_number(text, len(text))


@pytest.mark.parametrize(
    "m, n, r, expected",
    [
        ("83246529", "17487561", 1, True),
        ("8178382562", "4774473809", 2, True),
        ("5068069", "3071934", 4, True),
        ("5068069", "3071934", 3, False),
        ("3524", "3524", 0, True),
        ("3524", "2534", 0, False),
        ("3524", "2534", 1, True),
    ],
)
def test_r_equiv(m, n, r, expected):
    assert r_equiv(N(m), N(n), r) is expected


def test_r_equiv_errors():
    with pytest.raises(WidthMismatch):
        r_equiv(N("123"), N("1234"), 1)
    with pytest.raises(ValueError):
        r_equiv(N("123"), N("132"), -1)


def test_partition_sizes():
    assert len(partition(6, 1)) == 219
    assert len(partition(6, 2)) == 82
    g = build_graph(6)
    per_tree = [len(partition(6, 2, [g.nodes[i] for i in c.nodes])) for c in g.components]
    assert per_tree == [75, 6, 1]


def test_partition_examples():
    p = partition(6, 2)
    assert [str(a) for a in p.block_of(P("963"))] == ["963", "933", "761", "731", "331"]
    assert str(p.image_of(P("963"))) == "843"
    assert [str(a) for a in p.block_of(P("555"))] == ["555"]


def test_stabilization():
    u, final = stabilize(6)
    assert (u, len(final)) == (13, 9)
    assert len(stabilize(4)[1]) == 1
    assert len(partition(6, 13)) == len(partition(6, 20))
    g = build_graph(6)
    for c in g.components:
        _, fin = stabilize(6, [g.nodes[i] for i in c.nodes])
        assert len(fin) == len(c.cycle)


def test_new_equivalences():
    events = new_equivalences(6, 2)
    assert sum(e.from_blocks for e in events) - len(events) == 219 - 82
    assert new_equivalences(6, 1) == []


TABLE_I = [
    "e2-0 e2-1 e2-2 e2-3 e2-4 e2-5 n2-6 n2-7",
    "e2-1 e2-0 e2-4 e2-5 e2-2 e2-3 n2-7 n2-6",
    "e2-2 e2-4 e2-0 n2-6 e2-1 n2-7 e2-3 e2-5",
    "e2-3 e2-5 n2-6 e2-0 n2-7 e2-1 e2-2 e2-4",
    "e2-4 e2-2 e2-1 n2-7 e2-0 n2-6 e2-5 e2-3",
    "e2-5 e2-3 n2-7 e2-1 n2-6 e2-0 e2-4 e2-2",
    "n2-6 n2-7 e2-3 e2-2 e2-5 e2-4 e2-0 e2-1",
    "n2-7 n2-6 e2-5 e2-4 e2-3 e2-2 e2-1 e2-0",
]


@pytest.mark.parametrize("width", [6, 7])
def test_set_one_product_table(width):
    table = group_classify(set_maps("I", width))
    assert [" ".join(r) for r in table.rows()] == TABLE_I
    assert table.identity == "e2-0" and not table.closed and table.group == "none"


@pytest.mark.parametrize("width", [6, 7])
def test_groups(width):
    assert group_classify(set_maps("II", width)).group == "Klein"
    assert group_classify(set_maps("III", width)).group == "Z2"


def test_set_errors():
    with pytest.raises(KeyError):
        set_maps("IV", 6)
    with pytest.raises(ValueError):
        set_maps("I", 8)


def test_product_table_csv():
    csv_text = group_classify(set_maps("III", 6)).to_csv()
    assert csv_text == "f\\g,e2-0,e2-11\ne2-0,e2-0,e2-11\ne2-11,e2-11,e2-0\n"


def test_products_are_compositions():
    maps = set_maps("I", 6)
    e1, e2 = find_map(maps, "e2-1"), find_map(maps, "e2-2")
    res = product(e1, e2, maps)
    assert res.label == "e2-4"
    for a, b in e2.pairs():
        if b in set(e1.points()):
            assert tuple(x(a) for x in res.transform) == e1.apply_tuple(b)
    assert product(find_map(maps, "e2-5"), find_map(maps, "e2-5"), maps).label == "e2-0"


def test_invalid_maps_are_empty():
    maps = set_maps("I", 6)
    for m in maps:
        assert bool(m.pairs()) == m.valid


@pytest.mark.parametrize("width", range(2, 10))
def test_catalog_sound(width):
    report = verify_catalog(width)
    assert report.sound, report.unsound[:5]
    assert not report.failed_examples
    assert not report.nonempty_invalid


@pytest.mark.parametrize("width", range(2, 7))
def test_catalog_complete_below_seven(width):
    assert verify_catalog(width).complete


def test_width_seven_gaps_and_their_bridges():
    report = verify_catalog(7)
    gaps = {("".join(map(str, a)), "".join(map(str, b))) for a, b in report.uncovered}
    assert gaps == {
        ("851", "771"), ("851", "721"), ("851", "321"),
        ("841", "771"), ("841", "721"), ("841", "321"),
        ("800", "553"), ("800", "543"), ("553", "300"), ("543", "300"),
        ("776", "530"), ("774", "530"),
    }
    bridges = bridge_links(7, report.uncovered)
    assert len(bridges) == len(report.uncovered)
    for b in bridges:
        a, c = b.pair
        assert tuple(e(a) for e in b.transform) == c
        assert class_equiv(ParamVector(a, 7), ParamVector(c, 7), 2)


def test_general_maps_grow_with_width():
    ids = {m.id for m in general_maps(10)}
    assert {"r2-3", "r2-11@F1", "r2-13@F1", "r2-14@F1", "r2-4", "r2-12.s2@F2(4)"} <= ids
    assert "r2-4" not in {m.id for m in general_maps(9)}


def test_equiv_map_call():
    m = find_map(catalog_r2(6), "e2-1")
    assert str(m(P("631"))) == "431"
    with pytest.raises(ValueError):
        m(P("955"))
    assert isinstance(m, EquivMap)


def test_higher_order_facts():
    facts = higher_equiv_examples(6) + higher_equiv_examples(7)
    assert facts and all(f.new for f in facts)
    assert {(str(f.first), str(f.second), f.order) for f in facts} >= {("533", "621", 7), ("981", "961", 4)}


@given(st.sampled_from([4, 5, 6, 7]), st.data())
def test_equivalence_persists_to_higher_orders(width, data):
    classes = enumerate_classes(width)
    a = data.draw(st.sampled_from(classes))
    b = data.draw(st.sampled_from(classes))
    r = data.draw(st.integers(1, 12))
    if class_equiv(a, b, r):
        assert class_equiv(a, b, r + 1)


@given(st.sampled_from([2, 3, 4, 5, 6, 7]), st.integers(1, 19))
def test_partitions_coarsen(width, r):
    assert partition(width, r + 1).coarsens(partition(width, r))
