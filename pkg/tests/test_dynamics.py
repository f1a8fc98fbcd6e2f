import json

import pytest
from hypothesis import given, strategies as st

from kaprekar.core import kaprekar_step, make_number, orbit, params
from kaprekar.dynamics import (
    build_graph,
    cycle_target,
    cycles,
    distance,
    export_dot,
    graph_json,
    numeric_cycle,
)
from kaprekar.equivalence import partition
from kaprekar.parametric import ParamVector
from kaprekar.symbolic import successor_tuple


def P(text, width=6):
    return ParamVector.parse(text, width)


@pytest.fixture(scope="module")
def a6():
    return build_graph(6)


# C2 blocks of A6: members, shared image, cycle member reached and step count
C2_BLOCKS = [
    ("966 964 661 631 431", "832", "861;14"),
    ("100", "900", "863;14"),
    ("832 862", "753", "863;14"),
    ("655 554 544", "210", "643;14"),
    ("955 900 551 541 200", "810", "643;14"),
    ("753 743", "531", "643;14"),
    ("810 210", "970", "421;14"),
    ("965 531", "830", "421;14"),
    ("985 511", "870", "421;14"),
    ("970 930", "873", "852;14"),
    ("870 830", "772", "852;14"),
    ("877 873 772 722 322", "654", "751;14"),
    ("555", "111", "841;14"),
    ("990 910 110", "981", "841;14"),
    ("710 310", "961", "841;14"),
    ("654 644 444", "311", "841;14"),
    ("996 994", "982", "841;14"),
    ("981 911 111", "977", "861;7"),
    ("961 931", "973", "861;7"),
    ("987 983 711 311", "874", "861;7"),
    ("988 982 881 811 211", "876", "861;7"),
    ("977 973 771 721 321", "854", "863;7"),
    ("876 874 622 422", "652", "863;7"),
    ("854 844 652 642 442", "621", "643;7"),
    ("995", "980", "751;14"),
    ("980 920", "882", "841;14"),
    ("888 882", "775", "861;14"),
    ("770 730 330", "761", "863;14"),
    ("666 664", "331", "863;14"),
    ("775 600 500", "540", "863;14"),
    ("963 933 761 731 331", "843", "643;14"),
    ("540", "640", "643;14"),
    ("665", "320", "643;14"),
    ("800 300", "720", "643;14"),
    ("853 843 752 742", "641", "421;14"),
    ("660 640 440", "651", "421;14"),
    ("720 320", "860", "421;14"),
    ("954 944 651 641 441", "821", "852;14"),
    ("880 820 220", "871", "852;14"),
    ("860 840", "763", "852;14"),
    ("951 941", "971", "751;7"),
    ("972 922 871 821 221", "865", "751;7"),
    ("763 733 333", "533", "751;7"),
    ("971 921", "975", "841;7"),
    ("865 700 532 400", "630", "841;7"),
    ("765 533", "430", "841;7"),
    ("975 521", "850", "861;7"),
    ("630 430", "750", "861;7"),
    ("850", "754", "863;7"),
    ("750", "653", "863;7"),
    ("754 744 653 643 443", "421", "643;7"),
    ("999 991", "997", "861;7"),
    ("998 992", "986", "863;7"),
    ("997 993", "984", "863;7"),
    ("875 522", "650", "643;7"),
    ("986 984 611 411", "872", "643;7"),
    ("776 774", "542", "421;7"),
    ("650", "552", "421;7"),
    ("950", "855", "421;7"),
    ("777 773", "553", "421;7"),
    ("872 822 222", "755", "421;7"),
    ("542 552 855", "610", "852;7"),
    ("755 553 543", "410", "852;7"),
    ("610 410", "952", "751;7"),
    ("520", "842", "421;7"),
    ("530", "741", "852;7"),
    ("510", "943", "852;7"),
    ("620 420", "851", "751;7"),
    ("886 884", "762", "861;7"),
    ("863 833 762 732 332", "643", "863;7"),
    ("976 974 621 421", "852", "421;7"),
    ("852 842", "751", "852;7"),
    ("953 943 751 741", "841", "751;7"),
    ("952 942 851 841", "861", "841;7"),
    ("962 932 861 831", "863", "861;7"),
    ("885", "760", "632;3"),
    ("887 883", "764", "632;3"),
    ("760 740", "662", "632;2"),
    ("766 764 663 633 433", "432", "632;2"),
    ("960 940", "864", "632;2"),
    ("866 864 662 432", "632", "632;1"),
    ("550", "550", "550;0"),
]


def test_component_sizes_and_names(a6):
    assert [(c.name, c.size, len(c.cycle)) for c in a6.components] == [("A", 201, 7), ("B", 17, 1), ("C", 1, 1)]


def test_cycle_listing(a6):
    cyc = a6.cycle(a6.components[0])
    listed = [P(t) for t in "861 863 643 421 852 751 841".split()]
    assert cyc.same_cycle(listed)
    assert not cyc.same_cycle(listed[::-1])
    # rotation starts at the lexicographically largest member
    assert str(cyc.members[0]) == "863"
    nums = [str(n) for n in cyc.rotated_to(listed[0]).numeric_members]
    assert nums == ["840852", "860832", "862632", "642654", "420876", "851742", "750843"]


def test_other_widths():
    assert [len(c) for c in cycles(2)] == [5]
    assert sorted(len(c) for c in cycles(5)) == [2, 4, 4]
    assert [(c.size, len(c.cycle)) for c in build_graph(7).components] == [(219, 8)]
    assert [(c.size, len(c.cycle)) for c in build_graph(4).components] == [(54, 1)]
    assert [str(c.members[0]) for c in cycles(3)] == ["5"]


def test_numeric_cycle_steps():
    for c in cycles(5):
        nums = numeric_cycle(c)
        for i, n in enumerate(nums):
            assert kaprekar_step(n) == nums[(i + 1) % len(nums)]


def test_distances(a6):
    assert distance(a6, P("661"), P("861")) == 14
    assert distance(a6, P("430"), P("861")) == 7
    assert distance(a6, P("861")) == 0
    assert distance(a6, P("550"), P("861")) is None
    assert max(a6.depth) == 12


def test_numeric_orbits_agree_with_graph(a6):
    for alpha in a6.nodes[::11]:
        o = orbit(alpha.representative())
        assert params(o.attractor) in {m for c in cycles(6, a6) for m in c.members}


def test_c2_table(a6):
    p = partition(6, 2)
    assert len(p) == len(C2_BLOCKS) == 82
    for members, image, target in C2_BLOCKS:
        ms = [P(t) for t in members.split()]
        block = set(p.block_of(ms[0]))
        # the constant 632 shares its block's image but is not listed with it
        assert block - {P("632")} == set(ms)
        assert str(p.image_of(ms[0])) == image
        goal, steps = target.split(";")
        goal, steps = P(goal), int(steps)
        r = len(a6.component(ms[0]).cycle)
        assert steps % r == 0 or r == 1
        assert all(a6.nodes[a6.step(a6.index(m), steps)] == goal for m in ms)
        deepest = max(ms, key=lambda m: a6.depth[a6.index(m)])
        reached, minimal = cycle_target(a6, deepest)
        assert reached == goal and minimal <= steps


def test_dot_export(a6):
    dot = export_dot(a6)
    assert dot.startswith('digraph "A6" {') and dot.rstrip().endswith("}")
    assert dot.count("->") == 219
    assert "subgraph cluster_A" in dot and '"863" -> "643" [color=red, penwidth=2];' in dot


def test_graph_json_deterministic():
    one, two = graph_json(build_graph(6)), graph_json(build_graph(6, n_jobs=2))
    assert one == two
    data = json.loads(one)
    assert len(data["classes"]) == 219 and len(data["edges"]) == 219


def test_invalid_width():
    with pytest.raises(ValueError):
        build_graph(1)


@given(st.integers(2, 7), st.data())
def test_successor_edges_match_oracle(width, data):
    g = build_graph(width)
    i = data.draw(st.integers(0, len(g.nodes) - 1))
    alpha = g.nodes[i]
    assert g.successor(alpha).alphas == successor_tuple(alpha.alphas, width)
    n = make_number(str(alpha.representative()), width)
    assert params(kaprekar_step(n)) == g.successor(alpha)
    # depth is one more than the successor's unless on the cycle
    j = g.succ[i]
    assert g.depth[i] == 0 or g.depth[i] == g.depth[j] + 1
