import pytest
from hypothesis import given, strategies as st

from kaprekar.checks import catalog_soundness
from kaprekar.core import params
from kaprekar.named import compare_row, named_function, table_rows
from kaprekar.parametric import ParamVector, apply_f, enumerate_class_tuples, image_digits
from kaprekar.symbolic import (
    AffineExpr,
    NotIntegral,
    OutOfDomain,
    ParamDomain,
    brute_force_fixed_points,
    cached_catalog,
    compose,
    constant_family_params,
    derive_k_functions,
    eval_k,
    evaluate_map,
    parse_constraints,
    parse_expr,
    parse_map,
    solve_fixed_points,
    successor_tuple,
    total_k,
    total_k_iter,
    verify_constant_family,
)

# distinct maps per family, checked against the argsort oracle below
CANONICAL_COUNTS = {
    2: (2, 0, 0), 3: (2, 0, 0), 4: (2, 0, 8), 5: (2, 0, 8), 6: (2, 8, 23), 7: (2, 8, 23),
    8: (2, 31, 59), 9: (2, 31, 59), 10: (2, 90, 139), 11: (2, 90, 139), 12: (2, 229, 308),
}
# tie-inclusive orderings with a nonempty domain
RAW_COUNTS = {4: (2, 0, 11), 6: (2, 11, 111), 7: (2, 11, 111), 8: (2, 122, 1694)}


def argsort_oracle(width):
    """Distinct stable descending orderings of the image's variable slots."""
    found = {"F3": set(), "F2": set(), "F1": set()}
    for t in enumerate_class_tuples(width):
        k = sum(1 for a in t if a > 0)
        img = image_digits(t, width)
        slots = [i for i in range(width) if not k <= i < width - k]
        perm = tuple(sorted(slots, key=lambda i: (-img[i], i)))
        kind = "F3" if k == 1 else "F1" if k == width // 2 else "F2"
        found[kind].add((k, perm))
    return tuple(len(found[k]) for k in ("F3", "F2", "F1"))


@pytest.mark.parametrize("width", sorted(CANONICAL_COUNTS))
def test_catalog_counts(width):
    counts = derive_k_functions(width).family_counts()
    assert (counts["F3"], counts["F2"], counts["F1"]) == CANONICAL_COUNTS[width] == argsort_oracle(width)


@pytest.mark.parametrize("width", sorted(RAW_COUNTS))
def test_raw_ordering_counts(width):
    raw = cached_catalog(width).raw_family_counts()
    assert (raw["F3"], raw["F2"], raw["F1"]) == RAW_COUNTS[width]


def test_raw_counts_skipped_above_limit():
    assert cached_catalog(10).raw_family_counts() == {"F3": None, "F2": None, "F1": None}


@pytest.mark.parametrize("width", range(2, 11))
def test_catalog_covers_and_agrees_with_oracle(width):
    uncovered, wrong, total = catalog_soundness(width)
    assert uncovered == 0 and wrong == 0 and total > 0


@pytest.mark.parametrize("width", [6, 7])
def test_listed_rows_reproduced(width):
    cat = cached_catalog(width)
    for form in table_rows(width):
        match = compare_row(form, cat)
        assert match.exact, match


def test_k9_needs_a_tie_ordering():
    match = compare_row(next(f for f in table_rows(6) if f.name == "K9"), cached_catalog(6))
    assert match.exact and not match.canonical
    # the listed domain a=5, b=5, c=4 holds one class; the ordering also holds at 555
    assert match.listed_domain_points == ((5, 5, 4),)
    fn = next(f for f in named_function(cached_catalog(6), "K9") if not f.canonical)
    assert set(fn.feasible_tuples()) == {(5, 5, 5), (5, 5, 4)}


def test_named_lookup():
    cat = cached_catalog(6)
    k1 = named_function(cat, "K1")
    assert k1 and k1[0].id == "F1/even:123456"
    assert named_function(cat, "K999") == []


def test_out_of_domain_names_the_constraint():
    fn = named_function(cached_catalog(6), "K1")[0]
    with pytest.raises(OutOfDomain, match="violates"):
        eval_k(fn, ParamVector.parse("111", 6))


def test_expression_parsing():
    e = parse_expr("10-2a+c", 3)
    assert e.coeffs == (10, -2, 0, 1) and str(e) == "10-2a+c"
    half = parse_expr("(a+b+1)/2", 2)
    assert half((5, 4)) == 5
    with pytest.raises(NotIntegral):
        half((5, 5))
    assert len(parse_map("a-1, 9-b, 10-a", 3)) == 3
    assert len(parse_constraints("9<=a+b<=10, a=b=5", 3)) == 4


def test_domain_always_has_structure():
    dom = ParamDomain(6, tuple(parse_constraints("a>=8", 3)))
    assert (9, 9, 9) in dom and (7, 1, 0) not in dom and (8, 9, 0) not in dom
    assert len(dom.feasible_tuples()) == len([t for t in enumerate_class_tuples(6) if t[0] >= 8])
    assert ParamDomain(6, tuple(parse_constraints("a+b>=19", 3))).is_empty()


def test_affine_composition():
    h = 2
    f = (parse_expr("10-b", h), parse_expr("2a-10", h))
    g = (parse_expr("a-1", h), parse_expr("a+b-9", h))
    composed = tuple(e.substitute(g) for e in f)
    for t in [(9, 5), (7, 3)]:
        assert tuple(e(t) for e in composed) == tuple(e(tuple(x(t) for x in g)) for e in f)
    assert AffineExpr((4, 2, 6), 2).normalized() == AffineExpr((2, 1, 3))


def test_compose_follows_the_dynamics():
    cat = cached_catalog(6)
    alpha = ParamVector.parse("863", 6)
    path, cur = [], alpha
    for _ in range(3):
        fn = cat.containing(cur)[0]
        path.append(fn)
        cur = eval_k(fn, cur)
    assert evaluate_map(compose(path), alpha) == total_k_iter(alpha, 3).alphas


@pytest.mark.parametrize("width", range(2, 13))
def test_fixed_points_solver_matches_brute_force(width):
    assert [fp.alpha_e for fp in solve_fixed_points(width)] == brute_force_fixed_points(width)


@pytest.mark.parametrize(
    "width, expected",
    [(2, []), (3, ["495"]), (4, ["6174"]), (5, []), (6, ["549945", "631764"]), (7, []),
     (8, ["63317664", "97508421"]), (9, ["554999445", "864197532"])],
)
def test_fixed_points_by_width(width, expected):
    assert sorted(str(fp.n_e) for fp in solve_fixed_points(width)) == expected


@pytest.mark.parametrize("h", range(2, 9))
def test_even_constant_family(h):
    n = verify_constant_family("even", h).n_e
    assert str(n) == "6" + "3" * (h - 2) + "1" + "7" + "6" * (h - 2) + "4"


@pytest.mark.parametrize("h", range(4, 10))
def test_odd_constant_family(h):
    assert verify_constant_family("odd", h).alpha_e == constant_family_params("odd", h)


def test_odd_family_starts_at_four():
    with pytest.raises(ValueError):
        constant_family_params("odd", 3)
    # the same digit pattern one size down is not a fixed point
    alpha = ParamVector((8, 6, 2), 7)
    assert total_k(alpha) != alpha


@st.composite
def classes(draw, max_width=14):
    w = draw(st.integers(2, max_width))
    h = w // 2
    alphas = sorted(draw(st.lists(st.integers(0, 9), min_size=h, max_size=h)), reverse=True)
    if alphas[0] == 0:
        alphas[0] = draw(st.integers(1, 9))
    return ParamVector(tuple(alphas), w)


@given(classes(max_width=12))
def test_some_catalog_function_evaluates_to_the_successor(alpha):
    fns = cached_catalog(alpha.width).containing(alpha)
    assert fns
    for fn in fns:
        assert eval_k(fn, alpha).alphas == successor_tuple(alpha.alphas, alpha.width)


@given(classes())
def test_successor_is_params_of_image(alpha):
    assert total_k(alpha) == params(apply_f(alpha))


def test_cycle_composite_fixes_its_start():
    cat = cached_catalog(6)
    start = ParamVector.parse("861", 6)
    path, cur = [], start
    for _ in range(7):
        fn = cat.containing(cur)[0]
        path.append(fn)
        cur = eval_k(fn, cur)
    assert cur == start
    composite = compose(path)
    assert evaluate_map(composite, start) == start.alphas
    # wherever every intermediate stays in its function's domain the composite equals seven steps
    for t in enumerate_class_tuples(6):
        x, ok = t, True
        for fn in path:
            if x not in fn.domain:
                ok = False
                break
            x = fn.map_tuple(x)
        if ok:
            alpha = ParamVector(t, 6)
            assert evaluate_map(composite, alpha) == total_k_iter(alpha, 7).alphas
