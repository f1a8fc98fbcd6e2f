"""Conventional names for selected parametric maps.

Each named form fixes a family and either an ordering of the variable image
slots (``perm``) or just the affine map.  Table rows for widths 6 and 7 also
carry a domain so the derived catalog can be compared with them point by
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .parametric import FamilyTag
from .symbolic import (
    AffineExpr,
    KCatalog,
    ParamDomain,
    SymbolicKFn,
    class_matrix,
    family_constraints,
    format_permutation,
    ordering_function,
    parse_constraints,
    parse_map,
)


@dataclass(frozen=True)
class NamedForm:
    name: str
    width: int
    kind: str
    r: Optional[int]
    map_text: str
    perm: Optional[tuple[int, ...]] = None
    domain_text: Optional[str] = None
    group: str = "general"

    @property
    def tag(self) -> FamilyTag:
        parity = "even" if self.width % 2 == 0 else "odd"
        return FamilyTag(self.kind, parity, self.r)

    @property
    def h(self) -> int:
        return self.width // 2

    def output(self) -> tuple[AffineExpr, ...]:
        return parse_map(self.map_text, self.h)

    def domain(self) -> Optional[ParamDomain]:
        if self.domain_text is None:
            return None
        extra = parse_constraints(self.domain_text, self.h)
        return ParamDomain(self.width, tuple(family_constraints(self.tag, self.width)) + tuple(extra))


def _p(text: str) -> tuple[int, ...]:
    """``"415623"`` or ``"6.1.7"`` -> 0-based slot order."""
    parts = text.split(".") if "." in text else list(text)
    return tuple(int(x) - 1 for x in parts)


# rows: (name, kind, r, perm, map, domain)
TABLE_ROWS: dict[int, list[tuple]] = {
    6: [
        ("K1", "F1", None, "123456", "2a-10, 2b-9, 2c-10", "6<=a<=9, 5<=b<=9, 5<=c<=9, a>=b+1"),
        ("K2", "F1", None, "456123", "10-2c, 9-2b, 10-2a", "0<a<=5, 0<b<=4, 0<c<=4, a>=b+1, 2c<=2b+1"),
        ("K3", "F1", None, "415623", "10-2c, a-b, a-b-1", "9<=a+b<=10, a>=b+1, 1<=c<=4, a+c<=9, a<=10+b-2c"),
        ("K4", "F1", None, "142563", "a-c+1, a-c-1, 2b-9", "5<=a<=9, 5<=b<=8, 1<=c<=6, a>=b+1, 9<=a+c<=11, a>=2b+c-8"),
        ("K5", "F1", None, "145263", "a-c+1, a-c-1, 9-2b", "6<=a<=9, 1<=b<=4, a+b>=10, 9<=a+c<=11, a>=10-2b+c"),
        ("K6", "F1", None, "412563", "10-2c, 2a-10, 2b-9", "6<=a<=9, 5<=b<=9, 1<=c<=3, a>=b+1, a+c<=9"),
        ("K7", "F1", None, "124536", "2a-10, b-c+1, b-c", "6<=a<=9, 5<=b<=8, 2<=c<=5, a+c>=11, 9<=b+c<=10, 2a>=11+b-c"),
        ("K8", "F1", None, "124563", "a-c+1, a+b-10, b-c", "6<=a<=9, 5<=b<=8, 1<=c<=5, a>=b+1, a+b>=10, 10<=a+c<=11, 9<=b+c<=11"),
        # the ordering is also descending at the tie point 555
        ("K9", "F1", None, "612453", "11-a-c, a+b-9, b+c-9", "a=5, b=5, c>=4"),
        ("K22", "F2", 3, "1234", "a-1, b, a-b+1", "6<=a<=9, 5<=b<=9, a>=b+1, 2b>=a+1"),
        ("K24", "F2", 3, "1423", "b, 10-b, 2a-10", "5<=a<=9, 5<=b<=9, a+b<=11"),
        ("K31", "F3", None, "12", "a-1, 10-a, 0", "6<=a<=9"),
        ("K32", "F3", None, "21", "10-a, a-1, 0", "1<=a<=5"),
    ],
    7: [
        ("K1", "F1", None, "123456", "a-1, a+b-9, b+c-9", "a>=b+1, c>=5"),
        ("K4", "F1", None, "142563", "10-c, 2a-10, b-c", "a>=b+1, 9<=a+c<=11, b>=5, b+c<=9"),
        ("K5", "F1", None, "145263", "10-c, 2a-10, 9-b-c", "a+b>=10, b<=4, 9<=a+c<=11"),
        ("K6", "F1", None, "412563", "10-c, a-c-1, a+b-9", "a>=b+1, b>=5, a+c<=9"),
        ("K7", "F1", None, "124536", "a-1, a-c+1, 2b-9", "a+c>=11, 9<=b+c<=10"),
        ("K10", "F1", None, "123465", "b, 2a-10, b+c-9", "a>=c+1, a<=b+1, c>=5"),
        ("K11", "F1", None, "451623", "10-c, 9-c-b, a-b-1", "a>=5, a+b<=9"),
        ("K12", "F1", None, "145236", "a-1, a-c+1, 9-b-c", "a+c>=11, b<=4"),
        ("K13", "F1", None, "124365", "b, 2a-10, b-c+1", "a<=b+1, a+c>=11, c<=5"),
        ("K22", "F2", 3, "1234", "a-1, b, 10-b", "a>=b+1, b>=5"),
        ("K23", "F2", 3, "1243", "b, a-1, 10-b", "a<=b+1, a+b>=11"),
        ("K25", "F2", 3, "1324", "a-1, 10-b, b", "a+b>=11, b<=5"),
        ("K26", "F2", 3, "1342", "10-b, a-1, b", "a>=b+1, 9<=a+b<=11"),
        ("K27", "F2", 3, "3142", "10-b, a-1, 9-a", "a>=5, a+b<=9"),
        ("K31", "F3", None, "12", "a-1, 10-a, 0", "6<=a<=9"),
        ("K32", "F3", None, "21", "10-a, a-1, 0", "1<=a<=5"),
    ],
}

# rows whose stored domain differs from the conventional listing: name -> listed text
LISTED_DOMAINS: dict[tuple[int, str], str] = {
    (6, "K9"): "a=5, b=5, c=4",
    (7, "K23"): "a<=b+1, a+b<=11",
    (7, "K25"): "a+b<=11, b<=5",
}

# five-digit names: (name, kind, perm, map)
WIDTH5_FORMS = [
    ("K1", "F1", "1234", "a-1, a+b-9"),
    ("K14", "F1", "4312", "10-b, 10-2a"),
    ("K17", "F1", "1342", "10-b, 2a-10"),
    ("K26", "F3", "21", "10-a, a-1"),
]


def _var(s: int) -> str:
    return "abcdefghi"[s - 1]


def _zeros(n: int) -> list[str]:
    return ["0"] * n


def _general_forms(width: int) -> list[NamedForm]:
    h = width // 2
    even = width % 2 == 0
    v = _var
    out: list[NamedForm] = []
    if h == 1:
        out.append(NamedForm("K1", width, "F3", None, "2a-11" if even else "a-1", _p("12")))
        out.append(NamedForm("K2", width, "F3", None, "11-2a" if even else "10-a", _p("21")))
        return out
    ident = tuple(range(2 * h))
    swap = tuple(range(h, 2 * h)) + tuple(range(h))
    if even:
        k1 = [f"2{v(1)}-10"] + [f"2{v(s)}-9" for s in range(2, h)] + [f"2{v(h)}-10"]
        k2 = [f"10-2{v(h)}"] + [f"9-2{v(s)}" for s in range(h - 1, 1, -1)] + [f"10-2{v(1)}"]
    else:
        k1 = [f"{v(1)}-1"] + [f"{v(s)}+{v(s + 1)}-9" for s in range(1, h)]
        k2 = [f"10-{v(h)}"] + [f"9-{v(s)}-{v(s - 1)}" for s in range(h, 1, -1)]
    out.append(NamedForm("K1", width, "F1", None, ", ".join(k1), ident))
    out.append(NamedForm("K2", width, "F1", None, ", ".join(k2), swap))
    if even:
        perm = (h, 0) + tuple(range(h + 1, 2 * h)) + tuple(range(1, h))
        if h == 2:
            k3 = ["10-2b", "2a-10"]
        else:
            k3 = [f"10-2{v(h)}", f"a-{v(h - 1)}"]
            k3 += [f"9-{v(s)}-{v(s - 1)}" for s in range(h - 1, 2, -1)]
            k3 += ["a-b-1"]
        out.append(NamedForm("K3", width, "F1", None, ", ".join(k3), perm))
    elif h >= 4:
        k4 = [f"10-{v(h)}", "2a-10", f"b-{v(h)}", f"b-{v(h - 1)}"]
        k4 += [f"9-{v(s)}-{v(s + 1)}" for s in range(h - 2, 2, -1)]
        out.append(NamedForm("K4", width, "F1", None, ", ".join(k4)))
    if h >= 3:
        out.append(NamedForm("K31", width, "F3", None, ", ".join(["a-1", "10-a"] + _zeros(h - 2)), _p("12")))
        out.append(NamedForm("K32", width, "F3", None, ", ".join(["10-a", "a-1"] + _zeros(h - 2)), _p("21")))
    if even and h >= 4:
        out.append(NamedForm("K21", width, "F2", 3, ", ".join(["a-1", "b", "10-b", "9-a"] + _zeros(h - 4)), _p("1234")))
        out.append(NamedForm("K23", width, "F2", 3, ", ".join(["b", "10-b", "a-1", "9-a"] + _zeros(h - 4)), _p("1423")))
    if width == 12:
        out.append(
            NamedForm("K25", 12, "F2", 6, "10-e, 9-d, a-e-1, a+b-9, c-d, b-c", _p("6.1.7.2.3.8.9.10.4.5"))
        )
    return out


def named_forms(width: int) -> list[NamedForm]:
    """Every named form that applies at ``width``; table rows take precedence."""
    rows = TABLE_ROWS.get(width, [])
    out = [
        NamedForm(name, width, kind, r, m, _p(perm), dom, group="table")
        for name, kind, r, perm, m, dom in rows
    ]
    if width == 5:
        out += [NamedForm(name, 5, kind, None, m, _p(perm), group="width5") for name, kind, perm, m in WIDTH5_FORMS]
    taken = {f.name for f in out}
    out += [f for f in _general_forms(width) if f.name not in taken]
    return out


def _restricted(exprs: Sequence[AffineExpr], k: int) -> tuple[tuple[int, ...], ...]:
    """Coefficients with the parameters forced to zero by the family dropped."""
    out = []
    for e in exprs:
        if e.divisor != 1:
            out.append(e.coeffs + (e.divisor,))
        else:
            out.append(e.coeffs[: k + 1])
    return tuple(out)


def same_map(a: Sequence[AffineExpr], b: Sequence[AffineExpr], tag: FamilyTag, width: int) -> bool:
    k = tag.nonzero_count(width)
    return _restricted(a, k) == _restricted(b, k)


def resolve(form: NamedForm, catalog: KCatalog) -> list[SymbolicKFn]:
    """Catalog functions carrying ``form``; a non-canonical ordering is built on demand."""
    tag = form.tag
    if form.perm is not None:
        fid = f"{tag}:{format_permutation(form.perm)}"
        try:
            return [catalog.get(fid)]
        except KeyError:
            fn = ordering_function(tag, form.width, form.perm, canonical=False)
            return [fn] if not fn.domain.is_empty() else []
    target = form.output()
    return [
        fn
        for fn in catalog.functions
        if fn.family == tag and same_map(fn.output, target, tag, form.width)
    ]


def attach_aliases(catalog: KCatalog) -> None:
    """Record conventional names on the catalog (in place)."""
    names: dict[str, list[str]] = {}
    raw: dict[str, SymbolicKFn] = {}
    for form in named_forms(catalog.width):
        for fn in resolve(form, catalog):
            if fn.canonical:
                names.setdefault(fn.id, []).append(form.name)
            else:
                raw[form.name] = _with_alias(fn, (form.name,))
    catalog.functions = [
        _with_alias(fn, tuple(dict.fromkeys(names[fn.id]))) if fn.id in names else fn
        for fn in catalog.functions
    ]
    catalog.named_raw = raw


def _with_alias(fn: SymbolicKFn, aliases: tuple[str, ...]) -> SymbolicKFn:
    return SymbolicKFn(
        fn.id, fn.width, fn.family, fn.permutation, fn.output, fn.domain, aliases, fn.canonical
    )


def named_function(catalog: KCatalog, name: str) -> list[SymbolicKFn]:
    """All functions answering to ``name`` (canonical first, then on-demand orderings)."""
    found = catalog.aliased(name)
    extra = getattr(catalog, "named_raw", {}).get(name)
    return found + ([extra] if extra is not None else [])


@dataclass(frozen=True)
class RowMatch:
    """Point-by-point comparison of a table row with a derived function."""

    name: str
    width: int
    fn_id: Optional[str]
    canonical: bool
    map_identical: bool
    values_equal: bool
    missing: tuple[tuple[int, ...], ...]
    extra: tuple[tuple[int, ...], ...]
    listed_domain_points: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def exact(self) -> bool:
        return self.fn_id is not None and self.values_equal and not self.missing and not self.extra


def compare_row(form: NamedForm, catalog: KCatalog) -> RowMatch:
    fns = resolve(form, catalog)
    listed = None
    key = (form.width, form.name)
    if key in LISTED_DOMAINS:
        listed_dom = ParamDomain(
            form.width,
            tuple(family_constraints(form.tag, form.width))
            + tuple(parse_constraints(LISTED_DOMAINS[key], form.h)),
        )
        listed = tuple(listed_dom.feasible_tuples())
    if not fns:
        return RowMatch(form.name, form.width, None, False, False, False, (), (), listed)
    fn = fns[0]
    row_dom = form.domain()
    pts = class_matrix(form.width)
    row_mask = row_dom.mask(pts)
    fn_mask = fn.domain.mask(pts)
    row_out = form.output()
    both = pts[row_mask & fn_mask]
    values_equal = all(
        np.array_equal(a.evaluate_many(both)[0], b.evaluate_many(both)[0])
        for a, b in zip(row_out, fn.output)
    )
    as_t = lambda arr: tuple(tuple(int(v) for v in row) for row in arr)
    return RowMatch(
        form.name,
        form.width,
        fn.id,
        fn.canonical,
        same_map(fn.output, row_out, form.tag, form.width),
        values_equal,
        as_t(pts[row_mask & ~fn_mask]),
        as_t(pts[fn_mask & ~row_mask]),
        listed,
    )


def table_rows(width: int) -> list[NamedForm]:
    return [f for f in named_forms(width) if f.group == "table"]
