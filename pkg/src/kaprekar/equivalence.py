"""Order-r equivalences: partitions of the classes by their (r-1)-step image,
maps between equivalent classes and the products of those maps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Optional, Sequence

from .core import DigitNumber, WidthMismatch, iterate
from .parametric import FamilyTag, ParamVector, enumerate_class_tuples
from .symbolic import (
    AffineExpr,
    NotIntegral,
    ParamDomain,
    cached_catalog,
    class_matrix,
    family_constraints,
    parse_constraints,
    parse_map,
    successor_tuple,
)


def r_equiv(m: DigitNumber, n: DigitNumber, r: int) -> bool:
    """``m R_r n``: the r-th iterates coincide."""
    if m.width != n.width:
        raise WidthMismatch(f"{m} and {n} have different widths")
    if r < 0:
        raise ValueError(f"order must be >= 0, got {r}")
    return iterate(m, r) == iterate(n, r)


@lru_cache(maxsize=None)
def _successors(width: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    return {t: successor_tuple(t, width) for t in enumerate_class_tuples(width)}


def step_params(alphas: tuple[int, ...], width: int, r: int) -> tuple[int, ...]:
    succ = _successors(width)
    for _ in range(r):
        alphas = succ[alphas]
    return alphas


def class_equiv(a: ParamVector, b: ParamVector, r: int) -> bool:
    """Class-level ``R_r``: equal parameters after ``r - 1`` steps (r >= 1)."""
    if a.width != b.width:
        raise WidthMismatch(f"{a!r} and {b!r} have different widths")
    if r < 1:
        raise ValueError(f"class-level order must be >= 1, got {r}")
    return step_params(a.alphas, a.width, r - 1) == step_params(b.alphas, b.width, r - 1)


@dataclass(frozen=True)
class Partition:
    """Blocks of classes sharing their ``(order - 1)``-step image, which
    ``images`` records per block.

    Blocks are listed by descending largest member; members are descending.
    """

    width: int
    order: int
    blocks: tuple[tuple[ParamVector, ...], ...]
    images: tuple[ParamVector, ...]

    @property
    def block_id(self) -> dict[ParamVector, int]:
        return {m: i for i, b in enumerate(self.blocks) for m in b}

    def block_of(self, alpha: ParamVector) -> tuple[ParamVector, ...]:
        for b in self.blocks:
            if alpha in b:
                return b
        raise KeyError(alpha)

    def image_of(self, alpha: ParamVector) -> ParamVector:
        for b, img in zip(self.blocks, self.images):
            if alpha in b:
                return img
        raise KeyError(alpha)

    def __len__(self) -> int:
        return len(self.blocks)

    def as_sets(self) -> frozenset[frozenset[tuple[int, ...]]]:
        return frozenset(frozenset(m.alphas for m in b) for b in self.blocks)

    def coarsens(self, finer: "Partition") -> bool:
        """Every block of ``finer`` lies inside one block of ``self``."""
        ids = {m.alphas: i for i, b in enumerate(self.blocks) for m in b}
        return all(len({ids[m.alphas] for m in b}) == 1 for b in finer.blocks)

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "order": self.order,
            "blocks": [[str(m) for m in b] for b in self.blocks],
            "images": [str(i) for i in self.images],
        }


def partition(
    width: int, r: int, classes: Optional[Iterable[ParamVector]] = None
) -> Partition:
    """Group ``classes`` (default: all classes of ``width``) by their
    ``(r - 1)``-step parameter image."""
    if r < 1:
        raise ValueError(f"order must be >= 1, got {r}")
    pool = (
        [c.alphas for c in classes]
        if classes is not None
        else enumerate_class_tuples(width)
    )
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t in pool:
        groups.setdefault(step_params(t, width, r - 1), []).append(t)
    items = sorted(groups.items(), key=lambda kv: max(kv[1]), reverse=True)
    blocks = tuple(
        tuple(ParamVector(t, width) for t in sorted(members, reverse=True))
        for _, members in items
    )
    images = tuple(ParamVector(img, width) for img, _ in items)
    return Partition(width, r, blocks, images)


@dataclass(frozen=True)
class SplitEvent:
    """Classes newly equivalent at ``order`` (not equivalent at ``order - 1``)."""

    order: int
    merged_block: tuple[ParamVector, ...]
    from_blocks: int


def new_equivalences(width: int, r: int, classes=None) -> list[SplitEvent]:
    if r < 2:
        return []
    prev = partition(width, r - 1, classes)
    cur = partition(width, r, classes)
    ids = prev.block_id
    out = []
    for b in cur.blocks:
        parts = {ids[m] for m in b}
        if len(parts) > 1:
            out.append(SplitEvent(r, b, len(parts)))
    return out


def stabilize(
    width: int, classes: Optional[Iterable[ParamVector]] = None, max_order: int = 10_000
) -> tuple[int, Partition]:
    """Least ``u`` with ``partition(u) == partition(u + 1)``, and that partition."""
    pool = list(classes) if classes is not None else None
    cur = partition(width, 1, pool)
    for u in range(1, max_order):
        nxt = partition(width, u + 1, pool)
        if nxt.as_sets() == cur.as_sets():
            return u, cur
        cur = nxt
    raise RuntimeError(f"no stabilization below order {max_order}")


def partition_json(p: Partition) -> str:
    return json.dumps(p.to_json(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# maps certifying R_2


@dataclass(frozen=True)
class EquivMap:
    """``alpha -> transform(alpha)`` with ``alpha R_order transform(alpha)`` on its domain.

    ``domain`` carries the listed constraints plus the family's.  The
    effective domain also requires the image to be an integral, valid
    parameter vector and, when ``derived_from`` names two catalog maps
    ``(K_i, K_j)``, that ``K_i(alpha) == K_j(transform(alpha))`` holds with both
    arguments inside their domains.
    """

    id: str
    width: int
    transform: tuple[AffineExpr, ...]
    domain: ParamDomain
    order: int = 2
    valid: bool = True
    group: str = ""
    derived_from: Optional[tuple[str, str]] = None
    examples: tuple[tuple[str, str], ...] = ()
    description: str = ""

    def apply_tuple(self, alphas: Sequence[int]) -> Optional[tuple[int, ...]]:
        try:
            out = tuple(e(alphas) for e in self.transform)
        except NotIntegral:
            return None
        try:
            ParamVector(out, self.width)
        except ValueError:
            return None
        return out

    def __call__(self, alpha: ParamVector) -> ParamVector:
        out = self.apply_tuple(alpha.alphas)
        if out is None or alpha not in self.domain:
            raise ValueError(f"{alpha} is outside the domain of {self.id}")
        return ParamVector(out, self.width)

    def pairs(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return _pairs(self)

    def points(self) -> list[tuple[int, ...]]:
        return [a for a, _ in _pairs(self)]

    def describe(self) -> str:
        body = ", ".join(map(str, self.transform))
        return f"{self.id}: ({body})"


@lru_cache(maxsize=None)
def _pairs(e: EquivMap) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    pts = class_matrix(e.width)
    cand = [tuple(int(v) for v in row) for row in pts[e.domain.mask(pts)]]
    fi = fj = None
    if e.derived_from is not None:
        from .named import named_function

        cat = cached_catalog(e.width)
        fi = named_function(cat, e.derived_from[0])
        fj = named_function(cat, e.derived_from[1])
    out = []
    for a in cand:
        b = e.apply_tuple(a)
        if b is None:
            continue
        if fi is not None:
            lhs = {f.map_tuple(a) for f in fi if a in f.domain}
            rhs = {f.map_tuple(b) for f in fj if b in f.domain}
            if not lhs & rhs:
                continue
        out.append((a, b))
    return out


def _tag(width: int, kind: str, r: Optional[int] = None) -> FamilyTag:
    return FamilyTag(kind, "even" if width % 2 == 0 else "odd", r)


def _entry(
    eid: str,
    width: int,
    tag: FamilyTag,
    map_text: str,
    dom_text: str = "",
    *,
    valid: bool = True,
    group: str = "",
    derived_from=None,
    examples=(),
    description: str = "",
) -> EquivMap:
    h = width // 2
    cons = tuple(family_constraints(tag, width)) + tuple(parse_constraints(dom_text, h) if dom_text else ())
    return EquivMap(
        eid,
        width,
        parse_map(map_text, h),
        ParamDomain(width, cons),
        2,
        valid,
        group,
        derived_from,
        tuple(tuple(x.split("~")) for x in examples),
        description,
    )


# three-parameter tables: (id, map, domain, valid)
SET_I = [
    ("e2-0", "a, b, c", "", True),
    ("e2-1", "10-a, b, c", "a+b<=10", True),
    ("e2-2", "a, 9-b, c", "a+b>=9, b+c<=9", True),
    ("e2-3", "a, b, 10-c", "b+c>=10", True),
    ("e2-4", "10-a, 9-b, c", "a<=b+1, b+c<=9", True),
    ("e2-5", "10-a, b, 10-c", "a=b=c=5", True),
    ("n2-6", "a, 9-b, 10-c", "a+b>=9, c>=b+1", False),
    ("n2-7", "10-a, 9-b, 10-c", "a<=b+1, c>=b+1", False),
]
SET_II = [
    ("e2-0", "a, b, 0", "", True),
    ("e2-8", "10-a, b, 0", "a+b<=10", True),
    ("e2-9", "a, 10-b, 0", "a+b>=10", True),
    ("e2-10", "10-a, 10-b, 0", "a=b", True),
]
SET_III = [
    ("e2-0", "a, 0, 0", "", True),
    ("e2-11", "11-a, 0, 0", "a>=2", True),
]
SET_KIND = {"I": ("F1", None, SET_I), "II": ("F2", 3, SET_II), "III": ("F3", None, SET_III)}

# width 6: the reversal map and its products with the Set I maps
GROUP_IV = [
    ("e2-12", "10-c, 9-b, 10-a", "1<=b<=8, 1<=c<=8, a>=b+1", ()),
    ("e2-1*e2-12", "c, 9-b, 10-a", "a>=b+1, b+c>=9", ("963~331",)),
    ("e2-2*e2-12", "10-c, b, 10-a", "a+b>=10, b+c<=10", ("963~761",)),
    ("e2-3*e2-12", "10-c, 9-b, a", "a+b<=9", ("221~972",)),
    ("e2-4*e2-12", "c, b, 10-a", "a+b>=10, b=c", ("933~331",)),
    ("n2-6*e2-12", "10-c, b, a", "a=b, b+c<=10", ("772~877",)),
    ("n2-7*e2-12", "c, b, a", "a=b=c", ("333~333",)),
]

# width 7: (id, kind, map, source pair, examples)
WIDTH7 = [
    ("e2-61", "F1", "a, (b+c)/2, 10-b", ("K1", "K7"), ("986~972", "975~963", "875~863")),
    ("e2-62", "F1", "(a+b+1)/2, b+c-a+2, 11-a", ("K1", "K4"), ("986~972", "985~962", "966~852", "875~863")),
    ("e2-63", "F1", "a, 10-c, 11-b", ("K4", "K13"),
     ("981~993", "971~994", "972~984", "961~995", "962~985", "872~884", "862~885", "863~875", "763~775")),
    ("e2-64", "F1", "a, 10-c, b+2", ("K5", "K13"),
     ("931~995", "921~994", "911~993", "932~985", "922~984", "832~885", "822~884", "833~875", "733~775")),
    ("e2-65", "F2", "11-b, a+b-3, 21-2a-b", ("K27", "K1"), ("720~965", "630~866")),
    ("e2-66", "F2", "11-b, (18-a)/2, 13-a-b", ("K27", "K7"), ("630~864",)),
    ("e2-67", "F2", "a+b, 18-2a-b, b", ("K27", "K6"), ("610~751", "520~762")),
    ("e2-68", "F2", "20-2a-b, 10-a-b, b", ("K27", "K11"), ("710~521", "620~622")),
    ("e2-69", "F2", "11-b, a+b-3, 12-a", ("K26", "K1"), ("730~875", "720~965", "630~866")),
    ("e2-70", "F2", "a, 19-a-b, a+2b-10", ("K25", "K1"), ("930~975", "840~876")),
    ("e2-71", "F2", "b+1, a-4, b-a+3", ("K23", "K12"), ("880~943", "770~833")),
    ("e2-72", "F2", "(a+9)/2, 20-2b, 10-b", ("K23", "K4"), ("770~863",)),
    # solving the source pair gives 11-a for the last component (960 -> 862)
    ("e2-73", "F2", "(10+b)/2, 21-a-b, 11-a", ("K22", "K4"), ("960~862",)),
]

WIDTH5 = [
    ("A5:e2-5", "F1", "(a+b+1)/2, 11-a", ("K1", "K17"), ("85~73", "96~82")),
    ("A5:e2-6", "F3", "(11-a)/2, a", ("K26", "K14"), ("30~43",)),
    ("A5:e2-7", "F3", "11-a, 2a-3", ("K26", "K1"), ("40~75",)),
]


def set_maps(name: str, width: int) -> list[EquivMap]:
    """Set I, II or III at a width with three parameters."""
    if name not in SET_KIND:
        raise KeyError(f"unknown set {name!r}; expected one of I, II, III")
    if width // 2 != 3:
        raise ValueError(f"set {name} is defined for widths 6 and 7, got {width}")
    kind, r, rows = SET_KIND[name]
    tag = _tag(width, kind, r)
    return [
        _entry(eid, width, tag, m, d, valid=ok, group=f"set-{name}")
        for eid, m, d, ok in rows
    ]


def _join(parts: Sequence[str]) -> str:
    return ", ".join(parts)


def general_maps(width: int) -> list[EquivMap]:
    """The transposition families and reversal maps instantiated at ``width``."""
    h = width // 2
    v = "abcdefghi"
    out: list[EquivMap] = []
    f3 = _tag(width, "F3")
    out.append(_entry("r2-3", width, f3, _join(["11-a"] + ["0"] * (h - 1)), "a>=2", group="general"))
    for k in range(2, h + 1):
        tag = _tag(width, "F1") if k == h else _tag(width, "F2", k + 1)
        sfx = f"@{tag.kind}" if k == h else f"@F2({k + 1})"
        ident = [v[s] for s in range(k)] + ["0"] * (h - k)

        def with_(changes: dict[int, str]) -> str:
            parts = list(ident)
            for s, text in changes.items():
                parts[s - 1] = text
            return _join(parts)

        def add(eid, changes, dom):
            out.append(_entry(eid + sfx, width, tag, with_(changes), dom, group="general"))

        add("r2-11", {1: "10-a"}, "a+b<=10")
        for s in range(2, k):
            add(f"r2-12.s{s}", {s: f"9-{v[s - 1]}"}, f"{v[s - 2]}+{v[s - 1]}>=9, {v[s - 1]}+{v[s]}<=9")
        add("r2-13", {k: f"10-{v[k - 1]}"}, f"{v[k - 2]}+{v[k - 1]}>=10")
        if k >= 3:
            add("r2-14", {1: "10-a", k: f"10-{v[k - 1]}"}, "=".join(v[:k]) + "=5")
        for s in range(2, k):
            for t in range(1, k - s):
                block = range(s, s + t + 1)
                eqs = "=".join(v[j - 1] for j in block)
                add(
                    f"r2-15.s{s}.t{t}",
                    {j: f"9-{v[j - 1]}" for j in block},
                    f"{v[s - 2]}+{v[s - 1]}>=9, {v[s + t - 1]}+{v[s + t]}<=9, {eqs}",
                )
        for r in range(3, k):
            changes = {1: "10-a"}
            changes.update({j: f"9-{v[j - 1]}" for j in range(3, r + 1)})
            add(f"r2-16.r{r}", changes, "=".join(v[:r]) + f"=5, {v[r]}<=9-{v[r - 1]}")
        for r in range(2, k):
            changes = {1: "10-a"}
            changes.update({j: f"9-{v[j - 1]}" for j in range(2, r + 1)})
            eqs = "=".join(v[1:r])
            dom = "a-1<=b<=a" + (f", {eqs}" if r > 2 else "")
            add(f"r2-17.r{r}", changes, dom)
    if width % 2 == 0 and h >= 2:
        rev = [f"10-{v[h - 1]}"] + [f"9-{v[s - 1]}" for s in range(h - 1, 1, -1)] + ["10-a"]
        out.append(_entry("r2-4", width, _tag(width, "F1"), _join(rev), "a>=b+1", group="general"))
    if width == 6:
        f3 = _tag(6, "F3")
        out.append(_entry("r2-51", 6, f3, "(a+9)/2, (19-a)/2, 5", "", group="general",
                          examples=("500~775", "700~865", "900~955")))
        out.append(_entry("r2-52", 6, f3, "(20-a)/2, (8+a)/2, 5", "", group="general",
                          examples=("200~955", "400~865", "600~775")))
    return out


def catalog_r2(width: int) -> list[EquivMap]:
    """Built-in R_2 certificates applicable at ``width``."""
    out: list[EquivMap] = []
    if width // 2 == 3:
        for name in ("I", "II", "III"):
            out += set_maps(name, width)
    if width == 6:
        f1 = _tag(6, "F1")
        out += [_entry(eid, 6, f1, m, d, group="width-6", examples=ex) for eid, m, d, ex in GROUP_IV]
    if width == 7:
        for eid, kind, m, src, ex in WIDTH7:
            tag = _tag(7, kind, 3 if kind == "F2" else None)
            out.append(_entry(eid, 7, tag, m, "", group="width-7", derived_from=src, examples=ex))
    if width == 5:
        for eid, kind, m, src, ex in WIDTH5:
            out.append(_entry(eid, 5, _tag(5, kind), m, "", group="width-5", derived_from=src, examples=ex))
    out += general_maps(width)
    return out


def find_map(maps: Sequence[EquivMap], eid: str, group: Optional[str] = None) -> EquivMap:
    for m in maps:
        if m.id == eid and (group is None or m.group == group):
            return m
    raise KeyError(eid)


# ---------------------------------------------------------------------------
# verification


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class CatalogReport:
    width: int
    checked_points: int
    unsound: list[tuple[str, tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    uncovered: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    oracle_pairs: int = 0
    failed_examples: list[tuple[str, str, str]] = field(default_factory=list)
    nonempty_invalid: list[str] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return not self.unsound

    @property
    def complete(self) -> bool:
        return not self.uncovered

    def summary(self) -> str:
        return (
            f"w={self.width}: {self.checked_points} points checked, "
            f"{len(self.unsound)} unsound, {len(self.uncovered)} of {self.oracle_pairs} "
            f"oracle pairs uncovered, {len(self.failed_examples)} failed examples"
        )


def verify_catalog(width: int, maps: Optional[Sequence[EquivMap]] = None) -> CatalogReport:
    """Check every certificate against the step oracle and test whether the
    certificates, closed under transitivity, generate every R_2 pair."""
    maps = list(maps) if maps is not None else catalog_r2(width)
    succ = _successors(width)
    report = CatalogReport(width, 0)
    uf = _UnionFind(succ)
    for m in maps:
        pairs = m.pairs()
        if not m.valid:
            if pairs:
                report.nonempty_invalid.append(m.id)
            continue
        have = set(pairs)
        for a, b in pairs:
            report.checked_points += 1
            if step_params(a, width, m.order - 1) != step_params(b, width, m.order - 1):
                report.unsound.append((m.id, a, b))
            else:
                uf.union(a, b)
        for x, y in m.examples:
            pair = (ParamVector.parse(x, width).alphas, ParamVector.parse(y, width).alphas)
            if pair not in have:
                report.failed_examples.append((m.id, x, y))
    blocks: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t, s in succ.items():
        blocks.setdefault(s, []).append(t)
    for members in blocks.values():
        members.sort(reverse=True)
        n = len(members)
        report.oracle_pairs += n * (n - 1) // 2
        for i in range(n):
            for j in range(i + 1, n):
                if uf.find(members[i]) != uf.find(members[j]):
                    report.uncovered.append((members[i], members[j]))
    return report


def _invert_affine(exprs: Sequence[AffineExpr]) -> Optional[tuple[AffineExpr, ...]]:
    """Inverse of an affine map on h parameters, or None when it is singular."""
    h = len(exprs)
    rows = [
        [Fraction(e.coeffs[s + 1], e.divisor) for s in range(h)]
        + [Fraction(int(i == j)) for j in range(h)]
        for i, e in enumerate(exprs)
    ]
    for col in range(h):
        pivot = next((r for r in range(col, h) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(h):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    inverse = [row[h:] for row in rows]
    offsets = [Fraction(e.coeffs[0], e.divisor) for e in exprs]
    out = []
    for i in range(h):
        # x = M^-1 (y - c)
        const = -sum(inverse[i][j] * offsets[j] for j in range(h))
        fr = [const] + list(inverse[i])
        d = lcm(*(f.denominator for f in fr))
        out.append(AffineExpr(tuple(int(f * d) for f in fr), d).normalized())
    return tuple(out)


def _solve_for_target(fi, fj, k: int) -> Optional[tuple[AffineExpr, ...]]:
    """``beta`` as an affine function of ``alpha`` from ``K_i(alpha) = K_j(beta)``,
    with beta's trailing ``h - k`` parameters fixed at zero."""
    h = fj.h
    restricted = [AffineExpr(e.coeffs[: k + 1], e.divisor) for e in fj.output]
    for rows in combinations(range(h), k):
        inv = _invert_affine([restricted[i] for i in rows])
        if inv is None:
            continue
        picked = [fi.output[i] for i in rows]
        head = tuple(e.substitute(picked) for e in inv)
        return head + tuple(AffineExpr.const(0, h) for _ in range(h - k))
    return None


@dataclass(frozen=True)
class Bridge:
    """An R_2 link ``alpha -> K_j^-1(K_i(alpha))`` between two catalog functions."""

    source: str
    target: str
    transform: tuple[AffineExpr, ...]
    pair: tuple[tuple[int, ...], tuple[int, ...]]

    def describe(self) -> str:
        a, b = ("".join(map(str, t)) for t in self.pair)
        body = ", ".join(map(str, self.transform))
        return f"{a} ~ {b} via ({body}) from {self.source} / {self.target}"


def bridge_links(
    width: int, pairs: Iterable[tuple[tuple[int, ...], tuple[int, ...]]]
) -> list[Bridge]:
    """Explain uncovered R_2 pairs by solving ``K_i(alpha) = K_j(beta)`` for beta.

    Each pair gets the first (K_i, K_j) combination from the derived catalog
    that contains it and whose K_j is invertible; pairs with no such
    combination are skipped.
    """
    cat = cached_catalog(width)
    out = []
    for a, b in pairs:
        pa, pb = ParamVector(a, width), ParamVector(b, width)
        found = None
        for fi in cat.containing(pa):
            for fj in cat.containing(pb):
                if fi.map_tuple(a) != fj.map_tuple(b):
                    continue
                transform = _solve_for_target(fi, fj, pb.nonzero)
                if transform is None:
                    continue
                if tuple(e(a) for e in transform) == b:
                    found = Bridge(fi.id, fj.id, transform, (a, b))
                    break
            if found:
                break
        if found:
            out.append(found)
    return out


# ---------------------------------------------------------------------------
# products and group structure


@dataclass(frozen=True)
class ProductResult:
    f: str
    g: str
    transform: tuple[AffineExpr, ...]
    match: Optional[str]
    domain_size: int

    @property
    def vacuous(self) -> bool:
        return self.domain_size == 0

    @property
    def label(self) -> str:
        return self.match if self.match is not None else "outside"


def _same_transform(a: Sequence[AffineExpr], b: Sequence[AffineExpr]) -> bool:
    return tuple(e.normalized() for e in a) == tuple(e.normalized() for e in b)


def product(f: EquivMap, g: EquivMap, candidates: Sequence[EquivMap] = ()) -> ProductResult:
    """``(f x g)(alpha) = f(g(alpha))``, matched formally against ``candidates``."""
    if f.width != g.width:
        raise WidthMismatch(f"{f.id} and {g.id} have different widths")
    transform = tuple(e.substitute(g.transform) for e in f.transform)
    f_points = set(f.points())
    size = sum(1 for _, b in g.pairs() if b in f_points)
    match = next((c.id for c in candidates if _same_transform(c.transform, transform)), None)
    return ProductResult(f.id, g.id, transform, match, size)


@dataclass
class ProductTable:
    elements: list[str]
    table: dict[tuple[str, str], str]
    valid: dict[str, bool]
    identity: Optional[str]
    closed: bool
    abelian: bool
    involutive: bool
    group: str

    def rows(self) -> list[list[str]]:
        return [[self.table[(f, g)] for g in self.elements] for f in self.elements]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["f\\g"] + self.elements)
        for f, row in zip(self.elements, self.rows()):
            writer.writerow([f] + row)
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "elements": self.elements,
            "table": self.rows(),
            "group": self.group,
            "closed": self.closed,
            "abelian": self.abelian,
        }


def group_classify(maps: Sequence[EquivMap]) -> ProductTable:
    """Product table over ``maps`` with closure, identity and isomorphism type.

    The set is closed when every product of two valid certificates is again a
    valid certificate in the set; only closed sets are classified.
    """
    ids = [m.id for m in maps]
    valid = {m.id: m.valid for m in maps}
    table = {(f.id, g.id): product(f, g, maps).label for f in maps for g in maps}
    identity = next(
        (e for e in ids if all(table[(e, x)] == x and table[(x, e)] == x for x in ids)), None
    )
    closed = all(
        table[(f, g)] in valid and valid[table[(f, g)]]
        for f in ids
        for g in ids
        if valid[f] and valid[g]
    )
    abelian = all(table[(f, g)] == table[(g, f)] for f in ids for g in ids)
    involutive = identity is not None and all(table[(x, x)] == identity for x in ids)
    group = "none"
    if closed and identity is not None and all(valid.values()):
        orders = []
        for x in ids:
            k, y = 1, x
            while y != identity and k <= len(ids):
                y = table[(x, y)]
                k += 1
            orders.append(k)
        profile = sorted(orders)
        if profile == [1, 2]:
            group = "Z2"
        elif profile == [1, 2, 2, 2] and abelian:
            group = "Klein"
        elif len(ids) == 1:
            group = "trivial"
    return ProductTable(ids, table, valid, identity, closed, abelian, involutive, group)


# ---------------------------------------------------------------------------
# higher orders


@dataclass(frozen=True)
class HigherFact:
    label: str
    width: int
    first: ParamVector
    second: ParamVector
    order: int
    holds: bool
    holds_below: bool

    @property
    def new(self) -> bool:
        return self.holds and not self.holds_below


HIGHER_FACTS = {
    6: [
        ("R3 (15-a) family", "955", "655", 3),
        ("R3 (15-a) family", "865", "765", 3),
        ("R3 (15-a) family", "855", "755", 3),
        ("R3 (15-a) family", "866", "766", 3),
        ("R3 (15-c) family", "988", "987", 3),
        ("R3 from K31/K7", "900", "655", 3),
    ],
    7: [
        ("R3 (28-2b-c) family", "987", "985", 3),
        ("R4 from K4/K4", "981", "961", 4),
        ("R7 pair", "533", "621", 7),
    ],
}


def higher_equiv_examples(width: int) -> list[HigherFact]:
    if width not in HIGHER_FACTS:
        raise ValueError(f"no higher-order examples recorded for width {width}")
    out = []
    for label, a, b, r in HIGHER_FACTS[width]:
        pa, pb = ParamVector.parse(a, width), ParamVector.parse(b, width)
        out.append(
            HigherFact(label, width, pa, pb, r, class_equiv(pa, pb, r), class_equiv(pa, pb, r - 1))
        )
    return out
