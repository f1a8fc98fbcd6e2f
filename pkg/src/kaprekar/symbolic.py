"""Piecewise-affine parameter maps ``alpha -> alpha'`` and their domains.

Each catalog function pairs a descending ordering of the symbolic image
digits with the affine map it induces on the parameters, valid on the
integer points where that ordering really is descending.  Feasibility is
decided by brute force over the (small) lattice of parametric classes.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import KaprekarError, iterate, kaprekar_step
from .parametric import (
    FamilyTag,
    ParamVector,
    apply_f,
    enumerate_class_tuples,
    family_tags,
    image_digits,
)

VARIABLES = "abcdefghi"

# widths above this skip the tie-inclusive ordering count (it grows ~w!/h!)
RAW_ORDERING_LIMIT = 9


class OutOfDomain(KaprekarError):
    pass


class NotAFixedPoint(KaprekarError):
    pass


class NotIntegral(KaprekarError):
    pass


@dataclass(frozen=True)
class AffineExpr:
    """``(constant + sum_s coeffs[s] * alpha^s) / divisor``.

    ``coeffs`` holds ``[constant, c1, ..., ch]``; the divisor is 1 for every
    catalog function and 2 for a handful of equivalence maps.
    """

    coeffs: tuple[int, ...]
    divisor: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.divisor < 1:
            raise ValueError("divisor must be positive")

    @classmethod
    def const(cls, value: int, h: int) -> "AffineExpr":
        return cls((value,) + (0,) * h)

    @classmethod
    def var(cls, s: int, h: int, scale: int = 1, constant: int = 0) -> "AffineExpr":
        """``constant + scale * alpha^s`` with 1-based ``s``."""
        c = [constant] + [0] * h
        c[s] = scale
        return cls(tuple(c))

    @property
    def h(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    @property
    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    def numerator(self, alphas: Sequence[int]) -> int:
        c = self.coeffs
        return c[0] + sum(c[s + 1] * alphas[s] for s in range(len(c) - 1))

    def __call__(self, alphas: Sequence[int]) -> int:
        num = self.numerator(alphas)
        if num % self.divisor:
            raise NotIntegral(f"{self} is not integral at {tuple(alphas)}")
        return num // self.divisor

    def evaluate_many(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values and integrality mask over a ``(n, h)`` point matrix."""
        c = np.asarray(self.coeffs, dtype=np.int64)
        num = points @ c[1:] + c[0]
        ok = num % self.divisor == 0
        return num // self.divisor, ok

    def _combine(self, other: "AffineExpr", sign: int) -> "AffineExpr":
        d = lcm(self.divisor, other.divisor)
        a, b = d // self.divisor, d // other.divisor
        return AffineExpr(
            tuple(a * x + sign * b * y for x, y in zip(self.coeffs, other.coeffs)), d
        ).normalized()

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return AffineExpr(tuple(-c for c in self.coeffs), self.divisor)

    def normalized(self) -> "AffineExpr":
        from math import gcd

        g = self.divisor
        for c in self.coeffs:
            g = gcd(g, c)
        if g in (0, 1):
            return self
        return AffineExpr(tuple(c // g for c in self.coeffs), self.divisor // g)

    def substitute(self, exprs: Sequence["AffineExpr"]) -> "AffineExpr":
        """Replace ``alpha^s`` by ``exprs[s-1]`` (affine composition)."""
        h = exprs[0].h if exprs else self.h
        acc = [Fraction(self.coeffs[0])] + [Fraction(0)] * h
        for s, c in enumerate(self.coeffs[1:]):
            if not c:
                continue
            e = exprs[s]
            for t, ec in enumerate(e.coeffs):
                acc[t] += Fraction(c * ec, e.divisor)
        d = lcm(self.divisor, *(f.denominator for f in acc))
        nums = tuple(int(f * d) for f in acc)
        return AffineExpr(nums, d * self.divisor).normalized()

    def render(self, names: str = VARIABLES) -> str:
        parts = []
        for s, c in enumerate(self.coeffs[1:]):
            if not c:
                continue
            term = names[s] if abs(c) == 1 else f"{abs(c)}{names[s]}"
            parts.append(("-" if c < 0 else "+") + term)
        if self.coeffs[0] or not parts:
            c = self.coeffs[0]
            parts.insert(0, ("-" if c < 0 else "+") + str(abs(c)))
        text = "".join(parts).lstrip("+")
        if self.divisor != 1:
            text = f"({text})/{self.divisor}"
        return text

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LinearConstraint:
    """``expr >= 0`` (relation ``ge``) or ``expr == 0`` (relation ``eq``)."""

    expr: AffineExpr
    relation: str = "ge"

    def __post_init__(self):
        if self.relation not in ("ge", "eq"):
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, alphas: Sequence[int]) -> bool:
        v = self.expr.numerator(alphas)
        return v >= 0 if self.relation == "ge" else v == 0

    def mask(self, points: np.ndarray) -> np.ndarray:
        c = np.asarray(self.expr.coeffs, dtype=np.int64)
        v = points @ c[1:] + c[0]
        return v >= 0 if self.relation == "ge" else v == 0

    @property
    def trivial(self) -> bool:
        """True when the constraint holds everywhere."""
        if not self.expr.is_constant:
            return False
        c = self.expr.constant
        return c >= 0 if self.relation == "ge" else c == 0

    def __str__(self) -> str:
        return f"{self.expr} {'>=' if self.relation == 'ge' else '=='} 0"

    def to_json(self) -> dict:
        return {"relation": self.relation, "coeffs": list(self.expr.coeffs), "text": str(self)}


def _tokenize_side(text: str, h: int) -> AffineExpr:
    text = text.replace(" ", "")
    m = re.fullmatch(r"\((.*)\)/(\d+)", text)
    if m:
        inner = _tokenize_side(m.group(1), h)
        return AffineExpr(inner.coeffs, inner.divisor * int(m.group(2))).normalized()
    coeffs = [0] * (h + 1)
    pos = 0
    for m in re.finditer(r"([+-]?)(\d*)([a-i]?)(?:/(\d+))?", text):
        if not m.group(0):
            continue
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4):
            raise ValueError(f"use (expr)/d for fractions: {text!r}")
        if m.group(3):
            s = VARIABLES.index(m.group(3)) + 1
            if s > h:
                raise ValueError(f"variable {m.group(3)} beyond h={h}")
            coeffs[s] += sign * (int(m.group(2)) if m.group(2) else 1)
        elif m.group(2):
            coeffs[0] += sign * int(m.group(2))
        else:
            raise ValueError(f"cannot parse {text!r}")
    if pos != len(text):
        raise ValueError(f"cannot parse {text!r}")
    return AffineExpr(tuple(coeffs))


def parse_expr(text: str, h: int) -> AffineExpr:
    """Parse ``"10-2c"``, ``"a+b-9"`` or ``"(a+b+1)/2"``; a..i name alpha^1..alpha^9."""
    return _tokenize_side(text, h)


def parse_map(text: str, h: int) -> tuple[AffineExpr, ...]:
    exprs = tuple(parse_expr(t, h) for t in _split_top(text))
    if len(exprs) != h:
        raise ValueError(f"map {text!r} has {len(exprs)} components, expected {h}")
    return exprs


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [t.strip() for t in out if t.strip()]


def parse_constraints(text: str, h: int) -> list[LinearConstraint]:
    """Parse comma-separated chains such as ``"9<=a+b<=10, a>=b+1, a=b=5"``."""
    out = []
    for part in _split_top(text):
        pieces = re.split(r"(<=|>=|=|<|>)", part.replace(" ", ""))
        for i in range(1, len(pieces), 2):
            lhs = parse_expr(pieces[i - 1], h)
            rhs = parse_expr(pieces[i + 1], h)
            op = pieces[i]
            diff = lhs - rhs
            if diff.divisor != 1:
                diff = AffineExpr(diff.coeffs)
            if op == ">=":
                out.append(LinearConstraint(diff))
            elif op == "<=":
                out.append(LinearConstraint(-diff))
            elif op == ">":
                out.append(LinearConstraint(diff - AffineExpr.const(1, h)))
            elif op == "<":
                out.append(LinearConstraint(-diff - AffineExpr.const(1, h)))
            else:
                out.append(LinearConstraint(diff, "eq"))
    return out


@lru_cache(maxsize=None)
def class_matrix(width: int) -> np.ndarray:
    """All parametric classes of ``width`` as rows, descending lexicographic."""
    arr = np.array(enumerate_class_tuples(width), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def structural_constraints(h: int) -> list[LinearConstraint]:
    out = [LinearConstraint(AffineExpr.var(1, h, 1, -1))]
    for s in range(1, h + 1):
        out.append(LinearConstraint(AffineExpr.var(s, h)))
        out.append(LinearConstraint(AffineExpr.var(s, h, -1, 9)))
    for s in range(1, h):
        out.append(LinearConstraint(AffineExpr.var(s, h) - AffineExpr.var(s + 1, h)))
    return out


def family_constraints(tag: FamilyTag, width: int) -> list[LinearConstraint]:
    h = width // 2
    k = tag.nonzero_count(width)
    out = [LinearConstraint(AffineExpr.var(k, h, 1, -1))]
    if k < h:
        out.append(LinearConstraint(AffineExpr.var(k + 1, h), "eq"))
    return out


def _dedupe(constraints: Iterable[LinearConstraint]) -> tuple[LinearConstraint, ...]:
    seen = {}
    for c in constraints:
        if c.trivial:
            continue
        seen.setdefault((c.expr, c.relation), c)
    return tuple(seen.values())


@dataclass(frozen=True)
class ParamDomain:
    """A conjunction of linear constraints over the classes of ``width``.

    The structural constraints (range and non-increasing order) are always
    part of the conjunction.
    """

    width: int
    constraints: tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        h = self.width // 2
        for c in self.constraints:
            if c.expr.h != h:
                raise ValueError(f"constraint {c} is not over {h} parameters")
        merged = _dedupe(tuple(structural_constraints(h)) + tuple(self.constraints))
        object.__setattr__(self, "constraints", merged)

    @property
    def h(self) -> int:
        return self.width // 2

    def extra_constraints(self) -> tuple[LinearConstraint, ...]:
        base = set((c.expr, c.relation) for c in structural_constraints(self.h))
        return tuple(c for c in self.constraints if (c.expr, c.relation) not in base)

    def failing(self, alphas: Sequence[int]) -> Optional[LinearConstraint]:
        for c in self.constraints:
            if not c.holds(alphas):
                return c
        return None

    def __contains__(self, alpha) -> bool:
        alphas = alpha.alphas if isinstance(alpha, ParamVector) else tuple(alpha)
        return self.failing(alphas) is None

    def mask(self, points: Optional[np.ndarray] = None) -> np.ndarray:
        if points is None:
            points = class_matrix(self.width)
        ok = np.ones(len(points), dtype=bool)
        for c in self.constraints:
            ok &= c.mask(points)
        return ok

    def feasible_tuples(self) -> list[tuple[int, ...]]:
        pts = class_matrix(self.width)
        return [tuple(int(v) for v in row) for row in pts[self.mask(pts)]]

    def feasible_points(self) -> list[ParamVector]:
        return [ParamVector(t, self.width) for t in self.feasible_tuples()]

    def is_empty(self) -> bool:
        return not self.mask().any()

    def intersect(self, other: "ParamDomain") -> "ParamDomain":
        if other.width != self.width:
            raise ValueError("width mismatch")
        return ParamDomain(self.width, self.constraints + other.constraints)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.extra_constraints()]


def symbolic_image(tag: FamilyTag, width: int) -> tuple[AffineExpr, ...]:
    """The ``width`` digit slots of the image as affine expressions."""
    tag.check_width(width)
    h = width // 2
    k = tag.nonzero_count(width)
    head = [AffineExpr.var(s, h) for s in range(1, k)]
    head.append(AffineExpr.var(k, h, 1, -1))
    middle = [AffineExpr.const(9, h)] * (width - 2 * k)
    tail = [AffineExpr.var(s, h, -1, 9) for s in range(k, 1, -1)]
    tail.append(AffineExpr.var(1, h, -1, 10))
    return tuple(head + middle + tail)


def variable_slots(slots: Sequence[AffineExpr]) -> list[int]:
    return [i for i, s in enumerate(slots) if not s.is_constant]


def format_permutation(perm: Sequence[int]) -> str:
    """1-based variable-slot order; compact digits below 10 slots."""
    labels = [str(p + 1) for p in perm]
    return "".join(labels) if len(labels) < 10 else ".".join(labels)


@dataclass(frozen=True)
class SymbolicKFn:
    """One parametric map ``K_i``: an ordering of the image slots, the map
    it induces on the parameters and the domain where the ordering holds.

    ``permutation`` lists the non-constant image slots (0-based, image order)
    from largest to smallest; the constant nines always lead.
    """

    id: str
    width: int
    family: FamilyTag
    permutation: tuple[int, ...]
    output: tuple[AffineExpr, ...]
    domain: ParamDomain
    aliases: tuple[str, ...] = ()
    canonical: bool = True

    @property
    def h(self) -> int:
        return self.width // 2

    def __call__(self, alpha: ParamVector) -> ParamVector:
        return eval_k(self, alpha)

    def map_tuple(self, alphas: Sequence[int]) -> tuple[int, ...]:
        return tuple(e(alphas) for e in self.output)

    def feasible_tuples(self) -> list[tuple[int, ...]]:
        return self.domain.feasible_tuples()

    def describe(self) -> str:
        body = ", ".join(map(str, self.output))
        return f"{self.id} ({'/'.join(self.aliases) or '-'}): ({body})"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "aliases": list(self.aliases),
            "family": str(self.family),
            "permutation": format_permutation(self.permutation),
            "canonical": self.canonical,
            "output": [list(e.coeffs) for e in self.output],
            "map": ", ".join(map(str, self.output)),
            "domain": self.domain.to_json(),
            "feasible_points": int(self.domain.mask().sum()),
        }


def ordering_function(
    tag: FamilyTag,
    width: int,
    var_perm: Sequence[int],
    canonical: bool = True,
) -> SymbolicKFn:
    """Build the catalog function for one ordering of the variable slots."""
    slots = symbolic_image(tag, width)
    h = width // 2
    var = variable_slots(slots)
    if sorted(var_perm) != list(range(len(var))):
        raise ValueError(f"not a permutation of {len(var)} slots: {var_perm}")
    full = [i for i, s in enumerate(slots) if s.is_constant]
    full += [var[p] for p in var_perm]
    ordered = [slots[i] for i in full]
    output = tuple(ordered[s] - ordered[width - 1 - s] for s in range(h))
    ineqs = [LinearConstraint(a - b) for a, b in zip(ordered, ordered[1:])]
    domain = ParamDomain(width, tuple(family_constraints(tag, width)) + tuple(ineqs))
    fid = f"{tag}:{format_permutation(var_perm)}"
    return SymbolicKFn(fid, width, tag, tuple(var_perm), output, domain, (), canonical)


def _family_points(tag: FamilyTag, width: int) -> np.ndarray:
    pts = class_matrix(width)
    return pts[ParamDomain(width, tuple(family_constraints(tag, width))).mask(pts)]


def _slot_values(slots: Sequence[AffineExpr], pts: np.ndarray) -> np.ndarray:
    return np.stack([s.evaluate_many(pts)[0] for s in slots], axis=1)


def canonical_orderings(tag: FamilyTag, width: int) -> list[tuple[int, ...]]:
    """Variable-slot orderings produced by a stable descending sort.

    Ties are broken by original image position, so an ordering that only
    differs from another by swapping slots that are equal wherever it holds
    is never produced.
    """
    slots = symbolic_image(tag, width)
    var = variable_slots(slots)
    pts = _family_points(tag, width)
    vals = _slot_values([slots[i] for i in var], pts)
    m = len(var)
    keys = -vals * m + np.arange(m)
    perms = np.argsort(keys, axis=1, kind="stable")
    return sorted({tuple(int(x) for x in row) for row in np.unique(perms, axis=0)})


def raw_orderings(tag: FamilyTag, width: int) -> Iterable[tuple[int, ...]]:
    """Every ordering of the variable slots that is descending (ties allowed)
    at one or more classes of the family; depth-first with lattice pruning."""
    slots = symbolic_image(tag, width)
    var = variable_slots(slots)
    pts = _family_points(tag, width)
    vals = _slot_values([slots[i] for i in var], pts)
    m = len(var)

    def walk(prefix, remaining, mask):
        if not remaining:
            yield tuple(prefix)
            return
        for j in remaining:
            sub = mask if not prefix else mask & (vals[:, prefix[-1]] >= vals[:, j])
            if sub.any():
                yield from walk(prefix + [j], [x for x in remaining if x != j], sub)

    yield from walk([], list(range(m)), np.ones(len(pts), dtype=bool))


def _derive_family(args) -> tuple[str, list[SymbolicKFn], Optional[int]]:
    tag, width, raw_limit = args
    fns = [ordering_function(tag, width, p) for p in canonical_orderings(tag, width)]
    raw = None
    if width <= raw_limit:
        raw = sum(1 for _ in raw_orderings(tag, width))
    return str(tag), fns, raw


@dataclass
class KCatalog:
    """All canonical ``K_i`` functions at one width, plus counts.

    ``raw_counts`` is the number of tie-inclusive orderings per family
    (``None`` above the enumeration limit); ``counts`` is the number of
    distinct catalog entries per family.
    """

    width: int
    functions: list[SymbolicKFn]
    raw_counts: dict[str, Optional[int]] = field(default_factory=dict)
    named_raw: dict[str, SymbolicKFn] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for fn in self.functions:
            out[str(fn.family)] = out.get(str(fn.family), 0) + 1
        return out

    def family_counts(self) -> dict[str, int]:
        """Counts keyed by kind (F1, F2, F3), summing F2 over r."""
        out = {"F3": 0, "F2": 0, "F1": 0}
        for fn in self.functions:
            out[fn.family.kind] += 1
        return out

    def raw_family_counts(self) -> dict[str, Optional[int]]:
        out: dict[str, Optional[int]] = {"F3": 0, "F2": 0, "F1": 0}
        for tag, n in self.raw_counts.items():
            kind = tag[:2]
            out[kind] = None if n is None or out[kind] is None else out[kind] + n
        return out

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)

    def get(self, fid: str) -> SymbolicKFn:
        for fn in self.functions:
            if fn.id == fid:
                return fn
        raise KeyError(fid)

    def containing(self, alpha: ParamVector) -> list[SymbolicKFn]:
        return [fn for fn in self.functions if alpha in fn.domain]

    def aliased(self, name: str) -> list[SymbolicKFn]:
        return [fn for fn in self.functions if name in fn.aliases]

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "counts": self.family_counts(),
            "raw_counts": self.raw_family_counts(),
            "functions": [fn.to_json() for fn in self.functions],
        }


def derive_k_functions(
    width: int, n_jobs: int = 1, raw_limit: int = RAW_ORDERING_LIMIT
) -> KCatalog:
    """Derive the catalog of parametric maps for every family at ``width``."""
    if width < 2:
        raise ValueError(f"width must be >= 2, got {width}")
    jobs = [(tag, width, raw_limit) for tag in family_tags(width)]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_derive_family, jobs))
    else:
        results = [_derive_family(j) for j in jobs]
    functions = sorted((fn for _, fns, _ in results for fn in fns), key=lambda f: f.id)
    catalog = KCatalog(width, functions, {tag: raw for tag, _, raw in results})
    from .named import attach_aliases

    attach_aliases(catalog)
    return catalog


@lru_cache(maxsize=32)
def cached_catalog(width: int) -> KCatalog:
    return derive_k_functions(width)


def eval_k(fn: SymbolicKFn, alpha: ParamVector) -> ParamVector:
    if alpha.width != fn.width:
        raise OutOfDomain(f"{alpha!r} is not of width {fn.width}")
    bad = fn.domain.failing(alpha.alphas)
    if bad is not None:
        raise OutOfDomain(f"{alpha} violates {bad} in {fn.id}")
    return ParamVector(fn.map_tuple(alpha.alphas), fn.width)


def successor_tuple(alphas: tuple[int, ...], width: int) -> tuple[int, ...]:
    """Parameters of the image of any number with parameters ``alphas``."""
    x = sorted(image_digits(alphas, width), reverse=True)
    return tuple(x[s] - x[width - 1 - s] for s in range(width // 2))


def total_k(alpha: ParamVector) -> ParamVector:
    """The parameter step map, computed numerically through the image."""
    return ParamVector(successor_tuple(alpha.alphas, alpha.width), alpha.width)


def total_k_iter(alpha: ParamVector, r: int) -> ParamVector:
    t = alpha.alphas
    for _ in range(r):
        t = successor_tuple(t, alpha.width)
    return ParamVector(t, alpha.width)


@dataclass(frozen=True)
class FixedPoint:
    alpha_e: ParamVector
    n_e: "object"
    witness_fn: Optional[str] = None

    def __str__(self) -> str:
        return f"{self.alpha_e} -> {self.n_e}"


def solve_fixed_points(width: int, catalog: Optional[KCatalog] = None) -> list[FixedPoint]:
    """Fixed points found as ``output(alpha) == alpha`` inside each domain."""
    catalog = catalog or cached_catalog(width)
    pts = class_matrix(width)
    found: dict[tuple[int, ...], str] = {}
    for fn in catalog.functions:
        mask = fn.domain.mask(pts)
        for s, e in enumerate(fn.output):
            mask &= e.evaluate_many(pts)[0] == pts[:, s]
        for row in pts[mask]:
            found.setdefault(tuple(int(v) for v in row), fn.id)
    out = []
    for t in sorted(found, reverse=True):
        alpha = ParamVector(t, width)
        out.append(FixedPoint(alpha, apply_f(alpha), found[t]))
    return out


def brute_force_fixed_points(width: int) -> list[ParamVector]:
    return [
        ParamVector(t, width)
        for t in enumerate_class_tuples(width)
        if successor_tuple(t, width) == t
    ]


def constant_family_params(kind: str, h: int) -> ParamVector:
    """``6 3..3 2`` at width 2h, or ``8 6 4 3..3 2`` at width 2h+1."""
    if kind == "even":
        if h < 2:
            raise ValueError("the even family needs h >= 2")
        return ParamVector((6,) + (3,) * (h - 2) + (2,), 2 * h)
    if kind == "odd":
        if h < 4:
            raise ValueError("the odd family needs h >= 4")
        return ParamVector((8, 6, 4) + (3,) * (h - 4) + (2,), 2 * h + 1)
    raise ValueError(f"unknown family kind {kind!r}")


def verify_constant_family(kind: str, h: int) -> FixedPoint:
    alpha = constant_family_params(kind, h)
    n_e = apply_f(alpha)
    if kaprekar_step(n_e) != n_e:
        raise NotAFixedPoint(f"{n_e} (parameters {alpha}) maps to {kaprekar_step(n_e)}")
    return FixedPoint(alpha, n_e)


def compose(path: Sequence[SymbolicKFn]) -> tuple[AffineExpr, ...]:
    """Affine composition, ``path[0]`` applied first."""
    if not path:
        raise ValueError("compose needs at least one function")
    out = path[0].output
    for fn in path[1:]:
        out = tuple(e.substitute(out) for e in fn.output)
    return out


def evaluate_map(exprs: Sequence[AffineExpr], alpha: ParamVector) -> tuple[int, ...]:
    return tuple(e(alpha.alphas) for e in exprs)


__all__ = [
    "AffineExpr",
    "FixedPoint",
    "KCatalog",
    "LinearConstraint",
    "NotAFixedPoint",
    "OutOfDomain",
    "ParamDomain",
    "SymbolicKFn",
    "brute_force_fixed_points",
    "class_matrix",
    "compose",
    "derive_k_functions",
    "eval_k",
    "iterate",
    "parse_constraints",
    "parse_expr",
    "parse_map",
    "solve_fixed_points",
    "symbolic_image",
    "total_k",
    "verify_constant_family",
]
