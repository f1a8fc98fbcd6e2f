"""The functional graph of parametric classes under one routine step."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .core import DigitNumber, kaprekar_step, params
from .parametric import ParamVector, apply_f, enumerate_class_tuples
from .symbolic import successor_tuple

TREE_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class Cycle:
    """Attractor of one component; ``members[i]`` steps to ``members[i+1]``."""

    members: tuple[ParamVector, ...]

    @property
    def length(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def numeric_members(self) -> tuple[DigitNumber, ...]:
        return numeric_cycle(self)

    def __str__(self) -> str:
        return " -> ".join(str(m) for m in self.members)

    def rotated_to(self, member: ParamVector) -> "Cycle":
        """The same cycle read starting from ``member``."""
        k = self.members.index(member)
        return Cycle(self.members[k:] + self.members[:k])

    def same_cycle(self, sequence) -> bool:
        """True when ``sequence`` lists the members in step order from any start."""
        seq = tuple(sequence)
        if len(seq) != len(self.members) or seq[0] not in self.members:
            return False
        return self.rotated_to(seq[0]).members == seq


@dataclass(frozen=True)
class Component:
    index: int
    name: str
    nodes: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass
class ClassGraph:
    """Nodes are the classes of ``width`` in descending lexicographic order."""

    width: int
    nodes: list[ParamVector]
    succ: list[int]
    components: list[Component]
    component_of: list[int]
    depth: list[int]

    def index(self, alpha: ParamVector) -> int:
        return self._index[alpha.alphas]

    def __post_init__(self):
        self._index = {n.alphas: i for i, n in enumerate(self.nodes)}

    def __contains__(self, alpha: ParamVector) -> bool:
        return alpha.width == self.width and alpha.alphas in self._index

    def successor(self, alpha: ParamVector) -> ParamVector:
        return self.nodes[self.succ[self.index(alpha)]]

    def step(self, i: int, t: int) -> int:
        for _ in range(t):
            i = self.succ[i]
        return i

    def component(self, alpha: ParamVector) -> Component:
        return self.components[self.component_of[self.index(alpha)]]

    def cycle(self, c: Component) -> Cycle:
        return Cycle(tuple(self.nodes[i] for i in c.cycle))

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.nodes]
        for i, j in enumerate(self.succ):
            pred[j].append(i)
        return pred

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "classes": [str(n) for n in self.nodes],
            "edges": [[str(self.nodes[i]), str(self.nodes[j])] for i, j in enumerate(self.succ)],
            "components": [
                {
                    "name": c.name,
                    "size": c.size,
                    "cycle": [str(self.nodes[i]) for i in c.cycle],
                    "depths": {str(self.nodes[i]): self.depth[i] for i in c.nodes},
                }
                for c in self.components
            ],
        }


def _succ_chunk(args) -> list[tuple[int, ...]]:
    tuples, width = args
    return [successor_tuple(t, width) for t in tuples]


def _successors(tuples: list[tuple[int, ...]], width: int, n_jobs: int) -> list[tuple[int, ...]]:
    if n_jobs <= 1:
        return _succ_chunk((tuples, width))
    size = -(-len(tuples) // n_jobs)
    chunks = [(tuples[i: i + size], width) for i in range(0, len(tuples), size)]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return [s for part in pool.map(_succ_chunk, chunks) for s in part]


def _rotate(cycle: list[int], nodes: list[ParamVector]) -> tuple[int, ...]:
    """Start the cycle at its lexicographically largest member."""
    best = max(range(len(cycle)), key=lambda k: nodes[cycle[k]].alphas)
    return tuple(cycle[best:] + cycle[:best])


def build_graph(width: int, n_jobs: int = 1) -> ClassGraph:
    if width < 2:
        raise ValueError(f"width must be >= 2, got {width}")
    tuples = enumerate_class_tuples(width)
    nodes = [ParamVector(t, width) for t in tuples]
    index = {t: i for i, t in enumerate(tuples)}
    succ = [index[s] for s in _successors(tuples, width, n_jobs)]
    pred: list[list[int]] = [[] for _ in nodes]
    for i, j in enumerate(succ):
        pred[j].append(i)

    # cycles: walk each node until a repeat; colour by walk to find cycle members
    state = [0] * len(nodes)  # 0 new, 1 on current path, 2 done
    cycles: list[list[int]] = []
    for start in range(len(nodes)):
        path = []
        i = start
        while state[i] == 0:
            state[i] = 1
            path.append(i)
            i = succ[i]
        if state[i] == 1:
            cycles.append(path[path.index(i):])
        for p in path:
            state[p] = 2

    depth = [-1] * len(nodes)
    comp = [-1] * len(nodes)
    groups = []
    for ci, cyc in enumerate(cycles):
        members = []
        frontier = list(cyc)
        for i in cyc:
            depth[i] = 0
            comp[i] = ci
        while frontier:
            members.extend(frontier)
            nxt = []
            for i in frontier:
                for p in pred[i]:
                    if depth[p] < 0:
                        depth[p] = depth[i] + 1
                        comp[p] = ci
                        nxt.append(p)
            frontier = nxt
        groups.append((ci, sorted(members)))

    rotated = [_rotate(c, nodes) for c in cycles]

    def order_key(g):
        ci, members = g
        smallest = min(nodes[i].alphas for i in rotated[ci])
        return (-len(members), smallest)

    groups.sort(key=order_key)
    remap = {}
    components = []
    for new, (ci, members) in enumerate(groups):
        remap[ci] = new
        name = TREE_NAMES[new] if new < len(TREE_NAMES) else f"T{new}"
        components.append(Component(new, name, tuple(members), rotated[ci]))
    comp = [remap[c] for c in comp]
    return ClassGraph(width, nodes, succ, components, comp, depth)


def cycles(width: int, graph: Optional[ClassGraph] = None) -> list[Cycle]:
    g = graph or build_graph(width)
    return [g.cycle(c) for c in g.components]


def numeric_cycle(c: Cycle) -> tuple[DigitNumber, ...]:
    """Numbers ``n_i = f(alpha_{i-1})`` whose parameters are the members."""
    r = len(c.members)
    out = tuple(apply_f(c.members[(i - 1) % r]) for i in range(r))
    for i, n in enumerate(out):
        assert params(n) == c.members[i], f"{n} does not have parameters {c.members[i]}"
        assert kaprekar_step(n) == out[(i + 1) % r], f"{n} does not step to {out[(i + 1) % r]}"
    return out


def distance(g: ClassGraph, alpha: ParamVector, target: Optional[ParamVector] = None) -> Optional[int]:
    """Depth to the attractor, or the least number of steps reaching ``target``
    (``None`` when ``target`` is never reached)."""
    i = g.index(alpha)
    if target is None:
        return g.depth[i]
    goal = g.index(target)
    limit = g.depth[i] + len(g.components[g.component_of[i]].cycle)
    for t in range(limit):
        if i == goal:
            return t
        i = g.succ[i]
    return None


def cycle_target(g: ClassGraph, alpha: ParamVector, depth: Optional[int] = None) -> tuple[ParamVector, int]:
    """Cycle member reached after a whole number of turns.

    The step count is the smallest multiple of the cycle length that is at
    least the depth, so the member reached is where ``alpha`` sits once its
    tail has been absorbed into full laps.
    """
    i = g.index(alpha)
    d = g.depth[i] if depth is None else depth
    r = len(g.components[g.component_of[i]].cycle)
    steps = r * -(-d // r)
    return g.nodes[g.step(i, steps)], steps


def export_dot(g: ClassGraph) -> str:
    lines = [f'digraph "A{g.width}" {{', "  rankdir=LR;", "  node [shape=box, fontname=monospace];"]
    for c in g.components:
        lines.append(f"  subgraph cluster_{c.name} {{")
        lines.append(f'    label="tree {c.name} ({c.size})";')
        cyc = set(c.cycle)
        for i in c.nodes:
            style = ", style=bold" if i in cyc else ""
            lines.append(f'    "{g.nodes[i]}" [label="{g.nodes[i]}"{style}];')
        lines.append("  }")
    for i, j in enumerate(g.succ):
        attractor = g.depth[i] == 0
        style = " [color=red, penwidth=2]" if attractor else ""
        lines.append(f'  "{g.nodes[i]}" -> "{g.nodes[j]}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(g: ClassGraph) -> str:
    return json.dumps(g.to_json(), indent=2, sort_keys=True) + "\n"
