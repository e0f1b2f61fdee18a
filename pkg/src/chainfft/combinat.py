"""Partitions, branching rules, Bratteli diagrams, quiver morphism counts, and bounds.

Vertices of every diagram level are integer partitions.  The canonical order
of the vertices at a level is (size descending, then reverse lexicographic on
the part tuples); every path/index structure downstream derives from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import ArgumentError, InvalidVertexError

Partition = tuple[int, ...]


class ChainKind(str, Enum):
    SYMMETRIC_GROUP = "sn"
    BRAUER = "brauer"
    TEMPERLEY_LIEB = "tl"
    BMW_STRUCTURAL = "bmw"

    @classmethod
    def parse(cls, name: str) -> "ChainKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ArgumentError(f"unknown chain kind {name!r}")


def is_partition(parts: tuple[int, ...]) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)) and all(
        p >= 1 for p in parts
    )


def check_partition(parts: tuple[int, ...]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ArgumentError(f"{parts!r} is not weakly decreasing positive")
    return parts


def partition_key(lam: Partition):
    """Sort key realising the canonical order: |λ| descending, reverse lex."""
    return (-sum(lam), tuple(-p for p in lam))


def jump(lam: Partition) -> int:
    """Number of removable corner boxes (distinct part sizes)."""
    return len(set(lam))


def add_box_results(lam: Partition) -> list[Partition]:
    """Partitions obtained by adding one box, in canonical order."""
    out = []
    for row in range(len(lam) + 1):
        here = lam[row] if row < len(lam) else 0
        above = lam[row - 1] if row > 0 else None
        if above is None or here < above:
            grown = list(lam)
            if row < len(lam):
                grown[row] += 1
            else:
                grown.append(1)
            out.append(tuple(grown))
    return sorted(out, key=partition_key)


def remove_box_results(lam: Partition) -> list[Partition]:
    """Partitions obtained by removing one corner box, in canonical order."""
    out = []
    for row in range(len(lam)):
        below = lam[row + 1] if row + 1 < len(lam) else 0
        if lam[row] > below:
            shrunk = list(lam)
            shrunk[row] -= 1
            if shrunk[-1] == 0:
                shrunk.pop()
            out.append(tuple(shrunk))
    return sorted(out, key=partition_key)


def legal_vertex(kind: ChainKind, lam: Partition, level: int) -> bool:
    if level < 0 or not is_partition(lam):
        return False
    size = sum(lam)
    if kind in (ChainKind.BRAUER, ChainKind.BMW_STRUCTURAL):
        return size <= level and (level - size) % 2 == 0
    if kind is ChainKind.TEMPERLEY_LIEB:
        return size == level and len(lam) <= 2
    return size == level


def branch(kind: ChainKind, lam: Partition, level: int) -> list[Partition]:
    """Level-`level` successors of the vertex `lam` at level `level - 1`."""
    lam = tuple(lam)
    if level < 1 or not legal_vertex(kind, lam, level - 1):
        raise InvalidVertexError(
            f"{lam!r} is not a level-{level - 1} vertex of the {kind.value} chain"
        )
    if kind in (ChainKind.BRAUER, ChainKind.BMW_STRUCTURAL):
        grown = add_box_results(lam) + remove_box_results(lam)
    elif kind is ChainKind.TEMPERLEY_LIEB:
        grown = [mu for mu in add_box_results(lam) if len(mu) <= 2]
    else:
        grown = add_box_results(lam)
    return sorted(set(grown), key=partition_key)


def algebra_dim(kind: ChainKind, level: int) -> int:
    """dim(A_level): (2i-1)!! for Brauer/BMW, Catalan(i) for TL, i! for S_n."""
    if kind in (ChainKind.BRAUER, ChainKind.BMW_STRUCTURAL):
        return double_factorial(2 * level - 1)
    if kind is ChainKind.TEMPERLEY_LIEB:
        return catalan(level)
    return factorial(level)


def double_factorial(m: int) -> int:
    if m <= 0:
        return 1
    out = 1
    while m > 0:
        out *= m
        m -= 2
    return out


def catalan(n: int) -> int:
    return factorial(2 * n) // (factorial(n) * factorial(n + 1))


@dataclass(frozen=True)
class BratteliDiagram:
    """Graded multiplicity-free quiver for a chain, with path-count dimensions.

    levels[i] lists the level-i vertices in canonical order; edges[i] holds
    (source index at level i-1, target index at level i) pairs; dims[i][j] is
    the number of root-to-vertex paths of levels[i][j].
    """

    kind: ChainKind
    n: int
    levels: tuple[tuple[Partition, ...], ...]
    edges: tuple[tuple[tuple[int, int], ...], ...]
    dims: tuple[tuple[int, ...], ...]
    _path_count_memo: dict = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    def vertices(self, level: int) -> tuple[Partition, ...]:
        self._check_level(level)
        return self.levels[level]

    def vertex_index(self, level: int, lam: Partition) -> int:
        self._check_level(level)
        lam = tuple(lam)
        try:
            return self.levels[level].index(lam)
        except ValueError:
            raise InvalidVertexError(f"{lam!r} not at level {level}") from None

    def dim(self, level: int, lam: Partition) -> int:
        return self.dims[level][self.vertex_index(level, lam)]

    def in_neighbors(self, level: int, lam: Partition) -> list[Partition]:
        j = self.vertex_index(level, lam)
        if level == 0:
            return []
        prev = self.levels[level - 1]
        return [prev[a] for (a, b) in self.edges[level] if b == j]

    def out_neighbors(self, level: int, lam: Partition) -> list[Partition]:
        if level >= self.n:
            return []
        j = self.vertex_index(level, lam)
        nxt = self.levels[level + 1]
        return [nxt[b] for (a, b) in self.edges[level + 1] if a == j]

    def has_edge(self, level_from: int, src: Partition, dst: Partition) -> bool:
        a = self.vertex_index(level_from, src)
        b = self.vertex_index(level_from + 1, dst)
        return (a, b) in self.edges[level_from + 1]

    def _check_level(self, level: int) -> None:
        if not 0 <= level <= self.n:
            raise InvalidVertexError(f"level {level} outside 0..{self.n}")


def build_bratteli(kind: ChainKind, n: int) -> BratteliDiagram:
    """Construct the depth-n Bratteli diagram with deterministic ordering."""
    if n < 0:
        raise ArgumentError("depth must be nonnegative")
    levels: list[tuple[Partition, ...]] = [((),)]
    edges: list[tuple[tuple[int, int], ...]] = [()]
    dims: list[tuple[int, ...]] = [(1,)]
    for i in range(1, n + 1):
        seen: set[Partition] = set()
        for lam in levels[i - 1]:
            seen.update(branch(kind, lam, i))
        verts = tuple(sorted(seen, key=partition_key))
        idx = {lam: j for j, lam in enumerate(verts)}
        level_edges = []
        for a, lam in enumerate(levels[i - 1]):
            for mu in branch(kind, lam, i):
                level_edges.append((a, idx[mu]))
        level_edges.sort()
        new_dims = [0] * len(verts)
        for a, b in level_edges:
            new_dims[b] += dims[i - 1][a]
        levels.append(verts)
        edges.append(tuple(level_edges))
        dims.append(tuple(new_dims))
    return BratteliDiagram(kind, n, tuple(levels), tuple(edges), tuple(dims))


def mult_M(B: BratteliDiagram, rho: Partition, rho_level: int, gamma: Partition, gamma_level: int) -> int:
    """Number of directed paths from gamma (lower level) to rho (higher level)."""
    if gamma_level > rho_level:
        raise ArgumentError("level(gamma) must not exceed level(rho)")
    gi = B.vertex_index(gamma_level, gamma)
    ri = B.vertex_index(rho_level, rho)
    key = (gamma_level, gi, rho_level, ri)
    memo = B._path_count_memo
    if key in memo:
        return memo[key]
    counts = {gi: 1}
    for level in range(gamma_level + 1, rho_level + 1):
        nxt: dict[int, int] = {}
        for a, b in B.edges[level]:
            if a in counts:
                nxt[b] = nxt.get(b, 0) + counts[a]
        counts = nxt
    value = counts.get(ri, 0)
    memo[key] = value
    return value


# ---------------------------------------------------------------------------
# Graded quivers and morphism counting


@dataclass(frozen=True)
class QuiverShape:
    """Abstract graded quiver: named vertices with grades, tagged arrows.

    Arrows are (source name, target name, tag) with strictly increasing grade;
    the tag distinguishes parallel arrows so that edge sets behave as sets.
    """

    grades: tuple[tuple[str, int], ...]
    arrows: frozenset[tuple[str, str, int]]

    @staticmethod
    def make(grades: dict[str, int], arrows) -> "QuiverShape":
        arrows = frozenset(
            (s, t, tag) for (s, t, tag) in (a if len(a) == 3 else (*a, 0) for a in arrows)
        )
        for s, t, _ in arrows:
            if grades[t] <= grades[s]:
                raise ArgumentError(f"arrow {s}->{t} does not increase grade")
        return QuiverShape(tuple(sorted(grades.items())), arrows)

    def grade_map(self) -> dict[str, int]:
        return dict(self.grades)

    def is_empty(self) -> bool:
        return not self.arrows

    def canonical_key(self):
        """Isomorphism-invariant canonical form (brute force over grade classes)."""
        grades = self.grade_map()
        active = sorted({v for a in self.arrows for v in (a[0], a[1])})
        by_grade: dict[int, list[str]] = {}
        for v in active:
            by_grade.setdefault(grades[v], []).append(v)
        best = None
        orders = [list(permutations(vs)) for g, vs in sorted(by_grade.items())]

        def assemble(choice):
            label = {}
            for group in choice:
                for k, v in enumerate(group):
                    label[v] = (grades[v], k)
            edges = sorted(
                (label[s], label[t]) for (s, t, _) in self.arrows
            )
            return tuple(edges)

        def rec(i, chosen):
            nonlocal best
            if i == len(orders):
                key = assemble(chosen)
                if best is None or key < best:
                    best = key
                return
            for perm in orders[i]:
                rec(i + 1, chosen + [perm])

        rec(0, [])
        return best if best is not None else ()


def symdiff(q1: QuiverShape, q2: QuiverShape) -> QuiverShape:
    """Induced quiver on the symmetric difference of the arrow sets."""
    g1, g2 = q1.grade_map(), q2.grade_map()
    for v in set(g1) & set(g2):
        if g1[v] != g2[v]:
            raise ArgumentError(f"incompatible gradings at vertex {v!r}")
    arrows = q1.arrows ^ q2.arrows
    grades = {**g1, **g2}
    keep = {v for a in arrows for v in (a[0], a[1])}
    return QuiverShape.make({v: g for v, g in grades.items() if v in keep}, arrows)


def quiver_union(q1: QuiverShape, q2: QuiverShape) -> QuiverShape:
    g1, g2 = q1.grade_map(), q2.grade_map()
    for v in set(g1) & set(g2):
        if g1[v] != g2[v]:
            raise ArgumentError(f"incompatible gradings at vertex {v!r}")
    return QuiverShape.make({**g1, **g2}, q1.arrows | q2.arrows)


def glued_component_quivers(n: int) -> list[QuiverShape]:
    """Component subquivers of the per-level factorization inside the glued quiver.

    Vertices: "root", "b<k>" (bottom chain, grade k) and "t<k>" (top chain,
    grade k).  Entry j < n is the factor-family component at index j (double
    two-step leg from grade j-1 to j+1); entry n-1 is the subproblem
    component (double leg from grade 0 to n-1, one side the long arrow).
    Returned in sigma order: subproblem first, then indices 1..n-1.
    """
    if n < 2:
        raise ArgumentError("glued components need n >= 2")

    def bot(k: int) -> str:
        return "root" if k == 0 else f"b{k}"

    grades = {"root": 0}
    for k in range(1, n):
        grades[f"b{k}"] = k
    for k in range(1, n + 1):
        grades[f"t{k}"] = k

    def chain_bot(a: int, b: int):
        return [(bot(k), bot(k + 1), 0) for k in range(a, b)]

    def chain_top(a: int, b: int):
        return [(f"t{k}", f"t{k+1}", 0) for k in range(a, b)]

    components = []
    sub_arrows = set(chain_bot(0, n - 1))
    sub_arrows.add(("root", bot(n - 1), 1))  # the long arrow
    sub_arrows.add((bot(n - 1), f"t{n}", 0))
    used = {v for a in sub_arrows for v in (a[0], a[1])}
    components.append(
        QuiverShape.make({v: grades[v] for v in used}, sub_arrows)
    )
    for j in range(1, n):
        arrows = set(chain_bot(0, j - 1))
        arrows.add((bot(j - 1), bot(j), 0))
        arrows.add((bot(j - 1), f"t{j}", 0))
        if j + 1 <= n:
            arrows.add((bot(j), f"t{j+1}", 0))
            arrows.add((f"t{j}", f"t{j+1}", 0))
        arrows.update(chain_top(j + 1, n))
        used = {v for a in arrows for v in (a[0], a[1])}
        components.append(QuiverShape.make({v: grades[v] for v in used}, arrows))
    return components


def contract_unit_vertices(q: QuiverShape) -> QuiverShape:
    """Collapse pass-through vertices (one in, one out) into composite arrows."""
    arrows = set(q.arrows)
    grades = q.grade_map()
    changed = True
    while changed:
        changed = False
        incidence: dict[str, list] = {}
        for a in arrows:
            incidence.setdefault(a[0], []).append(a)
            incidence.setdefault(a[1], []).append(a)
        for v, inc in incidence.items():
            ins = [a for a in arrows if a[1] == v]
            outs = [a for a in arrows if a[0] == v]
            if len(ins) == 1 and len(outs) == 1:
                (s, _, tag1), (_, t, tag2) = ins[0], outs[0]
                if s == t:
                    continue
                arrows.discard(ins[0])
                arrows.discard(outs[0])
                tag = 0
                while (s, t, tag) in arrows:
                    tag += 1
                arrows.add((s, t, tag))
                changed = True
                break
    keep = {v for a in arrows for v in (a[0], a[1])}
    return QuiverShape.make({v: g for v, g in grades.items() if v in keep}, arrows)


def hom_count_brute(B: BratteliDiagram, H: QuiverShape, n: int) -> int:
    """Count quiver morphisms H -> B by backtracking over grade-ordered vertices.

    A morphism assigns each H-vertex a B-vertex of its grade and each arrow a
    directed path between the images; the number of morphisms is the sum over
    vertex assignments of the product of path counts.
    """
    grades = H.grade_map()
    if any(g > n for g in grades.values()):
        raise ArgumentError("quiver grade exceeds diagram depth")
    verts = sorted(grades, key=lambda v: (grades[v], v))
    arrows = list(H.arrows)
    total = 0
    assign: dict[str, Partition] = {}

    def rec(k: int, partial: int) -> None:
        nonlocal total
        if partial == 0:
            return
        if k == len(verts):
            total += partial
            return
        v = verts[k]
        for lam in B.vertices(grades[v]):
            assign[v] = lam
            factor = 1
            for s, t, _ in arrows:
                if t == v and s in assign:
                    factor *= mult_M(B, lam, grades[v], assign[s], grades[s])
                    if factor == 0:
                        break
                elif s == v and t in assign:
                    factor *= mult_M(B, assign[t], grades[t], lam, grades[v])
                    if factor == 0:
                        break
            rec(k + 1, partial * factor)
        del assign[v]

    rec(0, 1)
    return total


def stage_quiver_shape(i: int, n: int) -> QuiverShape:
    """The glued stage quiver with vertices 0̂, β_{i-2}, β_{i-1}, α_{i-1}, α_i, β_{n-1}."""
    if not 2 <= i <= n:
        raise ArgumentError(f"stage {i} outside 2..{n}")
    grades = {
        "root": 0,
        "b_im2": i - 2,
        "b_im1": i - 1,
        "a_im1": i - 1,
        "a_i": i,
    }
    arrows = [
        ("root", "a_im1", 0),
        ("b_im2", "b_im1", 0),
        ("b_im2", "a_im1", 0),
        ("b_im1", "a_i", 0),
        ("a_im1", "a_i", 0),
    ]
    if i < n:
        grades["b_nm1"] = n - 1
        arrows += [("root", "b_nm1", 0), ("b_im1", "b_nm1", 0)]
    else:
        arrows += [("root", "b_im1", 0)]
    return QuiverShape.make(grades, arrows)


def hom_count_closed(B: BratteliDiagram, i: int, n: int) -> int:
    """Exact evaluation of the stage-quiver morphism count.

    Sums M(β_{n-1},β_{i-1}) M(β_{i-1},β_{i-2}) M(α_i,α_{i-1}) M(α_i,β_{i-1})
    M(α_{i-1},β_{i-2}) d_{α_{i-1}} d_{β_{n-1}} over all vertex assignments.
    """
    if not 2 <= i <= n:
        raise ArgumentError(f"stage {i} outside 2..{n}")
    if B.n < n:
        raise ArgumentError("diagram shallower than requested depth")
    lv_im2, lv_im1, lv_i, lv_nm1 = B.levels[i - 2], B.levels[i - 1], B.levels[i], B.levels[n - 1]
    # A(β_{i-1}) = Σ_{β_{n-1}} M(β_{n-1}, β_{i-1}) d_{β_{n-1}}
    reach = {
        b: sum(
            mult_M(B, t, n - 1, b, i - 1) * B.dim(n - 1, t) for t in lv_nm1
        )
        for b in lv_im1
    }
    total = 0
    for b1 in lv_im1:
        for a1 in lv_im1:
            link = sum(
                mult_M(B, b1, i - 1, b0, i - 2) * mult_M(B, a1, i - 1, b0, i - 2)
                for b0 in lv_im2
            )
            if link == 0:
                continue
            tops = sum(
                mult_M(B, a2, i, a1, i - 1) * mult_M(B, a2, i, b1, i - 1)
                for a2 in lv_i
            )
            if tops == 0:
                continue
            total += reach[b1] * link * tops * B.dim(i - 1, a1)
    return total


# ---------------------------------------------------------------------------
# Closed-form bounds


@dataclass(frozen=True)
class BoundReport:
    kind: ChainKind
    n: int
    dim: int
    reduced_total: Fraction
    total: Fraction
    stage_bounds: tuple[Fraction, ...]  # indexed by stage i = 2..n

    def stage_bound(self, i: int) -> Fraction:
        if not 2 <= i <= self.n:
            raise ArgumentError(f"stage {i} outside 2..{self.n}")
        return self.stage_bounds[i - 2]


def paper_bounds(kind: ChainKind, n: int) -> BoundReport:
    """Total and per-stage operation bounds for the chain at depth n."""
    if n < 1:
        raise ArgumentError("depth must be at least 1")
    dim = algebra_dim(kind, n)
    if kind in (ChainKind.BRAUER, ChainKind.BMW_STRUCTURAL):
        reduced = Fraction(4 * n * n - n + 4)
        stages = tuple(
            Fraction(16 * i - 17, 2 * n - 1) * dim for i in range(2, n + 1)
        )
    elif kind is ChainKind.TEMPERLEY_LIEB:
        reduced = Fraction(n**3 + 9 * n * n + 8 * n - 12, 6)
        stages = tuple(
            Fraction((4 * i - 6 + 2 * i * i) * (n + 1) * n, i * 2 * n * (2 * n - 1)) * dim
            for i in range(2, n + 1)
        )
    else:
        raise ArgumentError("no headline bound for the symmetric-group chain")
    return BoundReport(kind, n, dim, reduced, reduced * dim, stages)


def general_bound(
    dims: list[int],
    m_max: list[int],
    irrep_counts: list[int],
    factor_sizes: list[int],
) -> Fraction:
    """Evaluate the general chain bound.

    dims has length n+1 (levels 0..n); m_max[i-2] is the max multiplicity
    M(A_{i-1}, A_{i-2}) for i in 2..n; irrep_counts has length n+1; and
    factor_sizes[j-2] is |B_j| for j in 2..n.  Returns
    dim(A_n) ΣΣ M² |Â_{i-2}| (dim A_i / dim A_{i-1}) (dim A_{k-1}/dim A_k) Π|B_j|.
    """
    n = len(dims) - 1
    if n < 0 or len(m_max) != max(n - 1, 0) or len(irrep_counts) != n + 1 or len(
        factor_sizes
    ) != max(n - 1, 0):
        raise ArgumentError("inconsistent input lengths for the general bound")
    total = Fraction(0)
    for k in range(1, n + 1):
        for i in range(2, k + 1):
            prod = 1
            for j in range(i, k + 1):
                prod *= factor_sizes[j - 2]
            total += (
                Fraction(m_max[i - 2]) ** 2
                * irrep_counts[i - 2]
                * Fraction(dims[i], dims[i - 1])
                * Fraction(dims[k - 1], dims[k])
                * prod
            )
    return dims[n] * total


def chain_inputs_for_general_bound(B: BratteliDiagram, factor_sizes: list[int]):
    """Derive (dims, m_max, irrep_counts) for general_bound from a diagram."""
    n = B.n
    dims = [sum(d * d for d in B.dims[i]) for i in range(n + 1)]
    m_max = [
        max(
            mult_M(B, a, i - 1, g, i - 2)
            for a in B.levels[i - 1]
            for g in B.levels[i - 2]
        )
        for i in range(2, n + 1)
    ]
    irrep_counts = [len(B.levels[i]) for i in range(n + 1)]
    return dims, m_max, irrep_counts, factor_sizes


# ---------------------------------------------------------------------------
# Emission


def bratteli_dot(B: BratteliDiagram) -> str:
    lines = ["digraph bratteli {"]
    for i, verts in enumerate(B.levels):
        for lam in verts:
            lines.append(f'  "{i}:{format_partition(lam)}";')
    for i in range(1, B.n + 1):
        for a, b in B.edges[i]:
            src = format_partition(B.levels[i - 1][a])
            dst = format_partition(B.levels[i][b])
            lines.append(f'  "{i - 1}:{src}" -> "{i}:{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def bratteli_json(B: BratteliDiagram) -> dict:
    return {
        "kind": B.kind.value,
        "n": B.n,
        "levels": [
            {
                "vertices": [
                    {"parts": list(lam), "dim": B.dims[i][j]}
                    for j, lam in enumerate(B.levels[i])
                ],
                "edges": [list(e) for e in B.edges[i]],
            }
            for i in range(B.n + 1)
        ],
    }


def bratteli_json_str(B: BratteliDiagram) -> str:
    return json.dumps(bratteli_json(B), indent=2, sort_keys=True) + "\n"


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]" if lam else "empty"


@lru_cache(maxsize=None)
def cached_bratteli(kind: ChainKind, n: int) -> BratteliDiagram:
    return build_bratteli(kind, n)
