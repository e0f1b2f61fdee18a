"""Path enumeration, Gel'fand-Tsetlin indexing, and path-algebra arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import BratteliDiagram, Partition, partition_key
from .errors import ArgumentError, InvalidVertexError

Path = tuple[Partition, ...]  # vertex sequence from the root, length = level + 1


def enumerate_paths(B: BratteliDiagram, level: int, v: Partition) -> list[Path]:
    """All root-to-v paths, lexicographic in the canonical vertex order read
    from the top level down.

    Grouping by the level-(L-1) vertex first keeps every restriction block
    contiguous, so adapted matrices are block-diagonal in index ranges.
    """
    v = tuple(v)
    B.vertex_index(level, v)
    if level == 0:
        return [((),)]
    out = []
    for u in sorted(set(B.in_neighbors(level, v)), key=partition_key):
        out.extend(p + (v,) for p in enumerate_paths(B, level - 1, u))
    return out


def gt_index(B: BratteliDiagram, level: int, v: Partition) -> dict[Path, int]:
    """Deterministic bijection path -> 0..d_v-1, consistent with enumerate_paths."""
    return {p: k for k, p in enumerate(enumerate_paths(B, level, v))}


@dataclass(frozen=True)
class PathAlgebraElement:
    """Finitely supported coefficient table over same-endpoint path pairs."""

    level: int
    coeffs: tuple[tuple[tuple[Path, Path], Fraction], ...]

    @staticmethod
    def from_dict(level: int, table: dict) -> "PathAlgebraElement":
        items = tuple(
            sorted((k, Fraction(v)) for k, v in table.items() if v != 0)
        )
        for (p, qq), _ in items:
            if len(p) != level + 1 or len(qq) != level + 1:
                raise ArgumentError("path length does not match level")
            if p[-1] != qq[-1]:
                raise ArgumentError("path pair endpoints differ")
        return PathAlgebraElement(level, items)

    def table(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs


def pa_identity(B: BratteliDiagram, level: int) -> PathAlgebraElement:
    table = {}
    for v in B.vertices(level):
        for p in enumerate_paths(B, level, v):
            table[(p, p)] = Fraction(1)
    return PathAlgebraElement.from_dict(level, table)


def pa_add(a: PathAlgebraElement, b: PathAlgebraElement) -> PathAlgebraElement:
    if a.level != b.level:
        raise ArgumentError("level mismatch")
    table = a.table()
    for k, v in b.coeffs:
        table[k] = table.get(k, Fraction(0)) + v
    return PathAlgebraElement.from_dict(a.level, table)


def pa_scale(a: PathAlgebraElement, c) -> PathAlgebraElement:
    c = Fraction(c)
    return PathAlgebraElement.from_dict(a.level, {k: c * v for k, v in a.coeffs})


def pa_mul(a: PathAlgebraElement, b: PathAlgebraElement) -> PathAlgebraElement:
    """Bilinear extension of (P,Q)*(P',Q') = delta_{QP'} (P,Q')."""
    if a.level != b.level:
        raise ArgumentError("level mismatch")
    by_left: dict[Path, list] = {}
    for (p2, q2), c2 in b.coeffs:
        by_left.setdefault(p2, []).append((q2, c2))
    table: dict = {}
    for (p, q), c in a.coeffs:
        for q2, c2 in by_left.get(q, ()):
            key = (p, q2)
            table[key] = table.get(key, Fraction(0)) + c * c2
    return PathAlgebraElement.from_dict(a.level, table)


def embed(B: BratteliDiagram, a: PathAlgebraElement) -> PathAlgebraElement:
    """(P,Q) -> sum over arrows e from the endpoint of (e∘P, e∘Q)."""
    if a.level + 1 > B.n:
        raise ArgumentError("diagram depth exceeded")
    table: dict = {}
    for (p, q), c in a.coeffs:
        for w in B.out_neighbors(a.level, p[-1]):
            table[(p + (w,), q + (w,))] = c
    return PathAlgebraElement.from_dict(a.level + 1, table)


def pa_dim(B: BratteliDiagram, level: int) -> int:
    return sum(d * d for d in B.dims[level])


def to_blocks(B: BratteliDiagram, a: PathAlgebraElement) -> dict:
    """JSON block form {level, blocks: [{vertex, matrix of exact-scalar strings}]}."""
    blocks = []
    for v in B.vertices(a.level):
        idx = gt_index(B, a.level, v)
        d = len(idx)
        m = [[Fraction(0)] * d for _ in range(d)]
        for (p, q), c in a.coeffs:
            if p[-1] == v:
                m[idx[p]][idx[q]] = c
        blocks.append(
            {"vertex": list(v), "matrix": [[str(x) for x in row] for row in m]}
        )
    return {"level": a.level, "blocks": blocks}


def from_blocks(B: BratteliDiagram, payload: dict) -> PathAlgebraElement:
    level = payload["level"]
    table: dict = {}
    by_parts = {tuple(v): v for v in B.vertices(level)}
    for block in payload["blocks"]:
        v = tuple(block["vertex"])
        if v not in by_parts:
            raise InvalidVertexError(f"unknown block vertex {v!r}")
        paths = enumerate_paths(B, level, v)
        matrix = block["matrix"]
        for i, p in enumerate(paths):
            for j, q in enumerate(paths):
                c = Fraction(matrix[i][j])
                if c:
                    table[(p, q)] = c
    return PathAlgebraElement.from_dict(level, table)
