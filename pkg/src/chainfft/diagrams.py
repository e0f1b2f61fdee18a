"""Brauer / Temperley-Lieb / permutation diagrams and their arithmetic.

A diagram on 2n points matches top points 1..n with bottom points n+1..2n.
Products concatenate with the left factor on top; closed loops are returned
as an integer exponent, never folded into scalars here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .combinat import ChainKind
from .errors import ArgumentError, FactorizationError

Token = tuple[str, int]  # ("r", i) or ("e", i)


@dataclass(frozen=True)
class Diagram:
    kind: ChainKind
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.kind is ChainKind.BMW_STRUCTURAL:
            raise ArgumentError("BMW diagrams carry no multiplication data")
        seen = sorted(p for pair in self.pairs for p in pair)
        if seen != list(range(1, 2 * self.n + 1)):
            raise ArgumentError(f"not a perfect matching on 2n={2 * self.n} points")
        if self.pairs != canonical_pairs(self.pairs):
            raise ArgumentError("pairs not in canonical sorted form")
        if self.kind is ChainKind.SYMMETRIC_GROUP and not all(
            a <= self.n < b for a, b in self.pairs
        ):
            raise ArgumentError("permutation diagrams must join top to bottom")
        if self.kind is ChainKind.TEMPERLEY_LIEB and not is_planar(self.pairs, self.n):
            raise ArgumentError("Temperley-Lieb diagrams must be planar")

    def key(self) -> str:
        return ",".join(f"{a}-{b}" for a, b in self.pairs)

    def is_identity(self) -> bool:
        return all(b == a + self.n for a, b in self.pairs)

    def has_vertical_last_strand(self) -> bool:
        return (self.n, 2 * self.n) in self.pairs

    def top_arcs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.pairs if b <= self.n]

    def transpose(self) -> "Diagram":
        def flip(p: int) -> int:
            return p + self.n if p <= self.n else p - self.n

        return Diagram(self.kind, self.n, canonical_pairs(
            (flip(a), flip(b)) for a, b in self.pairs
        ))


@dataclass(frozen=True)
class LoopProduct:
    diagram: Diagram
    loops: int


@dataclass(frozen=True)
class GeneratorWord:
    """Product of generators r_i / e_i, applied left to right; () is the identity."""

    tokens: tuple[Token, ...]

    def __post_init__(self):
        for sym, i in self.tokens:
            if sym not in ("r", "e") or i < 1:
                raise ArgumentError(f"bad token {(sym, i)!r}")

    def __str__(self) -> str:
        return "id" if not self.tokens else "".join(f"{s}{i}" for s, i in self.tokens)


def canonical_pairs(pairs) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


def circular_position(p: int, n: int) -> int:
    """Position in the clockwise boundary reading: top 1..n, then bottom 2n..n+1."""
    return p if p <= n else 3 * n + 1 - p


def is_planar(pairs, n: int) -> bool:
    pos = [tuple(sorted((circular_position(a, n), circular_position(b, n)))) for a, b in pairs]
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            a, b = pos[i]
            c, d = pos[j]
            if a < c < b < d or c < a < d < b:
                return False
    return True


def identity_diagram(kind: ChainKind, n: int) -> Diagram:
    return Diagram(kind, n, canonical_pairs((i, i + n) for i in range(1, n + 1)))


def generator(kind: ChainKind, token: Token, n: int) -> Diagram:
    sym, i = token
    if not 1 <= i <= n - 1:
        raise ArgumentError(f"generator index {i} outside 1..{n - 1}")
    if sym == "e" and kind is ChainKind.SYMMETRIC_GROUP:
        raise ArgumentError("e generators do not exist in the symmetric group")
    if sym == "r" and kind is ChainKind.TEMPERLEY_LIEB:
        raise ArgumentError("r generators do not exist in the Temperley-Lieb algebra")
    pairs = [(j, j + n) for j in range(1, n + 1) if j not in (i, i + 1)]
    if sym == "r":
        pairs += [(i, i + 1 + n), (i + 1, i + n)]
    else:
        pairs += [(i, i + 1), (i + n, i + n + 1)]
    return Diagram(kind, n, canonical_pairs(pairs))


def diagram_mul(x: Diagram, y: Diagram) -> LoopProduct:
    """Concatenate with x on top of y; returns the canonical result and loop count."""
    if x.n != y.n:
        raise ArgumentError("size mismatch in diagram product")
    n = x.n
    kind = join_kind(x.kind, y.kind)
    # nodes: ("T", i) final top, ("B", i) final bottom, ("M", i) glued middle row
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for a, b in x.pairs:
        ua = ("T", a) if a <= n else ("M", a - n)
        ub = ("T", b) if b <= n else ("M", b - n)
        link(ua, ub)
    for a, b in y.pairs:
        ua = ("M", a) if a <= n else ("B", a - n)
        ub = ("M", b) if b <= n else ("B", b - n)
        link(ua, ub)

    visited: set[tuple[str, int]] = set()
    pairs = []
    for start_i in range(1, n + 1):
        for side in ("T", "B"):
            start = (side, start_i)
            if start in visited:
                continue
            # walk to the other endpoint
            prev, cur = None, start
            visited.add(cur)
            while True:
                nbrs = adj[cur]
                nxt = nbrs[0] if nbrs[0] != prev or len(nbrs) == 1 else nbrs[1]
                # at degree-2 middle nodes pick the edge we did not come in by
                if cur[0] == "M" and prev is not None:
                    nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
                visited.add(nxt)
                if nxt[0] != "M":
                    end = nxt
                    break
                prev, cur = cur, nxt
            a = start_i if side == "T" else start_i + n
            b = end[1] if end[0] == "T" else end[1] + n
            pairs.append((a, b))
    loops = 0
    for i in range(1, n + 1):
        node = ("M", i)
        if node in adj and node not in visited:
            loops += 1
            prev, cur = None, node
            while cur not in visited:
                visited.add(cur)
                nbrs = adj[cur]
                nxt = nbrs[0] if (prev is None or nbrs[0] != prev) else nbrs[1]
                if prev is not None and nbrs[0] == prev:
                    nxt = nbrs[1]
                prev, cur = cur, nxt
    return LoopProduct(Diagram(kind, n, canonical_pairs(pairs)), loops)


def join_kind(a: ChainKind, b: ChainKind) -> ChainKind:
    if a == b:
        return a
    compatible = {a, b}
    if compatible == {ChainKind.SYMMETRIC_GROUP, ChainKind.BRAUER}:
        return ChainKind.BRAUER
    if compatible == {ChainKind.TEMPERLEY_LIEB, ChainKind.BRAUER}:
        return ChainKind.BRAUER
    raise ArgumentError(f"incompatible kinds {a.value!r} and {b.value!r}")


def evaluate(word: GeneratorWord, kind: ChainKind, n: int) -> LoopProduct:
    out = identity_diagram(kind, n)
    loops = 0
    for token in word.tokens:
        prod = diagram_mul(out, generator(kind, token, n))
        out, loops = prod.diagram, loops + prod.loops
    return LoopProduct(out, loops)


def all_diagrams(kind: ChainKind, n: int) -> list[Diagram]:
    """Every basis diagram of the given kind and size, in canonical key order."""
    if kind is ChainKind.SYMMETRIC_GROUP:
        out = [
            Diagram(kind, n, canonical_pairs((i + 1, n + v) for i, v in enumerate(perm)))
            for perm in permutations(range(1, n + 1))
        ]
    elif kind is ChainKind.TEMPERLEY_LIEB:
        boundary = list(range(1, n + 1)) + list(range(2 * n, n, -1))
        out = [
            Diagram(kind, n, canonical_pairs(m)) for m in _noncrossing(boundary)
        ]
    else:
        out = [
            Diagram(kind, n, canonical_pairs(pairing))
            for pairing in _pairings(list(range(1, 2 * n + 1)))
        ]
    return sorted(out, key=lambda d: d.key())


def _noncrossing(points: list[int]):
    """Noncrossing perfect matchings of points in the given circular order."""
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1 :]
        for left in _noncrossing(inside):
            for right in _noncrossing(outside):
                yield [(first, points[k])] + left + right


def _pairings(items: list[int]):
    if not items:
        yield []
        return
    first = items[0]
    rest = items[1:]
    for j, other in enumerate(rest):
        head = (first, other)
        for tail in _pairings(rest[:j] + rest[j + 1 :]):
            yield [head] + tail


# ---------------------------------------------------------------------------
# Relation suites


def relation_instances(kind: ChainKind, n: int):
    """Yield (name, lhs tokens, rhs tokens, rhs loop exponent) for the presentation."""
    if n < 2:
        return
    R = range(1, n)
    if kind in (ChainKind.SYMMETRIC_GROUP, ChainKind.BRAUER):
        for i in R:
            yield f"r{i}^2=1", (("r", i), ("r", i)), (), 0
        for i in R:
            for j in R:
                if j > i + 1:
                    yield f"r{i}r{j}=r{j}r{i}", (("r", i), ("r", j)), (("r", j), ("r", i)), 0
        for i in R[:-1]:
            yield (
                f"braid{i}",
                (("r", i), ("r", i + 1), ("r", i)),
                (("r", i + 1), ("r", i), ("r", i + 1)),
                0,
            )
    if kind in (ChainKind.BRAUER, ChainKind.TEMPERLEY_LIEB):
        for i in R:
            yield f"e{i}^2=qe{i}", (("e", i), ("e", i)), (("e", i),), 1
        for i in R:
            for j in R:
                if j > i + 1:
                    yield f"e{i}e{j}=e{j}e{i}", (("e", i), ("e", j)), (("e", j), ("e", i)), 0
        for i in R[:-1]:
            yield f"e{i}e{i+1}e{i}=e{i}", (("e", i), ("e", i + 1), ("e", i)), (("e", i),), 0
            yield (
                f"e{i+1}e{i}e{i+1}=e{i+1}",
                (("e", i + 1), ("e", i), ("e", i + 1)),
                (("e", i + 1),),
                0,
            )
    if kind is ChainKind.BRAUER:
        for i in R:
            for j in R:
                if j > i + 1:
                    yield f"r{i}e{j}=e{j}r{i}", (("r", i), ("e", j)), (("e", j), ("r", i)), 0
                    yield f"e{i}r{j}=r{j}e{i}", (("e", i), ("r", j)), (("r", j), ("e", i)), 0
        for i in R:
            yield f"e{i}r{i}=e{i}", (("e", i), ("r", i)), (("e", i),), 0
            yield f"r{i}e{i}=e{i}", (("r", i), ("e", i)), (("e", i),), 0
        for i in R[:-1]:
            yield (
                f"r{i}e{i+1}e{i}=r{i+1}e{i}",
                (("r", i), ("e", i + 1), ("e", i)),
                (("r", i + 1), ("e", i)),
                0,
            )
            yield (
                f"e{i+1}e{i}r{i+1}=e{i+1}r{i}",
                (("e", i + 1), ("e", i), ("r", i + 1)),
                (("e", i + 1), ("r", i)),
                0,
            )


@dataclass(frozen=True)
class RelationReport:
    kind: ChainKind
    n: int
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_relations(kind: ChainKind, n: int) -> RelationReport:
    """Verify every defining-relation instance as a loop-product identity."""
    if n < 2:
        raise ArgumentError("relations need n >= 2")
    violations = []
    checked = 0
    for name, lhs, rhs, extra in relation_instances(kind, n):
        checked += 1
        left = evaluate(GeneratorWord(lhs), kind, n)
        right = evaluate(GeneratorWord(rhs), kind, n)
        if left.diagram != right.diagram or left.loops != right.loops + extra:
            violations.append(name)
    return RelationReport(kind, n, checked, tuple(violations))


# ---------------------------------------------------------------------------
# Factor sets and factorization


@lru_cache(maxsize=None)
def factor_set(kind: ChainKind, n: int) -> tuple[GeneratorWord, ...]:
    """Canonical factor set of A_n over A_{n-1} as an ordered word list.

    Brauer/BMW: R = {id, r_1..r_{n-1}, ..., r_{n-1}} then ER words
    r_a..r_{b-2} e_{b-1}..e_{n-1} ordered lexicographically by top edge (a, b);
    TL: {id, e_{n-1}, e_{n-2}e_{n-1}, ...}; S_n: R alone.
    """
    if n < 1:
        raise ArgumentError("factor sets need n >= 1")
    words = [GeneratorWord(())]
    if kind is ChainKind.TEMPERLEY_LIEB:
        for i in range(n - 1, 0, -1):
            words.append(GeneratorWord(tuple(("e", k) for k in range(i, n))))
        return tuple(words)
    for j in range(1, n):
        words.append(GeneratorWord(tuple(("r", k) for k in range(j, n))))
    if kind in (ChainKind.BRAUER, ChainKind.BMW_STRUCTURAL):
        for a in range(1, n):
            for b in range(a + 1, n + 1):
                words.append(GeneratorWord(er_word_tokens(a, b, n)))
    return tuple(words)


def er_word_tokens(a: int, b: int, n: int) -> tuple[Token, ...]:
    """Tokens of the ER word with top edge (a, b): r_a..r_{b-2} e_{b-1}..e_{n-1}."""
    return tuple(("r", k) for k in range(a, b - 1)) + tuple(
        ("e", k) for k in range(b - 1, n)
    )


def factor_map(d: Diagram) -> tuple[GeneratorWord, Diagram]:
    """First-match factorization d = evaluate(y) * b with zero loops.

    b keeps size n with its last strand vertical, so it lies in the embedded
    level-(n-1) diagram basis.
    """
    n = d.n
    if n <= 1 or d.has_vertical_last_strand():
        return GeneratorWord(()), d
    partner = {}
    for a, b in d.pairs:
        partner[a] = b
        partner[b] = a
    # R branch: a through-strand from top j to bottom n picks the coset word.
    # (Temperley-Lieb has no r generators; everything routes through e words.)
    mate = partner[2 * n]
    if mate <= n and d.kind is not ChainKind.TEMPERLEY_LIEB:
        j = mate
        word = GeneratorWord(tuple(("r", k) for k in range(j, n)))
        perm = _coset_rep_map(j, n)
        pairs = []
        for a, b in d.pairs:
            a2 = perm[a] if a <= n else a
            b2 = perm[b] if b <= n else b
            pairs.append((a2, b2))
        return word, Diagram(d.kind, n, canonical_pairs(pairs))
    # ER branch: route through the first top edge in lexicographic order.
    arcs = d.top_arcs()
    if d.kind is ChainKind.TEMPERLEY_LIEB:
        arcs = [(a, b) for a, b in arcs if b == a + 1]
        arcs.sort(key=lambda ab: -ab[0])
    else:
        arcs.sort()
    if not arcs:
        raise FactorizationError(f"no admissible top edge in {d.key()}")
    a, b = arcs[0]
    word = GeneratorWord(er_word_tokens(a, b, n))
    rest = [p for p in range(1, n + 1) if p not in (a, b)]
    relabel = {p: k + 1 for k, p in enumerate(rest)}  # old top -> new top 1..n-2
    pairs = []
    for u, v in d.pairs:
        if (u, v) == (a, b):
            continue

        def send(p: int) -> int:
            if p == 2 * n:  # reroute through the removed strand
                return n - 1
            if p <= n:
                return relabel[p]
            return p
        pairs.append((send(u), send(v)))
    pairs.append((n, 2 * n))
    return word, Diagram(d.kind, n, canonical_pairs(pairs))


def _coset_rep_map(j: int, n: int) -> dict[int, int]:
    """Top relabeling for the coset word u_j = r_j..r_{n-1}: b_top[u_j(p)] = d_top[p]."""
    u = {}
    for p in range(1, n + 1):
        if p < j:
            u[p] = p
        elif p == j:
            u[p] = n
        else:
            u[p] = p - 1
    return u


def shrink(b: Diagram) -> Diagram:
    """Drop the vertical last strand of b, yielding a size-(n-1) diagram."""
    n = b.n
    if not b.has_vertical_last_strand():
        raise ArgumentError("diagram has no vertical last strand to drop")
    pairs = []
    for u, v in b.pairs:
        if (u, v) == (n, 2 * n):
            continue
        pairs.append((u if u < n else u - 1, v if v < n else v - 1))
    return Diagram(b.kind, n - 1, canonical_pairs(pairs))


def grow(b: Diagram, n: int) -> Diagram:
    """Embed a size-(n-1) diagram into size n by adding a vertical strand."""
    if b.n != n - 1:
        raise ArgumentError("embedding expects size n-1")
    pairs = [(u if u < n else u + 1, v if v < n else v + 1) for u, v in b.pairs]
    pairs.append((n, 2 * n))
    return Diagram(b.kind, n, canonical_pairs(pairs))


@lru_cache(maxsize=None)
def _word_of_key(kind: ChainKind, n: int, key: str) -> tuple[Token, ...]:
    d = diagram_from_key(kind, n, key)
    if n <= 1:
        return ()
    y, b = factor_map(d)
    return y.tokens + _word_of_key(kind, n - 1, shrink(b).key())


def word_of(d: Diagram) -> GeneratorWord:
    """A generator word reproducing d with zero loops (recursive factorization)."""
    return GeneratorWord(_word_of_key(d.kind, d.n, d.key()))


def diagram_from_key(kind: ChainKind, n: int, key: str) -> Diagram:
    if key.strip() == "":
        raise ArgumentError("empty diagram key")
    pairs = []
    for part in key.split(","):
        a, _, b = part.partition("-")
        pairs.append((int(a), int(b)))
    return Diagram(kind, n, canonical_pairs(pairs))
