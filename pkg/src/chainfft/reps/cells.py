"""Brauer standard modules on half-diagrams and their Gel'fand-Tsetlin adaptation.

A half diagram on n points keeps k arcs and m = n - 2k ordered through
points; the standard module for a partition of m pairs halves with
seminormal symmetric-group vectors.  Chain-adapted bases are built level by
level: the basis of a module at level i is the union of the images of the
level-(i-1) adapted bases under the (generically unique) embeddings, found
by exact intertwiner solves.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from ..combinat import ChainKind, Partition, cached_bratteli, partition_key
from ..diagrams import Diagram, GeneratorWord, evaluate
from ..errors import ParameterError
from ..pathalg import enumerate_paths
from ..ratlinalg import identity, intersect_kernel, invert, mat_mul
from .seminormal import sn_block_table

HalfDiagram = tuple[tuple[int, int], ...]  # sorted arcs on {1..n}


def half_diagrams(n: int, k: int) -> list[HalfDiagram]:
    """All k-arc half diagrams on n points, sorted."""
    out = []
    points = range(1, n + 1)
    for support in combinations(points, 2 * k):
        for pairing in _pairings(list(support)):
            out.append(tuple(sorted(tuple(sorted(p)) for p in pairing)))
    return sorted(set(out))


def _pairings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for j, other in enumerate(rest):
        for tail in _pairings(rest[:j] + rest[j + 1 :]):
            yield [(first, other)] + tail


def through_points(half: HalfDiagram, n: int) -> list[int]:
    used = {p for arc in half for p in arc}
    return [p for p in range(1, n + 1) if p not in used]


def act_on_half(d: Diagram, half: HalfDiagram):
    """Compose the diagram d on top of the half diagram.

    Returns (new_half, slot map sigma, loops) or None when through strands drop.
    sigma[j] is the slot reached by the j-th (ascending) new through point.
    """
    n = d.n
    thru = through_points(half, n)
    adj: dict[tuple, list] = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for a, b in d.pairs:
        ua = ("T", a) if a <= n else ("M", a - n)
        ub = ("T", b) if b <= n else ("M", b - n)
        link(ua, ub)
    for a, b in half:
        link(("M", a), ("M", b))
    for s, t in enumerate(thru, start=1):
        link(("M", t), ("S", s))

    visited: set = set()
    arcs = []
    reached: dict[int, int] = {}

    def walk(start):
        prev, cur = None, start
        visited.add(cur)
        while True:
            nbrs = adj[cur]
            if cur[0] == "M":
                nxt = nbrs[1] if nbrs[0] == prev else nbrs[0]
                if prev is not None and nbrs[0] == prev and nbrs[1] == prev:
                    nxt = prev
            else:
                nxt = nbrs[0]
            visited.add(nxt)
            if nxt[0] != "M":
                return nxt
            prev, cur = cur, nxt

    for i in range(1, n + 1):
        start = ("T", i)
        if start in visited:
            continue
        end = walk(start)
        if end[0] == "T":
            arcs.append((i, end[1]))
        else:
            reached[i] = end[1]
    # a strand between two slots would have to start at a slot
    for s in range(1, len(thru) + 1):
        start = ("S", s)
        if start not in visited:
            end = walk(start)
            if end[0] == "S":
                return None
    loops = 0
    for i in range(1, n + 1):
        node = ("M", i)
        if node in adj and node not in visited:
            loops += 1
            prev, cur = None, node
            while cur not in visited:
                visited.add(cur)
                nbrs = adj[cur]
                nxt = nbrs[0]
                if prev is not None and nbrs[0] == prev:
                    nxt = nbrs[1]
                prev, cur = cur, nxt
    new_half = tuple(sorted(tuple(sorted(a)) for a in arcs))
    new_thru = sorted(reached)
    sigma = tuple(reached[t] for t in new_thru)
    return new_half, sigma, loops


# ---------------------------------------------------------------------------
# Seminormal S_m matrices for through-strand permutations


@lru_cache(maxsize=None)
def _sn_generator_matrix(m: int, lam: Partition, i: int):
    from .core import assemble_dense

    B = cached_bratteli(ChainKind.SYMMETRIC_GROUP, m)
    table = sn_block_table(m)
    return assemble_dense(B, table, m, lam, ("r", i))


@lru_cache(maxsize=None)
def perm_matrix(m: int, lam: Partition, sigma: tuple[int, ...]):
    """Seminormal matrix of the permutation diagram sending rank j to slot sigma[j]."""
    d = len(enumerate_paths(cached_bratteli(ChainKind.SYMMETRIC_GROUP, m), m, lam))
    out = identity(d)
    f = list(sigma)
    word = []
    while True:
        desc = next((i for i in range(len(f) - 1) if f[i] > f[i + 1]), None)
        if desc is None:
            break
        word.append(desc + 1)
        f[desc], f[desc + 1] = f[desc + 1], f[desc]
    for i in word:
        out = mat_mul(out, _sn_generator_matrix(m, lam, i))
    return out


# ---------------------------------------------------------------------------
# Cell bases and matrices


@lru_cache(maxsize=None)
def cell_basis(n: int, lam: Partition):
    """Ordered basis: (half diagram, tableau path), halves sorted, paths in GT order."""
    m = sum(lam)
    k = (n - m) // 2
    halves = half_diagrams(n, k)
    B = cached_bratteli(ChainKind.SYMMETRIC_GROUP, m)
    tabs = enumerate_paths(B, m, lam)
    return [(h, t) for h in halves for t in range(len(tabs))]


@lru_cache(maxsize=None)
def cell_matrix(n: int, lam: Partition, word: GeneratorWord, q: Fraction):
    """Matrix of the word's diagram on the standard module of lam."""
    prod = evaluate(word, ChainKind.BRAUER, n)
    return _cell_matrix_of_diagram(n, lam, prod.diagram, q, extra_loops=prod.loops)


def _cell_matrix_of_diagram(n: int, lam: Partition, d: Diagram, q: Fraction, extra_loops: int = 0):
    basis = cell_basis(n, lam)
    index = {b: j for j, b in enumerate(basis)}
    m = sum(lam)
    dim = len(basis)
    halves = sorted({h for h, _ in basis})
    tab_count = dim // len(halves) if halves else 0
    out = [[Fraction(0)] * dim for _ in range(dim)]
    for h in halves:
        res = act_on_half(d, h)
        if res is None:
            continue
        new_half, sigma, loops = res
        scale = Fraction(q) ** (loops + extra_loops)
        pm = perm_matrix(m, lam, sigma)
        for t_in in range(tab_count):
            col = index[(h, t_in)]
            for t_out in range(tab_count):
                val = pm[t_out][t_in]
                if val:
                    out[index[(new_half, t_out)]][col] += scale * val
    return out


# ---------------------------------------------------------------------------
# Level-by-level adapted bases


@lru_cache(maxsize=None)
def brauer_gt_level(level: int, q: Fraction):
    """Adapted generator matrices per vertex at the given Brauer chain level.

    Returns {vertex: {token: dense matrix over GT paths}}.
    """
    q = Fraction(q)
    B = cached_bratteli(ChainKind.BRAUER, max(level, 1))
    if level == 0:
        return {(): {}}
    if level == 1:
        return {(1,): {}}
    below = brauer_gt_level(level - 1, q)
    sub_tokens = [(s, i) for i in range(1, level - 1) for s in ("r", "e")]
    own_tokens = [(s, i) for i in range(1, level) for s in ("r", "e")]
    out = {}
    for nu in B.vertices(level):
        cell_mats = {
            tok: cell_matrix(level, nu, GeneratorWord((tok,)), q) for tok in own_tokens
        }
        dim_nu = len(cell_basis(level, nu))
        columns = []
        for mu in sorted(set(B.in_neighbors(level, nu)), key=partition_key):
            embed_cols = _embedding_columns(
                cell_mats, below[mu], dim_nu, sub_tokens, nu, mu, q
            )
            columns.extend(embed_cols)
        if len(columns) != dim_nu:
            raise ParameterError(
                f"adapted basis of {nu!r} at level {level} has wrong size at q={q}"
            )
        G = [[columns[c][r] for c in range(dim_nu)] for r in range(dim_nu)]
        Ginv = invert(G)
        out[nu] = {
            tok: mat_mul(Ginv, mat_mul(cell_mats[tok], G)) for tok in own_tokens
        }
    return out


def _embedding_columns(cell_mats, mu_mats, dim_nu, sub_tokens, nu, mu, q):
    """Columns of the unique intertwiner from the mu module into the nu module."""
    d_mu = len(next(iter(mu_mats.values()))) if mu_mats else _gt_dim(mu)
    unknowns = dim_nu * d_mu
    ops = []
    for tok in sub_tokens:
        rho_nu = cell_mats[tok]
        rho_mu = mu_mats[tok]
        op = [[Fraction(0)] * unknowns for _ in range(unknowns)]
        for r in range(dim_nu):
            for c in range(d_mu):
                row = op[r * d_mu + c]
                for k in range(dim_nu):
                    v = rho_nu[r][k]
                    if v:
                        row[k * d_mu + c] += v
                for k in range(d_mu):
                    v = rho_mu[k][c]
                    if v:
                        row[r * d_mu + k] -= v
        ops.append(op)
    kernel = intersect_kernel(ops, unknowns)
    if len(kernel) != 1:
        raise ParameterError(
            f"embedding {mu!r} -> {nu!r} not unique at q={q} (dim {len(kernel)})"
        )
    vec = kernel[0]
    pivot = next(x for x in vec if x != 0)
    vec = [x / pivot for x in vec]
    return [
        [vec[r * d_mu + c] for r in range(dim_nu)] for c in range(d_mu)
    ]


def _gt_dim(mu: Partition) -> int:
    return 1  # only used for levels 0 and 1 where every module is a line


def brauer_block_table(n: int, q: Fraction):
    """Local blocks for all Brauer generators up to index n-1, extracted per level."""
    q = Fraction(q)
    B = cached_bratteli(ChainKind.BRAUER, max(n, 1))
    table = {}
    for level in range(2, n + 1):
        mats = brauer_gt_level(level, q)
        i = level - 1  # the top generator index visible at this level
        for nu, toks in mats.items():
            paths = enumerate_paths(B, level, nu)
            pos = {p: j for j, p in enumerate(paths)}
            for sym in ("r", "e"):
                M = toks[(sym, i)]
                _extract_frame_blocks(table, (sym, i), M, paths, pos, i, B)
    return table


def _extract_frame_blocks(table, token, M, paths, pos, i, B):
    from .seminormal import middles

    dim = len(paths)
    for a in range(dim):
        for b in range(dim):
            if M[a][b] == 0:
                continue
            pa, pb = paths[a], paths[b]
            if any(pa[k] != pb[k] for k in range(len(pa)) if k != i):
                raise ParameterError(
                    f"generator {token} not block local at paths {pa} / {pb}"
                )
    for mu_pick in {p[i - 1] for p in paths}:
        nu = paths[0][i + 1] if len(paths[0]) > i + 1 else paths[0][-1]
        mids = middles(B, i, mu_pick, nu)
        if not mids:
            continue
        block = [[None] * len(mids) for _ in mids]
        seen = False
        for a, pa in enumerate(paths):
            if pa[i - 1] != mu_pick:
                continue
            for b, pb in enumerate(paths):
                if pb[i - 1] != mu_pick:
                    continue
                if any(pa[k] != pb[k] for k in range(len(pa)) if k != i):
                    continue
                r = mids.index(pa[i])
                c = mids.index(pb[i])
                v = M[a][b]
                if block[r][c] is None:
                    block[r][c] = v
                elif block[r][c] != v:
                    raise ParameterError(
                        f"{token} block at ({mu_pick}, {nu}) not context free"
                    )
                seen = True
        if not seen:
            continue
        filled = tuple(
            tuple(Fraction(0) if x is None else x for x in row) for row in block
        )
        key = (token, mu_pick, nu)
        if key in table and table[key] != filled:
            raise ParameterError(f"inconsistent block for {key}")
        if any(any(row) for row in filled) or key not in table:
            table[key] = filled
