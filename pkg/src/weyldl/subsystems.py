"""Standalone contexts for parabolic sub-root-systems, and type identification.

A node subset S of an ambient system spans a root subsystem whose
simple roots are the alpha_s, s in S.  Re-rooting it as a standalone
RootSystem (Cartan submatrix, nodes renumbered 1..|S| in sorted order)
keeps enumeration costs proportional to the subsystem, not the ambient
group.  ``identify_standard`` finds the Bourbaki name of an irreducible
subsystem together with a labelling isomorphism that carries a given
index permutation to the standard twist.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .rootdata import build_twist, cartan_matrix
from .weyl import WeylGroup
from .rootdata import _build_from_cartan  # standalone closure builder

__all__ = ["SubContext", "sub_context", "identify_standard", "cartan_isos"]


class SubContext:
    """Standalone Weyl group for a node subset of an ambient group."""

    def __init__(self, ambient: WeylGroup, nodes: frozenset[int]):
        self.ambient = ambient
        self.nodes = tuple(sorted(nodes))
        self.to_sub = {s: k + 1 for k, s in enumerate(self.nodes)}
        self.to_ambient = {k + 1: s for k, s in enumerate(self.nodes)}
        cart = tuple(
            tuple(ambient.system.cartan[i - 1][j - 1] for j in self.nodes)
            for i in self.nodes
        )
        label = f"{ambient.system.family}{ambient.system.rank}|{'.'.join(map(str, self.nodes))}"
        self.system = _build_from_cartan(label, len(self.nodes), cart)
        self.group = WeylGroup(self.system)

    def word_to_sub(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.to_sub[i] for i in word)

    def word_to_ambient(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.to_ambient[i] for i in word)

    def pi_to_sub(self, pi: dict[int, int]) -> dict[int, int]:
        return {self.to_sub[i]: self.to_sub[pi[i]] for i in self.nodes}


_SUB_MEMO: dict[tuple, SubContext] = {}


def sub_context(ambient: WeylGroup, nodes: Iterable[int]) -> SubContext:
    key = (ambient.system.key, frozenset(nodes))
    if key not in _SUB_MEMO:
        _SUB_MEMO[key] = SubContext(ambient, frozenset(nodes))
    return _SUB_MEMO[key]


def cartan_isos(
    source: Sequence[Sequence[int]],
    target: Sequence[Sequence[int]],
):
    """All bijections phi (as 1-based tuples) with target[phi(i)][phi(j)] = source[i][j]."""
    n = len(source)
    if len(target) != n:
        return
    assignment = [0] * n  # 0-based target index per source node, -1-free

    def backtrack(i: int, used: set[int]):
        if i == n:
            yield tuple(a + 1 for a in assignment)
            return
        for t in range(n):
            if t in used:
                continue
            ok = True
            for j in range(i):
                tj = assignment[j]
                if target[t][tj] != source[i][j] or target[tj][t] != source[j][i]:
                    ok = False
                    break
            if ok and target[t][t] == source[i][i]:
                assignment[i] = t
                used.add(t)
                yield from backtrack(i + 1, used)
                used.discard(t)

    yield from backtrack(0, set())


def _candidate_types(rank: int):
    if rank == 1:
        yield ("A", 1)
        return
    yield ("A", rank)
    if rank >= 2:
        yield ("B", rank)
        yield ("C", rank)
    if rank >= 3:
        yield ("D", rank)
    if rank in (6, 7, 8):
        yield ("E", rank)
    if rank == 4:
        yield ("F", 4)
    if rank == 2:
        yield ("G", 2)


def identify_standard(
    cartan: Sequence[Sequence[int]],
    sigma: dict[int, int],
) -> Optional[tuple[str, int, int, dict[int, int]]]:
    """Match an irreducible Cartan matrix plus index permutation to a name.

    Returns (family, rank, twist_order, phi) where phi maps source nodes
    (1-based) to Bourbaki nodes so that phi . sigma . phi^{-1} is the
    standard twist of that order, or None when nothing matches.  B2 is
    preferred over the transposed C2 labelling so Suzuki twists land on
    the standard ('B', 2, 2) name.
    """
    n = len(cartan)
    order = 1
    cur = dict(sigma)
    ident = {i: i for i in sigma}
    while cur != ident:
        cur = {i: sigma[cur[i]] for i in cur}
        order += 1
    for family, rank in _candidate_types(n):
        try:
            target = cartan_matrix(family, rank)
        except Exception:
            continue
        try:
            std = build_twist(family, rank, order)
        except ValueError:
            continue
        for phi_tuple in cartan_isos(cartan, target):
            phi = {i + 1: phi_tuple[i] for i in range(n)}
            if all(phi[sigma[i]] == std(phi[i]) for i in phi):
                return family, rank, order, phi
    return None
