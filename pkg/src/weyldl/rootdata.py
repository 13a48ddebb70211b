"""Root systems, coweights and diagram twists in Bourbaki labelling.

Roots are kept in simple-root coordinates: a root is a tuple of
integers ``c`` with ``alpha = sum_i c[i] alpha_{i+1}``.  The Cartan
matrix convention is ``C[i][j] = <alpha_j, alpha_i^vee>`` (1-based in
all interfaces, 0-based in storage), so the simple reflection acts by

    s_i(alpha) = alpha - (sum_j C[i][j] c_j) alpha_i.

Coweights are coordinate vectors in the fundamental-coweight basis and
pair with a root by the plain coordinate dot product, since
``alpha_i(omega_j^vee) = delta_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactnum import QuadExt, qext

__all__ = [
    "RootSystem",
    "Coweight",
    "Twist",
    "build_root_system",
    "build_composite_system",
    "build_twist",
    "identity_twist",
    "make_twist",
    "apply_twist_to_coweight",
    "pairing",
    "positive_root_count",
    "weyl_order",
]

Root = tuple[int, ...]

_FAMILIES = "ABCDEFG"


class InvalidCartanTypeError(ValueError):
    """Raised for (family, rank) pairs that do not name a root system."""


def _chain_cartan(n: int) -> list[list[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of an irreducible type, Bourbaki node order."""
    n = rank
    if family == "A" and n >= 1:
        c = _chain_cartan(n)
    elif family == "B" and n >= 2:
        # alpha_n is the short root.
        c = _chain_cartan(n)
        c[n - 1][n - 2] = -2
    elif family == "C" and n >= 2:
        # alpha_n is the long root.
        c = _chain_cartan(n)
        c[n - 2][n - 1] = -2
    elif family == "D" and n >= 3:
        c = _chain_cartan(n)
        c[n - 1][n - 2] = 0
        c[n - 2][n - 1] = 0
        c[n - 3][n - 1] = -1
        c[n - 1][n - 3] = -1
    elif family == "E" and n in (6, 7, 8):
        c = [[0] * n for _ in range(n)]
        for i in range(n):
            c[i][i] = 2
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
        for i, j in edges:
            c[i - 1][j - 1] = -1
            c[j - 1][i - 1] = -1
    elif family == "F" and n == 4:
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short.
        c = _chain_cartan(4)
        c[2][1] = -2
    elif family == "G" and n == 2:
        # alpha_1 short, alpha_2 long; highest root 3a1 + 2a2.
        c = [[2, -3], [-1, 2]]
    else:
        raise InvalidCartanTypeError(f"no root system of type {family}{rank}")
    return tuple(tuple(row) for row in c)


def positive_root_count(family: str, rank: int) -> int:
    """Classical closed forms for |Phi^+|."""
    n = rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, -1),
        "F": 24,
        "G": 6,
    }[family]


def weyl_order(family: str, rank: int) -> int:
    """|W| closed forms, used as enumeration oracles in tests."""
    import math

    n = rank
    if family == "A":
        return math.factorial(n + 1)
    if family in ("B", "C"):
        return (2 ** n) * math.factorial(n)
    if family == "D":
        return (2 ** (n - 1)) * math.factorial(n)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if family == "F":
        return 1152
    if family == "G":
        return 12
    raise InvalidCartanTypeError(family)


def reflect(cartan: Sequence[Sequence[int]], i: int, coords: Root) -> Root:
    """Apply the simple reflection s_i (1-based i) to root coordinates."""
    row = cartan[i - 1]
    t = sum(row[j] * coords[j] for j in range(len(coords)))
    if t == 0:
        return tuple(coords)
    out = list(coords)
    out[i - 1] -= t
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of a (possibly reducible) crystallographic system."""

    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    highest_root: Root
    n0: int
    root_index: dict[Root, int] = field(compare=False, repr=False, default_factory=dict)

    @property
    def key(self) -> tuple[str, int]:
        return (self.family, self.rank)

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def is_positive(self, coords: Root) -> bool:
        return coords in self.root_index

    def component_nodes(self) -> tuple[frozenset[int], ...]:
        """Connected components of the Dynkin diagram, as 1-based node sets."""
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in range(1, self.rank + 1):
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                i = stack.pop()
                if i in comp:
                    continue
                comp.add(i)
                for j in range(1, self.rank + 1):
                    if j != i and self.cartan[i - 1][j - 1] != 0 and j not in comp:
                        stack.append(j)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(sorted(comps, key=min))

    def sub_n0(self, nodes: Iterable[int]) -> int:
        """Max coordinate sum over roots supported inside ``nodes``."""
        s = set(nodes)
        if not s:
            return 0
        best = 0
        for r in self.positive_roots:
            if all(r[j] == 0 or (j + 1) in s for j in range(self.rank)):
                best = max(best, sum(r))
        return best


def _close_positive_roots(cartan) -> list[Root]:
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(1, n + 1):
                img = reflect(cartan, i, r)
                if img not in roots and all(c >= 0 for c in img):
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    # Sort by (height, coordinates) for deterministic indexing.
    return sorted(roots, key=lambda r: (sum(r), r))


def _build_from_cartan(family: str, rank: int, cartan) -> RootSystem:
    roots = _close_positive_roots(cartan)
    highest = max(roots, key=lambda r: (sum(r), r))
    system = RootSystem(
        family=family,
        rank=rank,
        cartan=cartan,
        positive_roots=tuple(roots),
        highest_root=highest,
        n0=sum(highest),
    )
    system.root_index.update({r: k for k, r in enumerate(system.positive_roots)})
    return system


def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct an irreducible root system by reflection closure."""
    cartan = cartan_matrix(family, rank)
    system = _build_from_cartan(family, rank, cartan)
    expected = positive_root_count(family, rank)
    if len(system.positive_roots) != expected:
        raise AssertionError(
            f"{family}{rank}: found {len(system.positive_roots)} positive roots, "
            f"expected {expected}"
        )
    return system


def build_composite_system(parts: Sequence[tuple[str, int]]) -> RootSystem:
    """Orthogonal direct sum of irreducible systems (block Cartan matrix)."""
    if not parts:
        raise InvalidCartanTypeError("empty composite")
    blocks = [cartan_matrix(f, r) for f, r in parts]
    n = sum(len(b) for b in blocks)
    cartan = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        m = len(b)
        for i in range(m):
            for j in range(m):
                cartan[off + i][off + j] = b[i][j]
        off += m
    family = "+".join(f"{f}{r}" for f, r in parts)
    return _build_from_cartan(family, n, tuple(tuple(row) for row in cartan))


@dataclass(frozen=True)
class Coweight:
    """Coordinates in the fundamental-coweight basis; entries are QuadExt."""

    coords: tuple[QuadExt, ...]

    @classmethod
    def of(cls, values: Iterable) -> "Coweight":
        return cls(tuple(qext(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "Coweight":
        return cls.of([0] * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> "Coweight":
        return cls.of([1 if j == i - 1 else 0 for j in range(rank)])

    def __getitem__(self, i: int) -> QuadExt:
        """1-based coordinate access (Bourbaki node index)."""
        return self.coords[i - 1]

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Coweight") -> "Coweight":
        if len(self) != len(other):
            raise ValueError("rank mismatch")
        return Coweight(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def scale(self, c) -> "Coweight":
        c = qext(c)
        return Coweight(tuple(c * x for x in self.coords))

    def to_json(self) -> list[dict]:
        return [x.to_json() for x in self.coords]

    @classmethod
    def from_json(cls, obj: list) -> "Coweight":
        return cls(tuple(QuadExt.from_json(x) for x in obj))


def pairing(alpha: Sequence[int], mu: Coweight) -> QuadExt:
    """Evaluate a root (coordinate tuple) against a coweight: sum c_i m_i."""
    if len(alpha) != len(mu):
        raise ValueError("rank mismatch between root and coweight")
    total = qext(0)
    for c, m in zip(alpha, mu.coords):
        if c:
            total = total + m * c
    return total


@dataclass(frozen=True)
class Twist:
    """A diagram automorphism delta, stored as the 1-based image tuple."""

    perm: tuple[int, ...]
    order: int

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def inv(self, i: int) -> int:
        return self.perm.index(i) + 1

    @property
    def inverse_perm(self) -> tuple[int, ...]:
        n = len(self.perm)
        out = [0] * n
        for i, img in enumerate(self.perm, start=1):
            out[img - 1] = i
        return tuple(out)

    def is_identity(self) -> bool:
        return all(self.perm[i] == i + 1 for i in range(len(self.perm)))


def _perm_order(perm: tuple[int, ...]) -> int:
    order = 1
    cur = perm
    ident = tuple(range(1, len(perm) + 1))
    while cur != ident:
        cur = tuple(perm[i - 1] for i in cur)
        order += 1
    return order


def make_twist(system: RootSystem, perm: Sequence[int]) -> Twist:
    """Build a twist from an explicit image tuple, checking compatibility.

    A nontrivial twist must either preserve the Cartan matrix
    (C[d(i)][d(j)] = C[i][j], the simply-laced diagram case) or reverse
    it (C[d(i)][d(j)] = C[j][i], the B2/G2/F4 foldings behind the
    Suzuki and Ree groups).
    """
    perm = tuple(perm)
    n = system.rank
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    c = system.cartan
    preserves = all(
        c[perm[i] - 1][perm[j] - 1] == c[i][j] for i in range(n) for j in range(n)
    )
    reverses = all(
        c[perm[i] - 1][perm[j] - 1] == c[j][i] for i in range(n) for j in range(n)
    )
    if not (preserves or reverses):
        raise ValueError(f"{perm} is not a diagram automorphism or folding")
    return Twist(perm=perm, order=_perm_order(perm))


def identity_twist(rank: int) -> Twist:
    return Twist(perm=tuple(range(1, rank + 1)), order=1)


def build_twist(family: str, rank: int, twist_order: int) -> Twist:
    """The standard twist of the given order (identity when order is 1)."""
    n = rank
    if twist_order == 1:
        return identity_twist(n)
    if twist_order == 2:
        if family == "A" and n >= 2:
            perm = tuple(n + 1 - i for i in range(1, n + 1))
        elif family == "D" and n >= 4:
            perm = tuple(range(1, n - 1)) + (n, n - 1)
        elif family == "E" and n == 6:
            perm = (6, 2, 5, 4, 3, 1)
        elif family == "B" and n == 2:
            perm = (2, 1)
        elif family == "G" and n == 2:
            perm = (2, 1)
        elif family == "F" and n == 4:
            perm = (4, 3, 2, 1)
        else:
            raise ValueError(f"type {family}{rank} has no twist of order 2")
    elif twist_order == 3:
        if family == "D" and n == 4:
            # delta: 1 -> 4, 3 -> 1, 4 -> 3 (so delta^{-1}(1) = 3).
            perm = (4, 2, 1, 3)
        else:
            raise ValueError(f"type {family}{rank} has no twist of order 3")
    else:
        raise ValueError(f"unsupported twist order {twist_order}")
    return Twist(perm=perm, order=twist_order)


def apply_twist_to_coweight(delta: Twist, mu: Coweight) -> Coweight:
    """omega_i -> omega_{delta(i)}: result[delta(i)] = mu[i]."""
    n = len(mu)
    if len(delta.perm) != n:
        raise ValueError("rank mismatch")
    out: list[QuadExt] = [qext(0)] * n
    for i in range(1, n + 1):
        out[delta(i) - 1] = mu[i]
    return Coweight(tuple(out))
