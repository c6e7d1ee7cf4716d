"""The group catalog used by sweeps, plus fast per-group scan machinery.

The manifest pins the sweep universe: every abelian group of order at
most 16 (one spec per isomorphism class) and the non-abelian groups
reachable from the named families.  ``GroupScan`` preprocesses one group
so that per-subset Cayley rows, generation tests and connectivity scans
run at sweep speed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .groups import FiniteGroup, make_group
from .sets import bits_of


@dataclass(frozen=True)
class CatalogEntry:
    spec: str
    name: str


@lru_cache(maxsize=1)
def load_manifest() -> tuple[CatalogEntry, ...]:
    text = resources.files("isoperim").joinpath("catalog_manifest.json").read_text()
    data = json.loads(text)
    return tuple(CatalogEntry(g["spec"], g["name"]) for g in data["groups"])


@lru_cache(maxsize=64)
def build(spec: str) -> FiniteGroup:
    return make_group(spec)


def entries(max_order: int) -> tuple[CatalogEntry, ...]:
    """Catalog entries of order <= max_order, in manifest order."""
    return tuple(e for e in load_manifest() if build(e.spec).order <= max_order)


def frobenius21() -> FiniteGroup:
    """The nonabelian group of order 21 (Z7 with Z3 acting by x -> 2x)."""
    def mul(a, b):
        (x1, y1), (x2, y2) = a, b
        return ((x1 + pow(2, y1, 7) * x2) % 7, (y1 + y2) % 3)

    elems = [(x, y) for x in range(7) for y in range(3)]
    pos = {e: i for i, e in enumerate(elems)}
    tbl = [[pos[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(tbl, name="F21")


class GroupScan:
    """Per-group preprocessing for sweeps over subsets S containing 1.

    All subset arguments are raw bitmasks with bit 0 (the identity) set.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.n = group.order
        n = self.n
        tbl = np.array(group.table, dtype=np.int64)
        self._bitcol = (np.uint32(1) << tbl.astype(np.uint32))
        self._inv = group.inv

    def subsets_with_identity(self):
        """All masks S with 1 in S, ascending."""
        return range(1, 1 << self.n, 2)

    def rows(self, smask: int) -> list[int]:
        """Cayley adjacency rows for S: rows[x] = mask of x*S."""
        idx = list(bits_of(smask))
        return np.bitwise_or.reduce(self._bitcol[:, idx], axis=1).tolist()

    def inverse_mask(self, smask: int) -> int:
        inv = self._inv
        out = 0
        for s in bits_of(smask):
            out |= 1 << inv[s]
        return out

    def rows_rev(self, smask: int) -> list[int]:
        """Rows of the reverse graph, i.e. of Cay(G, S^-1)."""
        return self.rows(self.inverse_mask(smask))

    def hull(self, smask: int) -> int:
        """Mask of <S> for S containing the identity."""
        rows = self.rows(smask)
        t = smask
        frontier = smask
        while frontier:
            add = 0
            for v in bits_of(frontier):
                add |= rows[v]
            frontier = add & ~t
            t |= frontier
        return t

    def generates(self, smask: int) -> bool:
        return self.hull(smask) == (1 << self.n) - 1

    def power_steps_to_full(self, smask: int) -> int | None:
        """Smallest j with S^j = G (S contains 1), or None if <S> != G."""
        full = (1 << self.n) - 1
        rows = self.rows(smask)
        t = smask
        if t == full:
            return 1
        frontier = smask
        j = 1
        while True:
            add = 0
            for v in bits_of(frontier):
                add |= rows[v]
            new = t | add
            j += 1
            if new == full:
                return j
            if new == t:
                return None
            frontier = new & ~t
            t = new

    def scan(self, smask: int, ks: tuple[int, ...], *, rev: bool = False,
             collect: str = "alpha"):
        """Pinned connectivity scan of Cay(G, S) or its reverse."""
        from .iso import subset_scan

        rows = self.rows_rev(smask) if rev else self.rows(smask)
        return subset_scan(rows, self.n, ks, pin0=True, collect=collect)
