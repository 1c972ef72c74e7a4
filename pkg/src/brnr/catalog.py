"""Built-in group constructors and the named catalog used by the CLI.

Every entry carries a regression fingerprint (order plus abelianization
invariant factors) that is re-verified by the test suite.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .groups import (
    FiniteGroup,
    abelianization,
    from_cayley_table,
    from_permutations,
    group_from_json,
)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="C1", _validated=True)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"C{n}", _validated=True)


def direct_product(a: FiniteGroup, b: FiniteGroup,
                   name: Optional[str] = None) -> FiniteGroup:
    na, nb = a.order, b.order
    n = na * nb
    table = [[0] * n for _ in range(n)]
    for a1 in range(na):
        for b1 in range(nb):
            i = a1 * nb + b1
            row = table[i]
            ta, tb = a.table[a1], b.table[b1]
            for a2 in range(na):
                base = ta[a2] * nb
                tb2 = b.table[b1]
                for b2 in range(nb):
                    row[a2 * nb + b2] = base + tb[b2]
    label = name or f"{a.name}x{b.name}"
    return FiniteGroup(table, name=label, _validated=True)


def abelian(factors: list[int], name: Optional[str] = None) -> FiniteGroup:
    g = cyclic(factors[0])
    for f in factors[1:]:
        g = direct_product(g, cyclic(f))
    label = name or "x".join(f"C{f}" for f in factors)
    g.name = label
    return g


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (symmetries of the n-gon), n >= 1."""
    if n < 1:
        raise ValueError("dihedral parameter must be >= 1")
    size = 2 * n

    def idx(i: int, e: int) -> int:
        return i % n + n * e

    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for e in (0, 1):
            row = table[idx(i, e)]
            for j in range(n):
                for f in (0, 1):
                    if e == 0:
                        row[idx(j, f)] = idx(i + j, f)
                    else:
                        row[idx(j, f)] = idx(i - j, 1 - f)
    return FiniteGroup(table, name=f"D{n}", _validated=True)


def quaternion(m: int) -> FiniteGroup:
    """Generalized quaternion group of order 4m (Q8 is m=2), m >= 2."""
    if m < 2:
        raise ValueError("quaternion parameter must be >= 2")
    n2 = 2 * m
    size = 4 * m

    def idx(i: int, e: int) -> int:
        return i % n2 + n2 * e

    table = [[0] * size for _ in range(size)]
    for i in range(n2):
        for e in (0, 1):
            row = table[idx(i, e)]
            for j in range(n2):
                for f in (0, 1):
                    if e == 0:
                        row[idx(j, f)] = idx(i + j, f)
                    elif f == 0:
                        row[idx(j, f)] = idx(i - j, 1)
                    else:
                        row[idx(j, f)] = idx(i - j + m, 0)
    return FiniteGroup(table, name=f"Q{size}", _validated=True)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric degree must be >= 1")
    if n == 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    g = from_permutations(gens, n, name=f"S{n}", cap=1024)
    return g


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial_group()
    gens = [tuple([0] * 0 + [1, 2, 0] + list(range(3, n)))]
    if n > 3:
        if n % 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            gens.append(tuple([0] + list(range(2, n)) + [1]))
    g = from_permutations(gens, n, name=f"A{n}", cap=1024)
    return g


def heisenberg(p: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over Z/p: order p^3, exponent p (p odd)."""
    size = p ** 3

    def idx(a: int, b: int, c: int) -> int:
        return (a % p) * p * p + (b % p) * p + (c % p)

    table = [[0] * size for _ in range(size)]
    for a in range(p):
        for b in range(p):
            for c in range(p):
                row = table[idx(a, b, c)]
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            row[idx(a2, b2, c2)] = idx(a + a2, b + b2, c + c2 + a * b2)
    return FiniteGroup(table, name=f"Heis{p}", _validated=True)


# ---------------------------------------------------------------------------
# the named catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[[], FiniteGroup]
    expected_order: int
    expected_abelianization: tuple[int, ...]  # invariant factors, ascending
    provenance: str

    def construct(self) -> FiniteGroup:
        g = self.build()
        if g.order != self.expected_order:
            raise RuntimeError(
                f"catalog entry {self.name}: order {g.order} != expected "
                f"{self.expected_order}"
            )
        return g

    def verify_fingerprint(self) -> bool:
        g = self.construct()
        ab = abelianization(g)
        return tuple(ab.factors) == self.expected_abelianization


def _abelian_entry(factors: list[int]) -> CatalogEntry:
    name = "x".join(f"C{f}" for f in factors)
    order = 1
    for f in factors:
        order *= f
    from .zlattice import AbelianGroup

    fingerprint = tuple(AbelianGroup.from_factors([f for f in factors if f > 1]).invariant_factors) \
        if any(f > 1 for f in factors) else ()
    return CatalogEntry(
        name=name,
        description=f"abelian group of type {factors}",
        build=(lambda fs=tuple(factors): abelian(list(fs))),
        expected_order=order,
        expected_abelianization=fingerprint,
        provenance="direct product construction",
    )


def _entries() -> list[CatalogEntry]:
    out: list[CatalogEntry] = [
        CatalogEntry("C1", "trivial group", trivial_group, 1, (), "explicit table"),
    ]
    for n in range(2, 65):
        out.append(
            CatalogEntry(
                f"C{n}", f"cyclic group of order {n}",
                (lambda k=n: cyclic(k)), n, (n,), "addition table",
            )
        )
    # non-cyclic abelian groups: all types of order <= 16, plus larger samples
    abelian_types = [
        [2, 2], [2, 4], [3, 3], [2, 6], [2, 2, 2], [2, 2, 4], [4, 4], [2, 8],
        [2, 2, 2, 2], [2, 2, 3], [2, 10], [2, 12], [2, 2, 2, 3],
        [2, 16], [4, 8], [2, 2, 8], [2, 4, 4], [3, 9], [2, 14], [5, 5],
        [2, 2, 2, 4], [2, 2, 2, 2, 2], [3, 3, 3], [2, 2, 6],
    ]
    for typ in abelian_types:
        out.append(_abelian_entry(typ))
    for n in range(3, 17):
        ab = (2,) if n % 2 else (2, 2)
        out.append(
            CatalogEntry(
                f"D{n}", f"dihedral group of order {2 * n}",
                (lambda k=n: dihedral(k)), 2 * n, ab, "semidirect construction",
            )
        )
    out += [
        CatalogEntry("Q8", "quaternion group", (lambda: quaternion(2)), 8, (2, 2),
                     "presentation x^4=1, y^2=x^2, yxy^-1=x^-1"),
        CatalogEntry("Q16", "generalized quaternion of order 16",
                     (lambda: quaternion(4)), 16, (2, 2),
                     "presentation x^8=1, y^2=x^4, yxy^-1=x^-1"),
        CatalogEntry("S3", "symmetric group on 3 letters", (lambda: symmetric(3)),
                     6, (2,), "permutation closure"),
        CatalogEntry("S4", "symmetric group on 4 letters", (lambda: symmetric(4)),
                     24, (2,), "permutation closure"),
        CatalogEntry("A4", "alternating group on 4 letters",
                     (lambda: alternating(4)), 12, (3,), "permutation closure"),
        CatalogEntry("A5", "alternating group on 5 letters",
                     (lambda: alternating(5)), 60, (), "permutation closure"),
        CatalogEntry("Heis3", "Heisenberg group of order 27",
                     (lambda: heisenberg(3)), 27, (3, 3), "unitriangular matrices"),
        CatalogEntry("Heis5", "Heisenberg group of order 125",
                     (lambda: heisenberg(5)), 125, (5, 5), "unitriangular matrices"),
    ]
    return out


_CATALOG: Optional[dict[str, CatalogEntry]] = None


def catalog() -> dict[str, CatalogEntry]:
    global _CATALOG
    if _CATALOG is None:
        entries = _entries()
        _CATALOG = {e.name: e for e in entries}
    return _CATALOG


_PRODUCT_RE = re.compile(r"^C\d+(xC\d+)+$")
_CYCLIC_RE = re.compile(r"^C(\d+)$")


def group_by_name(name: str) -> FiniteGroup:
    """Resolve a catalog name, ad-hoc product name, or file path."""
    cat = catalog()
    if name in cat:
        return cat[name].construct()
    if _CYCLIC_RE.match(name):
        return cyclic(int(name[1:]))
    if _PRODUCT_RE.match(name):
        factors = [int(part[1:]) for part in name.split("x")]
        return abelian(factors, name=name)
    path = Path(name)
    if path.suffix == ".json" and path.exists():
        return group_from_json(path.read_text())
    if path.suffix in (".perm", ".txt") and path.exists():
        from .groups import from_permutation_text

        return from_permutation_text(path.read_text(), name=path.stem)
    raise KeyError(f"unknown group {name!r} (not a catalog name or readable file)")


def catalog_groups(max_order: Optional[int] = None,
                   abelian_only: bool = False,
                   odd_only: bool = False) -> list[tuple[str, FiniteGroup]]:
    """Construct catalog groups filtered by order, sorted by (order, name)."""
    out = []
    for name, entry in catalog().items():
        if max_order is not None and entry.expected_order > max_order:
            continue
        if odd_only and entry.expected_order % 2 == 0:
            continue
        g = entry.construct()
        if abelian_only and not g.is_abelian():
            continue
        out.append((name, g))
    out.sort(key=lambda item: (item[1].order, item[0]))
    return out
