"""Finite groups as validated Cayley tables, and their subgroup families.

Elements are indices 0..n-1 with the identity always at index 0.  All
values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidPermutation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    OrderCapExceeded,
)
from .zlattice import AbelianGroup, lattice_echelon, echelon_insert

DEFAULT_ENUMERATION_CAP = 128
DEFAULT_PERMUTATION_CAP = 512


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Construction always validates the table in full: a silent non-group
    would poison every computation downstream.
    """

    __slots__ = ("order", "table", "inv", "name", "_element_orders", "_cent_masks")

    def __init__(self, table: Sequence[Sequence[int]], name: Optional[str] = None,
                 _validated: bool = False):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if not _validated:
            rows = _validate_and_normalize(rows)
        self.order = n
        self.table = rows
        self.name = name
        inv = [-1] * n
        for g in range(n):
            for h in range(n):
                if rows[g][h] == 0 and rows[h][g] == 0:
                    inv[g] = h
                    break
            if inv[g] < 0:
                raise NoInverse(g)
        self.inv = tuple(inv)
        self._element_orders = None
        self._cent_masks = None

    # -- basics ---------------------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inv[g]]

    def commutator(self, g: int, h: int) -> int:
        """g^-1 h^-1 g h."""
        t = self.table
        return t[t[t[self.inv[g]][self.inv[h]]][g]][h]

    def element_order(self, g: int) -> int:
        if self._element_orders is None:
            orders = []
            for x in range(self.order):
                t = 1
                y = x
                while y != 0:
                    y = self.table[y][x]
                    t += 1
                orders.append(t)
            self._element_orders = tuple(orders)
        return self._element_orders[g]

    def exponent(self) -> int:
        e = 1
        for g in range(self.order):
            o = self.element_order(g)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(g))

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        y = 0
        for _ in range(k):
            y = self.table[y][g]
        return y

    def centralizer_mask(self, g: int) -> int:
        if self._cent_masks is None:
            masks = []
            t = self.table
            for x in range(self.order):
                m = 0
                tx = t[x]
                for y in range(self.order):
                    if tx[y] == t[y][x]:
                        m |= 1 << y
                masks.append(m)
            self._cent_masks = tuple(masks)
        return self._cent_masks[g]

    def __repr__(self):
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order})"


def _validate_and_normalize(rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    if n == 0:
        raise NoIdentity("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"table row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise ValueError(f"table entry {x} out of range [0, {n})")

    identity = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")
    if identity != 0:
        perm = list(range(n))
        perm[0], perm[identity] = identity, 0
        rows = tuple(
            tuple(perm[rows[perm[g]][perm[h]]] for h in range(n)) for g in range(n)
        )

    for g in range(n):
        if not any(rows[g][h] == 0 and rows[h][g] == 0 for h in range(n)):
            raise NoInverse(g)

    if n <= 150:
        for g in range(n):
            rg = rows[g]
            for h in range(n):
                gh = rg[h]
                rh = rows[h]
                tgh = rows[gh]
                for k in range(n):
                    if tgh[k] != rg[rh[k]]:
                        raise NotAssociative(g, h, k)
    else:
        import numpy as np

        t = np.array(rows, dtype=np.int32)
        for g in range(n):
            left = t[t[g], :]
            right = t[g][t]
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                raise NotAssociative(g, int(bad[0]), int(bad[1]))
    return rows


def from_cayley_table(table: Sequence[Sequence[int]],
                      name: Optional[str] = None) -> FiniteGroup:
    """Validate a square index table and return the group (identity at 0)."""
    return FiniteGroup(table, name=name)


# ---------------------------------------------------------------------------
# permutation input
# ---------------------------------------------------------------------------

def from_permutations(generators: Sequence[Sequence[int]], degree: int,
                      name: Optional[str] = None,
                      cap: int = DEFAULT_PERMUTATION_CAP) -> FiniteGroup:
    """Group generated by permutations of {0..degree-1} given as image tuples."""
    gens = []
    for p in generators:
        img = tuple(int(x) for x in p)
        if len(img) != degree or sorted(img) != list(range(degree)):
            raise InvalidPermutation(f"not a bijection on 0..{degree - 1}: {p}")
        gens.append(img)

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            nxt = tuple(g[cur[x]] for x in range(degree))
            if nxt not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(cap, "permutation closure too large")
                index[nxt] = len(elements)
                elements.append(nxt)
                queue.append(nxt)
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            table[i][j] = index[tuple(p[q[x]] for x in range(degree))]
    return FiniteGroup(table, name=name)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation_line(line: str, degree: Optional[int] = None) -> tuple[int, ...]:
    """Parse cycle notation like ``(1 2 3)(4 5)`` (1-based points)."""
    chunks = _CYCLE_RE.findall(line)
    if not chunks and line.strip():
        raise InvalidPermutation(f"cannot parse permutation: {line!r}")
    cycles = []
    maxpt = 0
    for chunk in chunks:
        pts = [int(tok) for tok in chunk.replace(",", " ").split()]
        if not pts:
            continue
        if len(set(pts)) != len(pts) or min(pts) < 1:
            raise InvalidPermutation(f"bad cycle ({chunk})")
        maxpt = max(maxpt, max(pts))
        cycles.append(pts)
    deg = degree if degree is not None else maxpt
    if maxpt > deg:
        raise InvalidPermutation(f"point {maxpt} exceeds degree {deg}")
    img = list(range(deg))
    for pts in cycles:
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def from_permutation_text(text: str, name: Optional[str] = None,
                          cap: int = DEFAULT_PERMUTATION_CAP) -> FiniteGroup:
    """One generator per nonempty line, cycles with 1-based points."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidPermutation("no generators given")
    degree = 0
    for ln in lines:
        p = parse_permutation_line(ln)
        degree = max(degree, len(p))
    gens = [parse_permutation_line(ln, degree) for ln in lines]
    return from_permutations(gens, degree, name=name, cap=cap)


# ---------------------------------------------------------------------------
# group JSON
# ---------------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> str:
    obj = {"order": G.order, "table": [list(r) for r in G.table]}
    if G.name:
        obj["name"] = G.name
    return json.dumps(obj, sort_keys=True)


def group_from_json(text: str) -> FiniteGroup:
    obj = json.loads(text)
    table = obj["table"]
    if "order" in obj and obj["order"] != len(table):
        raise ValueError(
            f"declared order {obj['order']} does not match table size {len(table)}"
        )
    return from_cayley_table(table, name=obj.get("name"))


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup as a sorted element tuple with a kind tag and witnesses."""

    elements: tuple[int, ...]
    kind: str
    generators: tuple[int, ...]

    def __len__(self):
        return len(self.elements)


@dataclass
class SubgroupFamily:
    kind: str
    members: list[SubgroupSet]
    reduction_log: list[str] = field(default_factory=list)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> tuple[int, ...]:
    """Sorted elements of the subgroup generated by gens."""
    seeds = sorted(set(int(g) for g in gens) | {0})
    seen = 1  # bitmask, identity in
    elements = [0]
    queue = [0]
    while queue:
        x = queue.pop()
        row = G.table[x]
        for g in seeds:
            y = row[g]
            if not (seen >> y) & 1:
                seen |= 1 << y
                elements.append(y)
                queue.append(y)
            z = row[G.inv[g]]
            if not (seen >> z) & 1:
                seen |= 1 << z
                elements.append(z)
                queue.append(z)
    return tuple(sorted(elements))


def small_generating_set(G: FiniteGroup) -> list[int]:
    """A short generating set, greedily maximizing growth per generator."""
    gens: list[int] = []
    cur: tuple[int, ...] = (0,)
    while len(cur) < G.order:
        best = None
        best_set = cur
        inside = set(cur)
        for g in range(1, G.order):
            if g in inside:
                continue
            cand = generated_subgroup(G, gens + [g])
            if len(cand) > len(best_set):
                best, best_set = g, cand
                if len(best_set) == G.order:
                    break
        assert best is not None
        gens.append(best)
        cur = best_set
    return gens


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[int], kind: str,
                           generators: Iterable[int] = ()) -> SubgroupSet:
    elems = tuple(sorted(set(int(x) for x in elements)))
    _check_closed(G, elems)
    if kind in ("cyclic", "bicyclic"):
        gens = tuple(generators)
        if len(gens) > 2 or (kind == "cyclic" and len(gens) > 1):
            raise ValueError(f"{kind} witness must have at most "
                             f"{1 if kind == 'cyclic' else 2} generators")
    else:
        gens = tuple(generators)
    return SubgroupSet(elems, kind, gens)


def _check_closed(G: FiniteGroup, elems: tuple[int, ...]) -> None:
    eset = set(elems)
    if 0 not in eset:
        raise ValueError("subgroup does not contain the identity")
    for x in elems:
        if G.inv[x] not in eset:
            raise ValueError(f"subgroup not closed under inverse at {x}")
        row = G.table[x]
        for y in elems:
            if row[y] not in eset:
                raise ValueError(f"subgroup not closed at ({x}, {y})")


def is_abelian_subset(G: FiniteGroup, elems: Sequence[int]) -> bool:
    t = G.table
    return all(t[x][y] == t[y][x] for i, x in enumerate(elems) for y in elems[:i])


def centralizer(G: FiniteGroup, elements: Iterable[int]) -> SubgroupSet:
    mask = (1 << G.order) - 1
    for g in elements:
        mask &= G.centralizer_mask(g)
    elems = tuple(i for i in range(G.order) if (mask >> i) & 1)
    return SubgroupSet(elems, "general", ())


def center(G: FiniteGroup) -> SubgroupSet:
    c = centralizer(G, range(G.order))
    return SubgroupSet(c.elements, "abelian", ())


def commutator_subgroup(G: FiniteGroup) -> SubgroupSet:
    comms = set()
    for g in range(G.order):
        for h in range(G.order):
            comms.add(G.commutator(g, h))
    elems = generated_subgroup(G, comms)
    return SubgroupSet(elems, "general", tuple(sorted(comms - {0})))


# ---------------------------------------------------------------------------
# abelianization
# ---------------------------------------------------------------------------

@dataclass
class Abelianization:
    """G^ab with the projection G -> G^ab in reduced coordinates."""

    group: AbelianGroup          # diagonal presentation on the reduced gens
    factors: list[int]
    coset_of: list[int]          # element index -> coset id
    coset_reps: list[int]        # coset id -> representative element
    coords: list[tuple[int, ...]]  # coset id -> reduced coordinates
    presented: AbelianGroup      # presentation on coset generators

    def project(self, g: int) -> tuple[int, ...]:
        return self.coords[self.coset_of[g]]

    def gen_lift_on_cosets(self, j: int) -> list[int]:
        """Coset-generator coefficients realizing reduced generator j."""
        return self.presented.gen_lift(j)

    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out


def abelianization(G: FiniteGroup) -> Abelianization:
    derived = commutator_subgroup(G).elements
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        cid = len(reps)
        reps.append(g)
        for d in derived:
            coset_of[G.table[g][d]] = cid
    k = len(reps)

    # present the quotient on one generator per coset
    ech: dict[int, list[int]] = {}
    row0 = [0] * k
    row0[0] = 1
    echelon_insert(ech, row0)
    for i in range(k):
        gi = reps[i]
        for j in range(i + 1):
            cij = coset_of[G.table[gi][reps[j]]]
            row = [0] * k
            row[i] += 1
            row[j] += 1
            row[cij] -= 1
            echelon_insert(ech, row)
    rel = [ech[lead] for lead in sorted(ech)]
    presented = AbelianGroup(k, rel)
    factors = presented.invariant_factors
    assert presented.free_rank == 0
    coords = [presented.reduce([int(c == i) for c in range(k)]) for i in range(k)]
    group = (AbelianGroup.from_factors(factors) if factors
             else AbelianGroup.trivial())
    return Abelianization(group, factors, coset_of, reps, coords, presented)


def induced_abelianized_map(sub_ab: Abelianization, amb_ab: Abelianization,
                            sub_elements: Sequence[int]) -> list[list[int]]:
    """Matrix of H^ab -> G^ab on reduced generators, H given inside G.

    sub_ab must be the abelianization of the subgroup with ITS OWN element
    indexing; sub_elements maps those indices back to ambient elements.
    """
    rows = []
    tgt_orders = amb_ab.group.slot_orders()
    for j in range(len(sub_ab.factors)):
        lift = sub_ab.gen_lift_on_cosets(j)
        row = [0] * len(tgt_orders)
        for c, coeff in enumerate(lift):
            if coeff == 0:
                continue
            img = amb_ab.project(sub_elements[sub_ab.coset_reps[c]])
            for t in range(len(row)):
                row[t] += coeff * img[t]
        rows.append([x % d if d else x for x, d in zip(row, tgt_orders)])
    return rows


# ---------------------------------------------------------------------------
# Sylow subgroups
# ---------------------------------------------------------------------------

def sylow_subgroup(G: FiniteGroup, p: int) -> SubgroupSet:
    """A Sylow p-subgroup (the trivial subgroup when p does not divide |G|)."""
    if p < 2:
        raise ValueError("p must be a prime")
    n = G.order
    target = 1
    m = n
    while m % p == 0:
        m //= p
        target *= p
    if target == 1:
        return SubgroupSet((0,), "general", ())

    def p_part(g: int) -> int:
        o = G.element_order(g)
        q = o
        while q % p == 0:
            q //= p
        return G.power(g, q)

    current = (0,)
    gens: list[int] = []
    while len(current) < target:
        grown = False
        inside = set(current)
        for g in range(1, n):
            x = p_part(g)
            if x == 0 or x in inside:
                continue
            cand = generated_subgroup(G, gens + [x])
            sz = len(cand)
            if sz > len(current) and _is_p_power(sz, p):
                gens.append(x)
                current = cand
                grown = True
                break
        if not grown:
            raise RuntimeError("sylow growth stalled; table is inconsistent")
    return SubgroupSet(current, "general", tuple(gens))


def _is_p_power(sz: int, p: int) -> bool:
    while sz % p == 0:
        sz //= p
    return sz == 1


# ---------------------------------------------------------------------------
# subgroup families for restriction kernels
# ---------------------------------------------------------------------------

def _conjugate_set(G: FiniteGroup, elems: tuple[int, ...], g: int) -> tuple[int, ...]:
    return tuple(sorted(G.conj(g, x) for x in elems))


def _conjugacy_classes(G: FiniteGroup, sets: dict[tuple[int, ...], tuple[int, ...]]
                       ) -> tuple[list[tuple[int, ...]], list[str]]:
    """Group the given element-sets into conjugacy orbits; keep min reps."""
    log = []
    seen: set[tuple[int, ...]] = set()
    reps = []
    for elems in sorted(sets):
        if elems in seen:
            continue
        orbit = set()
        for g in range(G.order):
            orbit.add(_conjugate_set(G, elems, g))
        rep = min(orbit)
        reps.append(rep)
        for other in sorted(orbit):
            seen.add(other)
            if other != rep and other in sets:
                log.append(f"dropped {other}: conjugate of {rep}")
    return reps, log


def maximal_subgroup_family(G: FiniteGroup, kind: str,
                            cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupFamily:
    """Inclusion-maximal subgroups of a kind, one per conjugacy class.

    Restriction through a larger subgroup factors through the smaller one and
    conjugation acts trivially on group cohomology, so intersecting
    restriction kernels over this family equals intersecting over all
    subgroups of the kind.
    """
    if kind not in ("cyclic", "bicyclic", "abelian"):
        raise ValueError(f"unknown subgroup kind {kind!r}")
    if G.order > cap:
        raise OrderCapExceeded(cap, f"group of order {G.order}")

    witnesses: dict[tuple[int, ...], tuple[int, ...]] = {}

    if kind == "cyclic":
        for g in range(G.order):
            elems = generated_subgroup(G, [g])
            witnesses.setdefault(elems, (g,))
    elif kind == "bicyclic":
        for g in range(G.order):
            mask = G.centralizer_mask(g)
            for h in range(g, G.order):
                if (mask >> h) & 1:
                    elems = generated_subgroup(G, [g, h])
                    witnesses.setdefault(elems, (g, h))
    else:
        queue: list[tuple[int, ...]] = []
        gens_of: dict[tuple[int, ...], tuple[int, ...]] = {}
        for g in range(G.order):
            elems = generated_subgroup(G, [g])
            if elems not in witnesses:
                witnesses[elems] = (g,)
                gens_of[elems] = (g,)
                queue.append(elems)
        while queue:
            elems = queue.pop()
            mask = (1 << G.order) - 1
            for x in elems:
                mask &= G.centralizer_mask(x)
            inside = set(elems)
            for x in range(G.order):
                if x in inside or not (mask >> x) & 1:
                    continue
                bigger = generated_subgroup(G, gens_of[elems] + (x,))
                if bigger not in witnesses:
                    witnesses[bigger] = gens_of[elems] + (x,)
                    gens_of[bigger] = gens_of[elems] + (x,)
                    queue.append(bigger)

    log: list[str] = []

    if kind == "abelian":
        maximal = {}
        for elems, gens in witnesses.items():
            cent = centralizer(G, elems)
            if cent.elements == elems:
                maximal[elems] = gens
            else:
                log.append(f"dropped {elems}: not self-centralizing")
        keep = maximal
    else:
        all_sets = sorted(witnesses, key=len, reverse=True)
        keep = {}
        for elems in all_sets:
            eset = set(elems)
            container = next(
                (big for big in keep if eset < set(big)), None
            )
            if container is None:
                keep[elems] = witnesses[elems]
            else:
                log.append(f"dropped {elems}: contained in {container}")

    reps, conj_log = _conjugacy_classes(G, keep)
    log.extend(conj_log)
    members = [
        subgroup_from_elements(G, elems, kind, keep[elems]) for elems in reps
    ]
    return SubgroupFamily(kind, members, log)


def all_subgroups(G: FiniteGroup, cap: int = 24) -> list[tuple[int, ...]]:
    """Every subgroup, by exhaustive closure growth.  Test oracle only."""
    if G.order > cap:
        raise OrderCapExceeded(cap, "exhaustive subgroup enumeration")
    seen: set[tuple[int, ...]] = set()
    queue = [(0,)]
    seen.add((0,))
    while queue:
        elems = queue.pop()
        for g in range(1, G.order):
            if g in elems:
                continue
            bigger = generated_subgroup(G, set(elems) | {g})
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    return sorted(seen, key=lambda s: (len(s), s))


def subgroup_as_group(G: FiniteGroup, elements: Sequence[int]) -> tuple[FiniteGroup, list[int]]:
    """The subgroup as its own FiniteGroup plus the index-to-ambient map."""
    elems = sorted(elements)
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[G.table[a][b]] for b in elems] for a in elems]
    sub = FiniteGroup(table, name=None, _validated=True)
    return sub, elems
