"""Independent brute-force recomputation of H^2 for differential testing.

This path shares only the FiniteGroup type with the main engine.  It works
on the UNNORMALIZED bar complex, with dense numpy rows, one prime power at
a time, and reassembles the invariant-factor chain by CRT.  Agreement of
the two pipelines on a grid of groups and moduli is the package's primary
correctness evidence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Optional, Sequence

import numpy as np

from .errors import OrderCapExceeded
from .groups import FiniteGroup
from .zlattice import AbelianGroup, factorize, valuation

DEFAULT_DENSE_CAP = 24


# ---------------------------------------------------------------------------
# Howell-style echelon over Z/p^e with dense numpy rows
# ---------------------------------------------------------------------------

class _Howell:
    """Row span of vectors over Z/p^e, closed under leading annihilators.

    Pivot rows are unit-normalized so every lead is a power of p; the span
    (as a module) of the inserted rows is exactly reproduced, which makes
    both membership reduction and span size exact.
    """

    def __init__(self, width: int, p: int, e: int):
        self.width = width
        self.p = p
        self.e = e
        self.q = p ** e
        self.pivots: dict[int, np.ndarray] = {}
        self.lead_exp: dict[int, int] = {}

    def _canonical(self, row: np.ndarray, j: int) -> tuple[np.ndarray, int]:
        v = int(row[j])
        t = 0
        while v % self.p == 0:
            v //= self.p
            t += 1
        if v != 1:
            row = (row * pow(v, -1, self.q)) % self.q
        return row, t

    def insert(self, row: np.ndarray) -> None:
        q = self.q
        stack = [np.asarray(row, dtype=np.int64) % q]
        while stack:
            cur = stack.pop()
            while True:
                nz = np.nonzero(cur)[0]
                if nz.size == 0:
                    break
                j = int(nz[0])
                cur, t = self._canonical(cur, j)
                piv = self.pivots.get(j)
                if piv is None:
                    self.pivots[j] = cur
                    self.lead_exp[j] = t
                    if t:
                        stack.append((cur * (q // self.p ** t)) % q)
                    break
                s = self.lead_exp[j]
                if t >= s:
                    cur = (cur - self.p ** (t - s) * piv) % q
                else:
                    self.pivots[j] = cur
                    self.lead_exp[j] = t
                    stack.append((cur * (q // self.p ** t)) % q)
                    cur = piv

    def reduce(self, row: np.ndarray) -> np.ndarray:
        """Reduce modulo the span; zero output means membership."""
        q = self.q
        cur = np.asarray(row, dtype=np.int64) % q
        while True:
            nz = np.nonzero(cur)[0]
            if nz.size == 0:
                return cur
            j = int(nz[0])
            piv = self.pivots.get(j)
            if piv is None:
                return cur
            v = int(cur[j])
            t = 0
            while v % self.p == 0:
                v //= self.p
                t += 1
            s = self.lead_exp[j]
            if t < s:
                return cur
            cur = (cur - (int(cur[j]) // self.p ** s) * piv) % q

    def span_size(self) -> int:
        out = 1
        for t in self.lead_exp.values():
            out *= self.p ** (self.e - t)
        return out


# ---------------------------------------------------------------------------
# unnormalized bar differentials, dense rows
# ---------------------------------------------------------------------------

def _d2_row(G: FiniteGroup, g: int, h: int, q: int) -> np.ndarray:
    """Row of the second differential for the pair basis vector (g, h):
    its coefficient in the cocycle constraint at every triple."""
    n = G.order
    table = G.table
    inv = G.inv
    row = np.zeros(n * n * n, dtype=np.int64)
    n2 = n * n
    for x in range(n):
        row[x * n2 + g * n + h] += 1            # (x, g, h): first term
    for x in range(n):
        y = table[inv[x]][g]
        row[x * n2 + y * n + h] -= 1            # (x, y, h) with xy = g
    for y in range(n):
        z = table[inv[y]][h]
        row[g * n2 + y * n + z] += 1            # (g, y, z) with yz = h
    for z in range(n):
        row[g * n2 + h * n + z] -= 1            # (g, h, z): last term
    return row % q


def _d1_row(G: FiniteGroup, g: int, q: int) -> np.ndarray:
    """Coboundary of the indicator 1-cochain of g, on all pairs."""
    n = G.order
    table = G.table
    inv = G.inv
    row = np.zeros(n * n, dtype=np.int64)
    for x in range(n):
        row[x * n + g] += 1
    for x in range(n):
        y = table[inv[x]][g]
        row[x * n + y] -= 1
    for y in range(n):
        row[g * n + y] += 1
    return row % q


def _kernel_generators(G: FiniteGroup, p: int, e: int) -> list[np.ndarray]:
    """Generators of the 2-cocycle module ker(d2) over Z/p^e."""
    n = G.order
    q = p ** e
    n2 = n * n
    ech = _Howell(n * n2 + n2, p, e)
    for g in range(n):
        for h in range(n):
            aug = np.zeros(n * n2 + n2, dtype=np.int64)
            aug[: n * n2] = _d2_row(G, g, h, q)
            aug[n * n2 + g * n + h] = 1
            ech.insert(aug)
    gens = []
    for j in sorted(ech.pivots):
        if j >= n * n2:
            gens.append(ech.pivots[j][n * n2:] % q)
    return gens


def _p_part_factors(G: FiniteGroup, p: int, e: int,
                    include_delta: bool = False) -> list[int]:
    """Invariant factors (p-powers, ascending) of H^2(G, Z/p^e), optionally
    of its quotient by the connecting images of the characters."""
    n = G.order
    q = p ** e
    n2 = n * n
    gens = _kernel_generators(G, p, e)
    s = len(gens)
    if s == 0:
        return []

    extra_rows: list[np.ndarray] = [_d1_row(G, g, q) for g in range(n)]
    if include_delta:
        for chi in _character_generators(G, p, e):
            extra_rows.append(_delta_row(G, chi, q))

    ech = _Howell(n2 + s, p, e)
    for i, gen in enumerate(gens):
        aug = np.zeros(n2 + s, dtype=np.int64)
        aug[:n2] = gen
        aug[n2 + i] = 1
        ech.insert(aug)
    for row in extra_rows:
        aug = np.zeros(n2 + s, dtype=np.int64)
        aug[:n2] = row % q
        ech.insert(aug)

    relations = []
    for j in sorted(ech.pivots):
        if j >= n2:
            relations.append([int(x) for x in ech.pivots[j][n2:]])
    for i in range(s):
        row = [0] * s
        row[i] = q
        relations.append(row)
    group = AbelianGroup(s, relations)
    assert group.free_rank == 0
    return list(group.invariant_factors)


def _character_generators(G: FiniteGroup, p: int, e: int) -> list[np.ndarray]:
    """Value tables generating Hom(G, Z/p^e), from the kernel of d1."""
    n = G.order
    q = p ** e
    ech = _Howell(n * n + n, p, e)
    for g in range(n):
        aug = np.zeros(n * n + n, dtype=np.int64)
        aug[: n * n] = _d1_row(G, g, q)
        aug[n * n + g] = 1
        ech.insert(aug)
    gens = []
    for j in sorted(ech.pivots):
        if j >= n * n:
            gens.append(ech.pivots[j][n * n:] % q)
    return gens


def _delta_row(G: FiniteGroup, chi: np.ndarray, q: int) -> np.ndarray:
    """Connecting 2-cocycle of a Z/q-valued character, on all pairs."""
    n = G.order
    table = G.table
    vals = [int(x) % q for x in chi]
    row = np.zeros(n * n, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            row[g * n + h] = ((vals[g] + vals[h] - vals[table[g][h]]) // q) % q
    return row


def _crt_chain(parts: dict[int, list[int]]) -> list[int]:
    """Combine per-prime ascending p-power chains into one divisor chain."""
    length = max((len(v) for v in parts.values()), default=0)
    out = []
    for i in range(length):
        d = 1
        for p, chain in parts.items():
            pad = length - len(chain)
            if i >= pad:
                d *= chain[i - pad]
        out.append(d)
    for a, b in zip(out, out[1:]):
        if b % a:
            raise AssertionError(f"CRT reassembly broke the chain: {out}")
    return [d for d in out if d > 1]


# ---------------------------------------------------------------------------
# public oracle operations
# ---------------------------------------------------------------------------

def h2_dense(G: FiniteGroup, r: int, cap: int = DEFAULT_DENSE_CAP) -> AbelianGroup:
    """H^2(G, Z/r) recomputed densely, one prime power at a time."""
    if G.order > cap:
        raise OrderCapExceeded(cap, f"dense path asked for group of order {G.order}")
    if r < 1:
        raise ValueError("modulus must be >= 1")
    parts = {}
    for p, e in sorted(factorize(r).items()):
        facs = _p_part_factors(G, p, e)
        parts[p] = facs
    chain = _crt_chain(parts)
    return AbelianGroup.from_factors(chain) if chain else AbelianGroup.trivial()


def h2_dense_qmodz(G: FiniteGroup, cap: int = DEFAULT_DENSE_CAP) -> AbelianGroup:
    """H^2(G, Q/Z) recomputed densely: the p-part is H^2(G, Z/p^e) modulo
    the connecting images of the characters, e = v_p(|G|)."""
    if G.order > cap:
        raise OrderCapExceeded(cap, f"dense path asked for group of order {G.order}")
    parts = {}
    for p, e in sorted(factorize(G.order).items()):
        parts[p] = _p_part_factors(G, p, e, include_delta=True)
    chain = _crt_chain(parts)
    return AbelianGroup.from_factors(chain) if chain else AbelianGroup.trivial()


@dataclass
class OracleReport:
    target: str
    main_fingerprint: tuple
    oracle_fingerprint: tuple
    match: bool
    witness: Optional[str] = None
    checks: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "target": self.target,
            "main": [list(self.main_fingerprint[0]), self.main_fingerprint[1]],
            "oracle": [list(self.oracle_fingerprint[0]), self.oracle_fingerprint[1]],
            "match": self.match,
            "witness": self.witness,
            "checks": sorted(self.checks),
        }


def certify(result, G: Optional[FiniteGroup] = None,
            cap: int = DEFAULT_DENSE_CAP, counting_cap: int = 8) -> OracleReport:
    """Re-check a main-path H2Result: cocycle identities at every triple,
    pairwise non-cohomologous generators, a dense fingerprint recomputation
    (within the dense cap), and the counting identity |H^2| = |Z^2| / |B^2|
    where full span sizes are affordable."""
    group = G if G is not None else result._source
    n = group.order
    m = result.modulus
    is_qmodz = result.coeff.variant == "qmodz"
    checks = []
    witness = None
    name = group.name or f"order-{n}"
    target = f"h2({name}, Q/Z)" if is_qmodz else f"h2({name}, Z/{m})"
    main_fp = result.group.fingerprint()

    w = n - 1
    table = group.table

    def value(vec, g, h):
        if g == 0 or h == 0:
            return 0
        return vec[(g - 1) * w + (h - 1)]

    if m > 1:
        for idx, rep in enumerate(result.reps):
            for g in range(1, n):
                if witness:
                    break
                tg = table[g]
                for h in range(1, n):
                    gh = tg[h]
                    th = table[h]
                    rgh = rep[(g - 1) * w + (h - 1)]
                    for k in range(1, n):
                        tot = (value(rep, h, k) - value(rep, gh, k)
                               + value(rep, g, th[k]) - rgh)
                        if tot % m:
                            witness = (
                                f"cocycle law fails for rep {idx} at {(g, h, k)}"
                            )
                            break
                    if witness:
                        break
            if witness:
                break
        checks.append("cocycle-identity")

    if witness is None and m > 1 and len(result.reps) >= 1:
        echelons = []
        for p, e in factorize(m).items():
            ech = _Howell(w * w, p, e)
            q = p ** e
            for g in range(1, n):
                ech.insert(_d1_row_normalized(group, g, q))
            if is_qmodz:
                for chi in _character_generators(group, p, e):
                    ech.insert(_delta_row_normalized(group, chi, q))
            echelons.append(ech)

        def is_trivial_class(vec) -> bool:
            arr = np.asarray(vec, dtype=np.int64)
            return all(not np.any(ech.reduce(arr % ech.q)) for ech in echelons)

        for i, rep in enumerate(result.reps):
            if is_trivial_class(rep):
                witness = f"generator rep {i} is a coboundary"
                break
            for j in range(i):
                diff = (np.asarray(rep, dtype=np.int64)
                        - np.asarray(result.reps[j], dtype=np.int64))
                if is_trivial_class(diff):
                    witness = f"reps {j} and {i} are cohomologous"
                    break
            if witness:
                break
        checks.append("non-cohomologous-generators")

    oracle_fp = main_fp
    if n <= cap:
        if is_qmodz:
            oracle_group = h2_dense_qmodz(group, cap=cap)
        else:
            oracle_group = h2_dense(group, m, cap=cap)
        oracle_fp = oracle_group.fingerprint()
        if witness is None and main_fp != oracle_fp:
            witness = f"fingerprints differ: main {main_fp} vs oracle {oracle_fp}"
        checks.append("fingerprint")

    if (witness is None and not is_qmodz and 1 < m <= 4
            and n <= counting_cap):
        for p, e in factorize(m).items():
            q = p ** e
            span_d2 = _Howell(n ** 3, p, e)
            for g in range(n):
                for h in range(n):
                    span_d2.insert(_d2_row(group, g, h, q))
            z2 = q ** (n * n) // span_d2.span_size()
            span_d1 = _Howell(n * n, p, e)
            for g in range(n):
                span_d1.insert(_d1_row(group, g, q))
            b2 = span_d1.span_size()
            expected = z2 // b2
            got = prod(
                p ** valuation(d, p) for d in result.group.invariant_factors
                if d % p == 0
            )
            if expected != got:
                witness = (
                    f"counting identity fails at p={p}: |Z2|/|B2| = {expected}, "
                    f"group gives {got}"
                )
                break
        checks.append("counting-identity")

    return OracleReport(target, main_fp, oracle_fp, witness is None, witness, checks)


def _d1_row_normalized(G: FiniteGroup, g: int, q: int) -> np.ndarray:
    """Normalized coboundary of the indicator of g (g != 0), on E x E."""
    n = G.order
    w = n - 1
    table = G.table
    inv = G.inv
    row = np.zeros(w * w, dtype=np.int64)
    if g == 0:
        return row
    for x in range(1, n):
        row[(x - 1) * w + (g - 1)] += 1
        row[(g - 1) * w + (x - 1)] += 1
        y = table[inv[x]][g]
        if y:
            row[(x - 1) * w + (y - 1)] -= 1
    return row % q


def _delta_row_normalized(G: FiniteGroup, chi: np.ndarray, q: int) -> np.ndarray:
    n = G.order
    w = n - 1
    table = G.table
    vals = [int(x) % q for x in chi]
    row = np.zeros(w * w, dtype=np.int64)
    for g in range(1, n):
        for h in range(1, n):
            row[(g - 1) * w + (h - 1)] = (
                (vals[g] + vals[h] - vals[table[g][h]]) // q
            ) % q
    return row


def sweep(cells: Sequence[tuple[str, FiniteGroup, object]],
          cap: int = DEFAULT_DENSE_CAP,
          par: int = 1) -> list[OracleReport]:
    """Run main path and oracle over a grid; aggregate mismatch reports."""
    from .cohomology import h2

    def run(cell):
        name, G, coeff = cell
        main = h2(G, coeff)
        if coeff.variant == "zmod":
            oracle_group = h2_dense(G, coeff.r, cap=cap)
            target = f"h2({name}, Z/{coeff.r})"
        else:
            oracle_group = h2_dense_qmodz(G, cap=cap)
            target = f"h2({name}, Q/Z)"
        main_fp = main.group.fingerprint()
        oracle_fp = oracle_group.fingerprint()
        match = main_fp == oracle_fp
        witness = None
        if not match:
            witness = f"fingerprints differ: main {main_fp} vs oracle {oracle_fp}"
        return OracleReport(target, main_fp, oracle_fp, match, witness,
                            ["fingerprint"])

    if par > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=par) as pool:
            return list(pool.map(run, cells))
    return [run(cell) for cell in cells]


def sweep_to_json(reports: Sequence[OracleReport]) -> str:
    return json.dumps([r.to_json_obj() for r in reports], indent=2, sort_keys=True)
