"""Exact integer linear algebra and finitely generated abelian groups.

Conventions used throughout the package:

* vectors are ROW vectors, matrices act on the right (``x @ M``);
* a matrix is a plain ``list[list[int]]`` internally, wrapped in
  :class:`IntMatrix` at API boundaries;
* an abelian group is presented by generators and a relation matrix whose
  rows are relations among the generators;
* a homomorphism is the matrix whose row ``i`` is the image of source
  generator ``i`` in target generator coordinates.

Everything is arbitrary-precision: no modular shortcuts, no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Optional, Sequence


# ---------------------------------------------------------------------------
# small number-theory helpers (shared by cohomology and the oracle)
# ---------------------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    """Largest e with p^e dividing n (n > 0)."""
    if n <= 0:
        raise ValueError("valuation needs n > 0")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


# ---------------------------------------------------------------------------
# IntMatrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix; entries are arbitrary-precision ints."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            for i, row in enumerate(rows):
                if len(row) != width:
                    raise ValueError(f"row {i} has length {len(row)}, expected {width}")
            if cols is not None and width != cols:
                raise ValueError(f"rows have length {width}, expected {cols}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_cols", cols if not rows else len(rows[0]))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self._cols if self._cols is not None else 0  # type: ignore[attr-defined]

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], cols=n)

    def tolists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        bt = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries],
            cols=other.cols,
        )


def _as_rows(mat, cols: Optional[int] = None) -> list[list[int]]:
    if isinstance(mat, IntMatrix):
        return mat.tolists()
    return [list(map(int, row)) for row in mat]


# ---------------------------------------------------------------------------
# Smith normal form (dense, with optional transforms)
# ---------------------------------------------------------------------------

def _snf_core(a: list[list[int]], m: int, n: int,
              want_u: bool, want_uinv: bool, want_v: bool, want_vinv: bool,
              chain: bool = True, modulus: Optional[int] = None):
    """Diagonalize a in place by unimodular row/column operations.

    Returns (diag, U, Uinv, V, Vinv); unrequested transforms are None.
    With chain=True the diagonal satisfies d1 | d2 | ... (true SNF).

    When a modulus is given, the caller guarantees the row lattice contains
    modulus * Z^n (the modulus rows are physically present); entries and
    the V-side transforms are then kept reduced, which prevents the classic
    intermediate-entry blow-up.  The U side cannot be tracked in that mode.
    """
    if modulus is not None and (want_u or want_uinv):
        raise ValueError("row transforms are not available in modulus mode")
    u = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    uinv = [[int(i == j) for j in range(m)] for i in range(m)] if want_uinv else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None
    vinv = [[int(i == j) for j in range(n)] for i in range(n)] if want_vinv else None
    mod = modulus
    # matrix entries reduce into [0, 2*mod) so the physical modulus rows
    # never collapse to zero; transforms only ever matter mod the modulus
    amod = 2 * modulus if modulus else None

    def row_sub(i, t, q):  # row_i -= q * row_t
        ai, at = a[i], a[t]
        if amod:
            for j in range(n):
                ai[j] = (ai[j] - q * at[j]) % amod
        else:
            for j in range(n):
                ai[j] -= q * at[j]
        if u is not None:
            ui, ut = u[i], u[t]
            for j in range(m):
                ui[j] -= q * ut[j]
        if uinv is not None:
            for r in range(m):
                uinv[r][t] += q * uinv[r][i]

    def row_swap(i, t):
        a[i], a[t] = a[t], a[i]
        if u is not None:
            u[i], u[t] = u[t], u[i]
        if uinv is not None:
            for r in range(m):
                uinv[r][i], uinv[r][t] = uinv[r][t], uinv[r][i]

    def row_neg(i):
        a[i] = [(-x) % amod for x in a[i]] if amod else [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]
        if uinv is not None:
            for r in range(m):
                uinv[r][i] = -uinv[r][i]

    def col_sub(j, t, q):  # col_j -= q * col_t
        if amod:
            for r in range(m):
                a[r][j] = (a[r][j] - q * a[r][t]) % amod
        else:
            for r in range(m):
                a[r][j] -= q * a[r][t]
        if v is not None:
            if mod:
                for r in range(n):
                    v[r][j] = (v[r][j] - q * v[r][t]) % mod
            else:
                for r in range(n):
                    v[r][j] -= q * v[r][t]
        if vinv is not None:
            vt, vj = vinv[t], vinv[j]
            if mod:
                for c in range(n):
                    vt[c] = (vt[c] + q * vj[c]) % mod
            else:
                for c in range(n):
                    vt[c] += q * vj[c]

    def col_swap(j, t):
        for r in range(m):
            a[r][j], a[r][t] = a[r][t], a[r][j]
        if v is not None:
            for r in range(n):
                v[r][j], v[r][t] = v[r][t], v[r][j]
        if vinv is not None:
            vinv[j], vinv[t] = vinv[t], vinv[j]

    def col_neg(j):
        if amod:
            for r in range(m):
                a[r][j] = (-a[r][j]) % amod
        else:
            for r in range(m):
                a[r][j] = -a[r][j]
        if v is not None:
            if mod:
                for r in range(n):
                    v[r][j] = (-v[r][j]) % mod
            else:
                for r in range(n):
                    v[r][j] = -v[r][j]
        if vinv is not None:
            vinv[j] = [(-x) % mod for x in vinv[j]] if mod else [-x for x in vinv[j]]

    size = min(m, n)
    t = 0
    while t < size:
        # locate a pivot of minimal absolute value in the working submatrix
        piv = None
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                x = ai[j]
                if x:
                    if best is None or abs(x) < best:
                        best = abs(x)
                        piv = (i, j)
                        if best == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        if piv[0] != t:
            row_swap(piv[0], t)
        if piv[1] != t:
            col_swap(piv[1], t)
        if a[t][t] < 0:
            row_neg(t)

        while True:
            # clear column t
            restart = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t]:
                        row_swap(i, t)
                        restart = True
                        break
            if restart:
                if a[t][t] < 0:
                    row_neg(t)
                continue
            # clear row t
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(j, t)
                        restart = True
                        break
            if restart:
                if a[t][t] < 0:
                    col_neg(t)
                continue
            if chain:
                # pivot must divide every remaining entry
                d = a[t][t]
                offender = None
                for i in range(t + 1, m):
                    ai = a[i]
                    for j in range(t + 1, n):
                        if ai[j] % d:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is not None:
                    row_sub(t, offender, -1)  # row_t += row_offender
                    continue
            break
        t += 1

    diag = [a[i][i] for i in range(size)]
    for i in range(size):
        if diag[i] < 0:  # can only happen at the tail; normalize defensively
            row_neg(i)
            diag[i] = -diag[i]
    return diag, u, uinv, v, vinv


def smith_normal_form(mat) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ M @ V = D, U and V unimodular, D a
    diagonal matrix whose entries form a divisibility chain."""
    rows = _as_rows(mat)
    m = len(rows)
    n = len(rows[0]) if rows else (mat.cols if isinstance(mat, IntMatrix) else 0)
    work = [list(r) for r in rows]
    diag, u, _, v, _ = _snf_core(work, m, n, True, False, True, False, chain=True)
    d = [[0] * n for _ in range(m)]
    for i, x in enumerate(diag):
        d[i][i] = x
    return (
        IntMatrix(u or [], cols=m),
        IntMatrix(d, cols=n),
        IntMatrix(v or [], cols=n),
    )


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : x @ M = 0} for the matrix with the given rows."""
    m = len(rows)
    work = [list(map(int, r)) for r in rows]
    diag, u, _, _, _ = _snf_core(work, m, ncols, True, False, False, False, chain=False)
    out = []
    for i in range(m):
        if i >= len(diag) or diag[i] == 0:
            out.append(u[i])
    return out


def preimage_lattice(fmat: Sequence[Sequence[int]], rel: Sequence[Sequence[int]],
                     ncols: int) -> list[list[int]]:
    """Generators of {x : x @ F lies in the row lattice of rel}.

    F has len(fmat) rows of length ncols; rel rows live in the same Z^ncols.
    """
    m = len(fmat)
    stacked = [list(map(int, r)) for r in fmat] + [list(map(int, r)) for r in rel]
    ker = kernel_basis(stacked, ncols)
    out = []
    for row in ker:
        x = row[:m]
        if any(x):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Hermite-style row echelon of a lattice (membership tests)
# ---------------------------------------------------------------------------

def echelon_insert(ech: dict[int, list[int]], row: list[int]) -> None:
    """Insert a row into an echelon basis keyed by leading column."""
    while True:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            return
        if row[lead] < 0:
            row = [-x for x in row]
        piv = ech.get(lead)
        if piv is None:
            ech[lead] = row
            return
        q = row[lead] // piv[lead]
        row = [x - q * y for x, y in zip(row, piv)]
        if row[lead]:
            # remainder is a smaller positive lead: exchange roles
            ech[lead], row = row, piv


def lattice_echelon(rows: Iterable[Sequence[int]]) -> dict[int, list[int]]:
    ech: dict[int, list[int]] = {}
    for row in rows:
        echelon_insert(ech, list(map(int, row)))
    return ech


def echelon_reduce(ech: dict[int, list[int]], vec: Sequence[int]) -> list[int]:
    """Reduce vec modulo the lattice; a zero result means membership."""
    v = list(map(int, vec))
    for lead in sorted(ech):
        if lead >= len(v):
            break
        x = v[lead]
        if x:
            piv = ech[lead]
            q = x // piv[lead]
            if q:
                v = [a - q * b for a, b in zip(v, piv)]
    return v


def in_lattice(ech: dict[int, list[int]], vec: Sequence[int]) -> bool:
    return not any(echelon_reduce(ech, vec))


# ---------------------------------------------------------------------------
# finitely generated abelian groups
# ---------------------------------------------------------------------------

class AbelianGroup:
    """A finitely generated abelian group presented by integer relations.

    ``AbelianGroup(n, rel)`` is Z^n modulo the row lattice of rel.  The
    invariant factors (each > 1) plus the free rank are the canonical,
    presentation-independent fingerprint.
    """

    __slots__ = ("ngens", "relations", "modulus", "_struct")

    def __init__(self, ngens: int, relations=None, modulus: Optional[int] = None):
        self.ngens = int(ngens)
        rows = _as_rows(relations) if relations is not None else []
        for r in rows:
            if len(r) != self.ngens:
                raise ValueError(
                    f"relation length {len(r)} does not match ngens={self.ngens}"
                )
        if modulus is not None:
            # the group is declared killed by the modulus: making that part
            # of the presentation lets the normal form stay entry-bounded
            for i in range(self.ngens):
                row = [0] * self.ngens
                row[i] = modulus
                rows.append(row)
        self.relations = rows
        self.modulus = modulus
        self._struct = None

    @classmethod
    def from_factors(cls, factors: Sequence[int], free_rank: int = 0) -> "AbelianGroup":
        """Group ⊕ Z/f ⊕ Z^free_rank presented diagonally (each f > 1)."""
        facs = [int(f) for f in factors]
        if any(f < 2 for f in facs):
            raise ValueError("factors must all be > 1")
        n = len(facs) + free_rank
        rel = []
        for i, f in enumerate(facs):
            row = [0] * n
            row[i] = f
            rel.append(row)
        return cls(n, rel)

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(0, [])

    # -- canonical structure ------------------------------------------------

    def _structure(self):
        if self._struct is None:
            m = len(self.relations)
            n = self.ngens
            work = [list(r) for r in self.relations]
            diag, _, _, v, vinv = _snf_core(
                work, m, n, False, False, True, True, chain=True,
                modulus=self.modulus,
            )
            orders = [diag[j] if j < len(diag) else 0 for j in range(n)]
            slots = [j for j in range(n) if orders[j] != 1]
            self._struct = (orders, slots, v, vinv)
        return self._struct

    @property
    def invariant_factors(self) -> list[int]:
        orders, slots, _, _ = self._structure()
        return [orders[j] for j in slots if orders[j] > 1]

    @property
    def free_rank(self) -> int:
        orders, slots, _, _ = self._structure()
        return sum(1 for j in slots if orders[j] == 0)

    def fingerprint(self) -> tuple[tuple[int, ...], int]:
        return (tuple(self.invariant_factors), self.free_rank)

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def exponent(self) -> Optional[int]:
        if self.free_rank:
            return None
        facs = self.invariant_factors
        return facs[-1] if facs else 1

    # -- coordinates ---------------------------------------------------------

    def slot_orders(self) -> list[int]:
        """Orders of the reduced generators (>1 torsion, 0 free)."""
        orders, slots, _, _ = self._structure()
        return [orders[j] for j in slots]

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of an element given on the raw generators."""
        orders, slots, v, _ = self._structure()
        if len(x) != self.ngens:
            raise ValueError("coordinate length mismatch")
        y = [sum(x[i] * v[i][j] for i in range(self.ngens)) for j in slots]
        out = []
        for yj, j in zip(y, slots):
            d = orders[j]
            out.append(yj % d if d else yj)
        return tuple(out)

    def gen_lift(self, k: int) -> list[int]:
        """Raw-generator coordinates of the k-th reduced generator."""
        _, slots, _, vinv = self._structure()
        return list(vinv[slots[k]])

    def reduced(self) -> "AbelianGroup":
        """The same group presented diagonally on its reduced generators."""
        orders = self.slot_orders()
        n = len(orders)
        rel = []
        for i, d in enumerate(orders):
            if d:
                row = [0] * n
                row[i] = d
                rel.append(row)
        return AbelianGroup(n, rel)

    # -- misc ----------------------------------------------------------------

    def relation_echelon(self) -> dict[int, list[int]]:
        return lattice_echelon(self.relations)

    def __repr__(self):
        facs = self.invariant_factors
        parts = [f"Z/{d}" for d in facs] + ["Z"] * self.free_rank
        return "AbelianGroup(" + (" + ".join(parts) if parts else "0") + ")"

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.fingerprint() == other.fingerprint()

    def __hash__(self):
        return hash(self.fingerprint())


class AbelianHom:
    """Homomorphism between presented abelian groups.

    Row i of the matrix is the image of source generator i written on the
    target's raw generators.  Construction checks that every source
    relation maps into the target's relation lattice.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: AbelianGroup, target: AbelianGroup, matrix,
                 validate: bool = True):
        self.source = source
        self.target = target
        rows = _as_rows(matrix)
        if len(rows) != source.ngens:
            raise ValueError(
                f"hom matrix has {len(rows)} rows, expected {source.ngens}"
            )
        for r in rows:
            if len(r) != target.ngens:
                raise ValueError("hom matrix width does not match target")
        self.matrix = rows
        if validate:
            ech = target.relation_echelon()
            for rel in source.relations:
                img = _vec_mat(rel, rows, target.ngens)
                if not in_lattice(ech, img):
                    raise ValueError(
                        "matrix does not define a homomorphism: relation "
                        f"{rel} maps outside the target relation lattice"
                    )

    def __call__(self, x: Sequence[int]) -> list[int]:
        return _vec_mat(list(x), self.matrix, self.target.ngens)

    def compose(self, other: "AbelianHom") -> "AbelianHom":
        """self ∘ other (apply other first)."""
        if other.target is not self.source and other.target.ngens != self.source.ngens:
            raise ValueError("composition mismatch")
        rows = [self(row) for row in other.matrix]
        return AbelianHom(other.source, self.target, rows, validate=False)

    def is_zero(self) -> bool:
        return all(
            all(c == 0 for c in self.target.reduce(row)) for row in self.matrix
        )

    @classmethod
    def identity(cls, group: AbelianGroup) -> "AbelianHom":
        n = group.ngens
        return cls(group, group, [[int(i == j) for j in range(n)] for i in range(n)],
                   validate=False)

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> "AbelianHom":
        return cls(source, target, [[0] * target.ngens for _ in range(source.ngens)],
                   validate=False)


def _vec_mat(x: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for xi, row in zip(x, rows):
        if xi:
            for j, rj in enumerate(row):
                if rj:
                    out[j] += xi * rj
    return out


def hom_kernel(f: AbelianHom) -> tuple[AbelianGroup, AbelianHom]:
    """Kernel of f with its inclusion into the source."""
    pre = preimage_lattice(f.matrix, f.target.relations, f.target.ngens)
    if not pre:
        k = AbelianGroup(0, [])
        return k, AbelianHom(k, f.source, [], validate=False)
    rel = preimage_lattice(pre, f.source.relations, f.source.ngens)
    k = AbelianGroup(len(pre), rel)
    incl = AbelianHom(k, f.source, pre, validate=False)
    return k, incl


def hom_image(f: AbelianHom) -> AbelianGroup:
    """The image of f as an abstract abelian group."""
    rel = preimage_lattice(f.matrix, f.target.relations, f.target.ngens)
    return AbelianGroup(f.source.ngens, rel)


def hom_cokernel(f: AbelianHom) -> tuple[AbelianGroup, AbelianHom]:
    """Cokernel of f with the projection from the target."""
    coker = AbelianGroup(f.target.ngens, f.target.relations + f.matrix)
    proj = AbelianHom(f.target, coker,
                      [[int(i == j) for j in range(f.target.ngens)]
                       for i in range(f.target.ngens)],
                      validate=False)
    return coker, proj


def quotient_mod_n(group: AbelianGroup, n: int) -> AbelianGroup:
    """The quotient A / nA."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return AbelianGroup(group.ngens, group.relations, modulus=n)


def direct_sum(groups: Sequence[AbelianGroup]
               ) -> tuple[AbelianGroup, list[AbelianHom], list[AbelianHom]]:
    """Direct sum with injections and projections."""
    total = sum(g.ngens for g in groups)
    rel = []
    offset = 0
    for g in groups:
        for row in g.relations:
            rel.append([0] * offset + list(row) + [0] * (total - offset - g.ngens))
        offset += g.ngens
    summed = AbelianGroup(total, rel)
    injections = []
    projections = []
    offset = 0
    for g in groups:
        inj = [[0] * total for _ in range(g.ngens)]
        for i in range(g.ngens):
            inj[i][offset + i] = 1
        injections.append(AbelianHom(g, summed, inj, validate=False))
        prj = [[0] * g.ngens for _ in range(total)]
        for i in range(g.ngens):
            prj[offset + i][i] = 1
        projections.append(AbelianHom(summed, g, prj, validate=False))
        offset += g.ngens
    return summed, injections, projections


# ---------------------------------------------------------------------------
# character groups of finite abelian groups
# ---------------------------------------------------------------------------

def dual_factors(factors: Sequence[int], modulus: Optional[int]) -> list[int]:
    """Cyclic orders of Hom(⊕ Z/d_i, M): d_i for M = Q/Z, gcd(d_i, r) for Z/r."""
    if modulus is None:
        return [int(d) for d in factors]
    return [gcd(int(d), modulus) for d in factors]


def dual_group(factors: Sequence[int], modulus: Optional[int]) -> AbelianGroup:
    """Character group of a finite abelian group with the given factors."""
    facs = [d for d in dual_factors(factors, modulus) if d > 1]
    return AbelianGroup.from_factors(facs) if facs else AbelianGroup.trivial()


def dual_hom_matrix(fmat: Sequence[Sequence[int]], src_factors: Sequence[int],
                    tgt_factors: Sequence[int], modulus: Optional[int]
                    ) -> list[list[int]]:
    """Matrix of the dual map Hom(B, M) -> Hom(A, M) of f: A -> B.

    fmat is given on the diagonal presentations (row j = image of the j-th
    A-generator in B-coordinates); only factors > 1 are kept on each side,
    matching :func:`dual_group`.
    """
    src = [int(d) for d in src_factors]
    tgt = [int(d) for d in tgt_factors]
    src_dual = dual_factors(src, modulus)
    tgt_dual = dual_factors(tgt, modulus)
    src_keep = [j for j, d in enumerate(src_dual) if d > 1]
    tgt_keep = [i for i, d in enumerate(tgt_dual) if d > 1]

    # evaluate characters inside Z/N
    if modulus is None:
        n_mod = 1
        for d in src + tgt:
            n_mod = lcm(n_mod, d) or max(n_mod, 1)
        n_mod = max(n_mod, 1)
    else:
        n_mod = modulus

    rows = []
    for i in tgt_keep:
        # the i-th target character evaluated on each kept source generator
        scale_i = n_mod // (tgt[i] if modulus is None else gcd(tgt[i], n_mod))
        row = []
        for j in src_keep:
            val = (scale_i * fmat[j][i]) % n_mod
            den = n_mod // (src[j] if modulus is None else gcd(src[j], n_mod))
            if val % den:
                raise ValueError("dual map value is not expressible; invalid hom")
            row.append((val // den) % (src_dual[j] if src_dual[j] else 1))
        rows.append(row)
    return rows
