"""Exact rational vectorisation of relation families and the rank table.

Rows live in the basis of convergent words of a fixed weight N (sorted
as binary integers).  Cyclic-insertion rows follow the table procedure:
regularise, express product corrections through zeta(2k) and resolve
them with the depth-1 stuffle, rewrite pi^N into the zeta({2}^{N/2})
basis word, then read off coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .identities import (
    Identity,
    alt_sum,
    compute_Lk,
    cyclic_sum,
    gen_altodd_odd,
)
from .lincomb import LinComb
from .regalgebra import (
    pi_power_as_two_comp,
    regularise,
    stuffle_depth1,
    zeta_even_coeff,
    zeta_two_power,
)
from .words import (
    ONE,
    BlockDecomposition,
    ZetaComposition,
    convergent_words,
    word_of,
    word_to_mzv,
)


def zagier_dim(N: int) -> int:
    """Conjectural dimension d_N with d_N = d_{N-2} + d_{N-3}."""
    if N < 0:
        raise ValueError("weight must be >= 0")
    d = [1, 0, 1]
    while len(d) <= N:
        d.append(d[-2] + d[-3])
    return d[N]


def basis_compositions(N: int) -> list[ZetaComposition]:
    """Convergent weight-N compositions ordered by their words."""
    out = []
    for w in convergent_words(N):
        comp, _ = word_to_mzv(w)
        out.append(comp)
    return out


def _basis_index(N: int) -> dict[ZetaComposition, int]:
    return {comp: i for i, comp in enumerate(basis_compositions(N))}


def vectorize(comb: LinComb, N: int) -> list[Fraction]:
    """Coefficient vector of a weight-N combination in the MZV basis.

    Word terms are regularised; pi^N constants are rewritten as
    (N+1)! zeta({2}^{N/2}); any other pi power is rejected.
    """
    index = _basis_index(N)
    vec = [Fraction(0)] * len(index)
    flat = regularise(comb)
    for key, coeff in flat.items():
        if not isinstance(key, ZetaComposition):
            raise TypeError(f"cannot vectorise term {key!r}")
        if key is ONE or not key.args:
            if coeff.pi_exp != N:
                raise ValueError(
                    f"constant term pi^{coeff.pi_exp} in a weight-{N} relation"
                )
            two_comp, scale = pi_power_as_two_comp(coeff.pi_exp)
            vec[index[two_comp]] += coeff.coeff * scale
            continue
        if coeff.pi_exp:
            raise ValueError("unresolved pi coefficient; use the stuffle route")
        if key.weight != N:
            raise ValueError(f"weight {key.weight} term in weight-{N} relation")
        vec[index[key]] += coeff.coeff
    return vec


def identity_vector(ident: Identity) -> list[Fraction]:
    return vectorize(ident.difference(), ident.weight)


def cyclic_row(lengths: tuple[int, ...], N: int) -> list[Fraction]:
    """Full-conjecture relation vector via the stuffle product route."""
    lengths = tuple(lengths)
    comb = cyclic_sum(lengths)
    if N % 2 == 0:
        comb = comb - LinComb.term(word_of(BlockDecomposition(0, (N + 2,))), 1)
    index = _basis_index(N)
    vec = vectorize(comb, N)
    n = len(lengths)
    for k in range(1, n // 2 + 1):
        ms = compute_Lk(lengths, 2 * k)
        if not ms:
            continue
        # (-1)^k A_k = (-1)^k 2^{2k+1}/(2k+2) zeta({2}^k) = r * zeta(2k)
        even = zeta_even_coeff(k)
        r = (
            Fraction((-1) ** k * 2 ** (2 * k + 1), 2 * k + 2)
            * zeta_two_power(k).coeff
            / even.coeff
        )
        for m in ms:
            if m:
                inner = regularise(LinComb.term(word_of(BlockDecomposition(0, m)), 1))
            else:
                inner = LinComb.term(ONE)
            for comp, coeff in inner.items():
                if coeff.pi_exp:
                    raise ValueError("unexpected pi coefficient inside correction")
                if comp is ONE or not comp.args:
                    resolved = LinComb.term(ZetaComposition((2 * k,)))
                else:
                    resolved = stuffle_depth1(2 * k, comp)
                for out_comp, c2 in resolved.items():
                    vec[index[out_comp]] += r * coeff.coeff * c2.coeff
    return vec


def _necklace_representatives(total: int, parts: int) -> list[tuple[int, ...]]:
    """Compositions of `total` into `parts` positive parts, mod rotation."""
    reps = set()
    stack: list[tuple[int, ...]] = [()]
    out = []
    for comp in _compositions_pos(total, parts):
        rot = min(comp[i:] + comp[:i] for i in range(parts))
        if rot not in reps:
            reps.add(rot)
            out.append(rot)
    return out


def _compositions_pos(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for head in range(1, total - parts + 2):
        for rest in _compositions_pos(total - head, parts - 1):
            yield (head,) + rest


def cyclic_family(N: int) -> list[tuple[int, ...]]:
    """Length tuples feeding the cyclic family at weight N.

    Compositions of N+2 into n >= 3 parts of the non-trivial parity,
    modulo cyclic shifts.  Single blocks give tautologies and block
    pairs are plain duality instances, so both stay out.
    """
    out = []
    for n in range(3, N + 3):
        if (N - n) % 2 == 0:
            continue  # trivial decompositions
        out.extend(_necklace_representatives(N + 2, n))
    return out


def duality_rows(N: int) -> list[list[Fraction]]:
    """One row zeta(w) - zeta(dual w) per non-self-dual convergent word."""
    index = _basis_index(N)
    rows = []
    for w in convergent_words(N):
        dw = w.dual()
        if dw == w:
            continue
        comp, _ = word_to_mzv(w)
        dcomp, _ = word_to_mzv(dw)
        vec = [Fraction(0)] * len(index)
        vec[index[comp]] += 1
        vec[index[dcomp]] -= 1
        rows.append(vec)
    return rows


def _some_term_has_adjacent_ones(comb: LinComb) -> bool:
    """Whether any word in the combination has cyclically adjacent 1-blocks.

    This is the documented failure zone of the alternation identities;
    the relation sweep stays clear of it.
    """
    from .words import block_decompose

    for w, _ in comb.items():
        ls = block_decompose(w).lengths
        n = len(ls)
        if any(ls[i] == 1 and ls[(i + 1) % n] == 1 for i in range(n)):
            return True
    return False


def altodd_even_family(N: int) -> list[tuple[int, ...]]:
    """Alt-odd length tuples at even weight, modulo the Alt symmetry.

    Odd positions must hold distinct values; compositions producing an
    alternation term with cyclically adjacent unit blocks are excluded.
    """
    reps = []
    seen = set()
    for n in range(3, N + 3, 1):
        if (N - n) % 2 == 0:
            continue
        for comp in _compositions_pos(N + 2, n):
            odds = comp[0::2]
            if len(set(odds)) < len(odds):
                continue
            key = (tuple(sorted(odds)), comp[1::2])
            if key in seen:
                continue
            seen.add(key)
            comb = alt_sum(comp, tuple(range(1, n + 1, 2)))
            if _some_term_has_adjacent_ones(comb):
                continue
            reps.append(comp)
    return reps


def altodd_odd_family(N: int) -> list[tuple[tuple[int, ...], int]]:
    """(lengths, x) pairs for the odd-weight alt-odd sweep at weight N.

    All compositions of m <= N into an even number of parts; x is fixed
    by the weight; rows violating the positivity constraint, with a
    repeated odd-position value (identically zero), or producing a term
    with cyclically adjacent unit blocks are skipped.
    """
    out = []
    for m in range(2, N + 1):
        for parts in range(2, m + 1, 2):
            for comp in _compositions_pos(m, parts):
                odds = comp[0::2]
                if len(set(odds)) < len(odds):
                    continue
                x = N + 2 - sum(odds)
                if x <= 0:
                    continue
                try:
                    ident = gen_altodd_odd(comp, x)
                except ValueError:
                    continue
                if _some_term_has_adjacent_ones(ident.lhs):
                    continue
                out.append((comp, x))
    return out


def altodd_rows(N: int) -> list[list[Fraction]]:
    """Alt-odd relation vectors; zero and duplicate rows are pruned."""
    rows = []
    seen = set()
    if N % 2 == 0:
        combs = (
            alt_sum(lengths, tuple(range(1, len(lengths) + 1, 2)))
            for lengths in altodd_even_family(N)
        )
    else:
        combs = (
            gen_altodd_odd(lengths, x).lhs for lengths, x in altodd_odd_family(N)
        )
    for comb in combs:
        vec = vectorize(comb, N)
        key = tuple(vec)
        if not any(vec) or key in seen:
            continue
        seen.add(key)
        rows.append(vec)
    return rows


def cyclic_rows(N: int) -> list[list[Fraction]]:
    return [cyclic_row(lengths, N) for lengths in cyclic_family(N)]


def family_rows(N: int, family: str) -> list[list[Fraction]]:
    """Relation vectors of one family at weight N."""
    if family == "cyclic":
        return cyclic_rows(N)
    if family == "altodd":
        return altodd_rows(N)
    if family == "duality":
        return duality_rows(N)
    raise ValueError(f"unknown family {family!r}")


@dataclass
class RelationMatrix:
    """Rows of relation vectors over the convergent-word basis."""

    weight: int
    basis: list[ZetaComposition]
    rows: list[list[Fraction]]

    @classmethod
    def build(cls, N: int, families: tuple[str, ...]) -> "RelationMatrix":
        rows = []
        for family in families:
            rows.extend(family_rows(N, family))
        return cls(N, basis_compositions(N), rows)

    def sparse_triplets(self) -> list[tuple[int, int, str]]:
        out = []
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x:
                    out.append((i, j, str(x)))
        return out

    @property
    def rank(self) -> int:
        return rank_of(self.rows)


def rank_of(rows: list[list[Fraction]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    mat = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        r = [int(x * den) for x in row]
        if any(r):
            mat.append(r)
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank = 0
    prev_piv = 1
    row = 0
    for col in range(n_cols):
        piv_row = None
        for i in range(row, n_rows):
            if mat[i][col]:
                piv_row = i
                break
        if piv_row is None:
            continue
        mat[row], mat[piv_row] = mat[piv_row], mat[row]
        piv = mat[row][col]
        for i in range(row + 1, n_rows):
            if not mat[i][col] and not any(mat[i][col:]):
                continue
            factor = mat[i][col]
            for j in range(col, n_cols):
                mat[i][j] = (mat[i][j] * piv - factor * mat[row][j]) // prev_piv
        prev_piv = piv
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


@dataclass
class TableRow:
    weight: int
    cyclic_init: int
    cyclic_rank: int
    altodd_init: int
    altodd_rank: int
    duality_init: int
    duality_rank: int
    overall: int
    expected: int

    def __str__(self) -> str:
        return (
            f"{self.weight} & {self.cyclic_init} & {self.cyclic_rank} & "
            f"{self.altodd_init} & {self.altodd_rank} & "
            f"{self.duality_init} & {self.duality_rank} & "
            f"{self.overall} & {self.expected}"
        )


def table_row(N: int, families: tuple[str, ...] = ("cyclic", "altodd", "duality")) -> TableRow:
    """Assemble one row of the relation-rank table."""
    cyc_rows = cyclic_rows(N) if "cyclic" in families else []
    alt_rows = altodd_rows(N) if "altodd" in families else []
    dual_rows = duality_rows(N) if "duality" in families else []
    return TableRow(
        weight=N,
        cyclic_init=len(cyc_rows),
        cyclic_rank=rank_of(cyc_rows),
        altodd_init=len(alt_rows),
        altodd_rank=rank_of(alt_rows),
        duality_init=len(dual_rows),
        duality_rank=rank_of(dual_rows),
        overall=rank_of(cyc_rows + alt_rows + dual_rows),
        expected=2 ** (N - 2) - zagier_dim(N),
    )
