"""Generators for the cyclic-insertion, Hoffman, alt-odd and 123 families.

Every generator returns an Identity: a weight-homogeneous left-hand
combination together with the closed-form right-hand constant (a
PiRational, possibly zero, or None for "some rational times zeta(N)").
The difference lhs - rhs is the machine-checkable "= 0" form consumed by
numeric verification and by the rank table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .lincomb import LinComb, PiRational, combine
from .regalgebra import shuffle_product
from .words import (
    ONE,
    BlockDecomposition,
    Word,
    ZetaComposition,
    word_of,
)

FAMILIES = (
    "symmetric",
    "cyclic-basic",
    "cyclic-full",
    "bbbl",
    "hoffman",
    "general-hoffman",
    "cyc123",
    "altodd-even",
    "altodd-odd",
    "double-alt",
    "bowman-bradley",
    "z1333-compsum",
    "further-13332n",
    "z13312-sym",
    "thm-2-7-1",
)


@dataclass
class Identity:
    family: str
    params: dict
    weight: int
    lhs: LinComb
    rhs: PiRational | None  # None: unknown rational multiple of zeta(N)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown identity family {self.family!r}")
        for key, coeff in self.lhs.items():
            total = key.weight + coeff.pi_exp
            if total != self.weight:
                raise ValueError(
                    f"inhomogeneous term {key} (weight {total}) in a "
                    f"weight-{self.weight} identity"
                )
        if self.rhs is not None and not self.rhs.is_zero and self.rhs.pi_exp != self.weight:
            raise ValueError(
                f"rhs pi-exponent {self.rhs.pi_exp} != weight {self.weight}"
            )

    @property
    def rhs_is_unknown(self) -> bool:
        return self.rhs is None

    def difference(self) -> LinComb:
        """lhs - rhs as a single combination (the "= 0" form)."""
        if self.rhs is None:
            raise ValueError("identity has an unknown rational right-hand side")
        return self.lhs - LinComb.term(ONE, self.rhs)

    def describe(self) -> str:
        rhs = "q*zeta(N), q unknown" if self.rhs is None else str(self.rhs)
        return f"{self.family}{self.params} weight {self.weight}, rhs {rhs}"


def _nontrivial_block(lengths: tuple[int, ...]) -> BlockDecomposition:
    B = BlockDecomposition(0, tuple(lengths))
    if B.is_trivial:
        raise ValueError(f"(0; {lengths}) is trivial: weight and block count match mod 2")
    return B


def block_word(lengths: tuple[int, ...]) -> Word:
    return word_of(BlockDecomposition(0, tuple(lengths)))


def _rotations(lengths: tuple[int, ...]):
    n = len(lengths)
    for i in range(n):
        yield lengths[i:] + lengths[:i]


def cyclic_sum(lengths: tuple[int, ...]) -> LinComb:
    """Sum of I_bl over all cyclic permutations of the lengths."""
    return combine((block_word(rot), 1) for rot in _rotations(tuple(lengths)))


def _has_cyclic_adjacent_ones(lengths: tuple[int, ...]) -> bool:
    n = len(lengths)
    return any(lengths[i] == 1 and lengths[(i + 1) % n] == 1 for i in range(n))


def gen_symmetric(B: BlockDecomposition) -> Identity:
    """Sum over all length permutations; a rational multiple of zeta(N)."""
    if B.eps1 != 0:
        raise ValueError("symmetric insertion is stated for eps1 = 0")
    if B.is_trivial:
        raise ValueError("symmetric insertion needs a non-trivial decomposition")
    N = B.weight
    if N % 2 or N < 2:
        raise ValueError(f"symmetric insertion needs even weight >= 2, got {N}")
    lhs = combine(
        (block_word(perm), 1) for perm in itertools.permutations(B.lengths)
    )
    return Identity("symmetric", {"lengths": B.lengths}, N, lhs, None)


def compute_Lk(lengths: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    """Cyclic permutations beginning with k ones, the ones deleted.

    Multiset semantics: repeated rotations are kept.
    """
    out = []
    for rot in _rotations(tuple(lengths)):
        if len(rot) >= k and all(x == 1 for x in rot[:k]):
            out.append(rot[k:])
    return out


def gen_cyclic_basic(lengths) -> Identity:
    """Basic cyclic insertion: the cyclic sum equals I_bl(N+2)."""
    lengths = tuple(lengths)
    if len(lengths) < 2:
        raise ValueError("cyclic insertion on a single block is a tautology")
    B = _nontrivial_block(lengths)
    if _has_cyclic_adjacent_ones(lengths):
        raise ValueError(
            f"{lengths} has cyclically adjacent (1,1); use the full version"
        )
    N = B.weight
    lhs = cyclic_sum(lengths)
    if N % 2 == 0:
        lhs = lhs - LinComb.term(block_word((N + 2,)), 1)
    # odd N: I_bl(N+2) is trivial, hence exactly 0
    return Identity(
        "cyclic-basic", {"lengths": lengths}, N, lhs, PiRational(Fraction(0))
    )


def gen_cyclic_full(lengths, mode: str = "transcendental") -> Identity:
    """Full cyclic insertion with product corrections for runs of 1s.

    mode "transcendental": corrections carry pi^(2k) coefficients, for
    numerics.  mode "symbolic": corrections are shuffle-expanded products
    I_bl(2k+2) * I_bl(m), for the exact rank computation.
    """
    lengths = tuple(lengths)
    if len(lengths) < 2:
        raise ValueError("cyclic insertion on a single block is a tautology")
    if mode not in ("transcendental", "symbolic"):
        raise ValueError(f"unknown mode {mode!r}")
    B = _nontrivial_block(lengths)
    N = B.weight
    n = len(lengths)
    lhs = cyclic_sum(lengths)
    if N % 2 == 0:
        lhs = lhs - LinComb.term(block_word((N + 2,)), 1)
    for k in range(1, n // 2 + 1):
        ms = compute_Lk(lengths, 2 * k)
        if not ms:
            continue
        if mode == "transcendental":
            # A_k = 2 (2 pi)^(2k) / (2k+2)!, correction sign (-1)^k
            a_k = PiRational(
                Fraction(2 * 4**k, factorial(2 * k + 2)), 2 * k
            ) * Fraction((-1) ** k)
            for m in ms:
                if m:
                    lhs = lhs + LinComb.term(block_word(m), a_k)
                else:
                    lhs = lhs + LinComb.term(ONE, a_k)
        else:
            # (-1)^k A_k = + 2^(2k+1)/(2k+2) * I_bl(2k+2), expanded by shuffle
            q = Fraction(2 ** (2 * k + 1), 2 * k + 2)
            corr = block_word((2 * k + 2,))
            for m in ms:
                if m:
                    lhs = lhs + shuffle_product(corr, block_word(m)) * q
                else:
                    lhs = lhs + LinComb.term(corr, q)
    return Identity(
        "cyclic-full",
        {"lengths": lengths, "mode": mode},
        N,
        lhs,
        PiRational(Fraction(0)),
    )


# --------------------------------------------------------------------------
# 123-MZVs and the cyc operator


@dataclass(frozen=True)
class Zeta123Form:
    """123-MZV written as zeta(a1,...,a_{n-1} | b1,...,b_n).

    tokens are '1', '3' or 'T' (the compound argument (1,2)); bs are the
    exponents of the interleaved blocks of 2s.
    """

    tokens: tuple[str, ...]
    bs: tuple[int, ...]

    def __post_init__(self):
        if len(self.bs) != len(self.tokens) + 1:
            raise ValueError("need one more b entry than a-tokens")
        if any(b < 0 for b in self.bs):
            raise ValueError("b exponents must be >= 0")
        for i, tok in enumerate(self.tokens):
            if tok not in ("1", "3", "T"):
                raise ValueError(f"bad token {tok!r}")
            nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
            if tok == "1" and nxt != "3":
                raise ValueError("a '1' argument must be followed by a '3'")
            if tok == "T" and nxt == "3":
                raise ValueError("('(1,2)', '3') is not a valid combination")

    def expand(self) -> ZetaComposition:
        args: list[int] = []
        for tok, b in zip(self.tokens + ("",), self.bs):
            args.extend([2] * b)
            if tok == "1":
                args.append(1)
            elif tok == "3":
                args.append(3)
            elif tok == "T":
                args.extend((1, 2))
        return ZetaComposition(tuple(args))

    @property
    def depth(self) -> int:
        return self.expand().depth

    @property
    def weight(self) -> int:
        return self.expand().weight

    @property
    def n_blocks(self) -> int:
        return len(self.bs)

    def __str__(self) -> str:
        toks = ",".join("(1,2)" if t == "T" else t for t in self.tokens)
        bs = ",".join(str(b) for b in self.bs)
        return f"z({toks} | {bs})"


def parse_123(s: ZetaComposition) -> Zeta123Form:
    """Recover the a|b form of a 123-MZV composition."""
    args = s.args
    if any(a not in (1, 2, 3) for a in args):
        raise ValueError(f"{s} is not a 123-MZV: argument outside {{1,2,3}}")
    if any(a == b == 1 for a, b in itertools.pairwise(args)):
        raise ValueError(f"{s} is not a 123-MZV: adjacent (1,1)")
    tokens: list[str] = []
    bs: list[int] = []
    i = 0
    while i < len(args):
        b = 0
        while i < len(args) and args[i] == 2:
            b += 1
            i += 1
        bs.append(b)
        if i == len(args):
            return Zeta123Form(tuple(tokens), tuple(bs))
        if args[i] == 3:
            tokens.append("3")
            i += 1
            continue
        # args[i] == 1: token '1' exactly when the next non-2 symbol is a 3
        j = i + 1
        while j < len(args) and args[j] == 2:
            j += 1
        if j < len(args) and args[j] == 3:
            tokens.append("1")
            i += 1
        else:
            if i + 1 >= len(args) or args[i + 1] != 2:
                raise ValueError(f"{s} is not a 123-MZV")
            tokens.append("T")
            i += 2
    bs.append(0)
    return Zeta123Form(tuple(tokens), tuple(bs))


def cyc(z: Zeta123Form) -> tuple[Zeta123Form, int]:
    """One step of the cyclic operator; returns (image, sign)."""
    toks, bs = z.tokens, z.bs
    if not toks:
        return z, 1
    if toks[0] == "3":
        return Zeta123Form(toks[1:] + ("T",), bs[1:] + (bs[0],)), -1
    k = 0
    while k < len(toks) and toks[k] == "T":
        k += 1
    sign = -1 if k % 2 else 1
    if k == len(toks):
        return Zeta123Form(("3",) * k, bs[1 : k + 1] + (bs[0],)), sign
    # leading T^k then '1','3'
    new_toks = toks[k + 2 :] + ("1", "3") + ("3",) * k
    new_bs = bs[k + 2 :] + (bs[0],) + bs[1 : k + 1] + (bs[k + 1],)
    return Zeta123Form(new_toks, new_bs), sign


def cyc_orbit(z: Zeta123Form) -> list[tuple[Zeta123Form, int]]:
    """The full cyc orbit with accumulated signs; length = block count."""
    out = [(z, 1)]
    cur, acc = z, 1
    for _ in range(z.n_blocks - 1):
        cur, s = cyc(cur)
        acc *= s
        out.append((cur, acc))
    return out


def _cyc123_sign_exponent(tokens: tuple[str, ...]) -> int | None:
    """wt/2 - d mod 2 from the a-tokens alone; None when the weight is odd."""
    tw = sum(1 if t == "1" else 3 for t in tokens)
    if tw % 2:
        return None
    ones = sum(1 for t in tokens if t == "1")
    threes = sum(1 for t in tokens if t == "3")
    return (tw // 2 - ones - threes) % 2


def gen_cyc123(z: Zeta123Form, family: str = "cyc123", params: dict | None = None) -> Identity:
    """Cyclic insertion for a 123-MZV: the cyc-orbit sum."""
    wt = z.weight
    d = z.depth
    lhs = combine((form.expand(), sign) for form, sign in cyc_orbit(z))
    if wt % 2:
        rhs = PiRational(Fraction(0))
        assert _cyc123_sign_exponent(z.tokens) is None
    else:
        exp = (wt // 2 - d) % 2
        token_exp = _cyc123_sign_exponent(z.tokens)
        if token_exp != exp:
            raise AssertionError("cyc123 sign rule mismatch between formulas")
        rhs = PiRational(Fraction((-1) ** exp, factorial(wt + 1)), wt)
    return Identity(
        family,
        params if params is not None else {"form": str(z)},
        wt,
        lhs,
        rhs,
    )


def gen_hoffman(b1: int, b2: int, b3: int) -> Identity:
    """Generic Hoffman identity zeta(3,3|b) - zeta(3,(1,2)|..) + ..."""
    return gen_cyc123(
        Zeta123Form(("3", "3"), (b1, b2, b3)),
        family="hoffman",
        params={"b": (b1, b2, b3)},
    )


def gen_general_hoffman(n: int, bs: tuple[int, ...], c: int) -> Identity:
    """Alternating cyclic family on zeta({3}^{2n} | b1..b_{2n}, c)."""
    bs = tuple(bs)
    if len(bs) != 2 * n:
        raise ValueError(f"need 2n = {2 * n} b-parameters, got {len(bs)}")
    base = gen_cyc123(Zeta123Form(("3",) * (2 * n), bs + (c,)))
    # displayed with the i-th term signed (-1)^i, i.e. the negated orbit sum
    rhs = None if base.rhs is None else -base.rhs
    return Identity(
        "general-hoffman",
        {"n": n, "b": bs, "c": c},
        base.weight,
        -base.lhs,
        rhs,
    )


def gen_bbbl(bs: tuple[int, ...]) -> Identity:
    """BBBL cyclic insertion: blocks of 2s inserted into zeta({1,3}^n)."""
    bs = tuple(bs)
    if len(bs) % 2 == 0:
        raise ValueError("need an odd number of insertion parameters b0..b_{2n}")
    n = (len(bs) - 1) // 2
    z = Zeta123Form(("1", "3") * n, bs)
    return gen_cyc123(z, family="bbbl", params={"b": bs})


# --------------------------------------------------------------------------
# composition sums and symmetrised families


def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _weak_compositions(total - head, parts - 1):
            yield (head,) + rest


def gen_composition_sums(kind: str, m: int, n: int = 1) -> Identity:
    """Composition-sum families: Bowman-Bradley and the z1333 variants."""
    if kind == "bowman-bradley":
        lhs = LinComb.zero()
        for bs in _weak_compositions(m, 2 * n + 1):
            lhs = lhs + LinComb.term(Zeta123Form(("1", "3") * n, bs).expand(), 1)
        wt = 4 * n + 2 * m
        rhs = PiRational(
            Fraction(comb(m + 2 * n, m), (2 * n + 1) * factorial(wt + 1)), wt
        )
        return Identity("bowman-bradley", {"n": n, "m": m}, wt, lhs, rhs)
    if kind == "z1333-compsum":
        lhs = LinComb.zero()
        count = 0
        for bs in _weak_compositions(m, 5):
            lhs = lhs + gen_cyc123(Zeta123Form(("1", "3", "3", "3"), bs)).lhs
            count += 1
        # one lot of -pi^wt/(wt+1)! per composition of m into 5 parts
        assert count == comb(m + 4, m)
        wt = 10 + 2 * m
        rhs = PiRational(Fraction(-comb(m + 4, m), factorial(wt + 1)), wt)
        return Identity("z1333-compsum", {"m": m}, wt, lhs, rhs)
    if kind == "further-13332n":
        if m < 2:
            raise ValueError("the further-13332n family needs m >= 2")
        parts = [(0, 0, 0, 0, m), (0, 0, 0, m, 0)]
        parts.extend((0, 0, i, 0, m - i) for i in range(1, m - 1))
        parts.append((0, 1, 0, m - 1, 0))
        lhs = LinComb.zero()
        for bs in parts:
            lhs = lhs + gen_cyc123(Zeta123Form(("1", "3", "3", "3"), bs)).lhs
        wt = 10 + 2 * m
        rhs = PiRational(Fraction(-(m + 1), factorial(wt + 1)), wt)
        return Identity("further-13332n", {"m": m}, wt, lhs, rhs)
    raise ValueError(f"unknown composition-sum kind {kind!r}")


def gen_sym_family(kind: str, params: dict) -> Identity:
    """Symmetrised z13312 family and the on-the-nose Theorem-2.7.1 family."""
    if kind == "z13312-sym":
        b = tuple(params["b"])
        if len(b) != 5:
            raise ValueError("z13312-sym needs five b parameters")
        lhs = LinComb.zero()
        for p_even in itertools.permutations((b[0], b[1], b[4])):
            for p_odd in itertools.permutations((b[2], b[3])):
                c = (p_even[0], p_even[1], p_odd[0], p_odd[1], p_even[2])
                lhs = lhs + gen_cyc123(
                    Zeta123Form(("1", "3", "3", "3"), c)
                ).lhs
                lhs = lhs - gen_cyc123(
                    Zeta123Form(("1", "3", "3", "T"), (c[0], c[1], c[2], c[4], c[3]))
                ).lhs
        wt = 10 + 2 * sum(b)
        rhs = PiRational(Fraction(-factorial(4), factorial(wt + 1)), wt)
        return Identity("z13312-sym", {"b": b}, wt, lhs, rhs)
    if kind == "thm-2-7-1":
        m = params["m"]
        return gen_cyc123(
            Zeta123Form(("1", "3", "3", "T"), (m, 0, 0, 0, 0)),
            family="thm-2-7-1",
            params={"m": m},
        )
    raise ValueError(f"unknown symmetrised kind {kind!r}")


# --------------------------------------------------------------------------
# alt-odd families


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alt_sum(lengths: tuple[int, ...], positions: tuple[int, ...]) -> LinComb:
    """Antisymmetrised sum over permutations of the given 1-based slots.

    Identically zero (empty combination) when the slot values repeat.
    Trivial words are dropped: their integrals vanish exactly.
    """
    lengths = tuple(lengths)
    values = [lengths[p - 1] for p in positions]
    if len(set(values)) < len(values):
        return LinComb.zero()
    terms = []
    for perm in itertools.permutations(range(len(values))):
        assigned = list(lengths)
        for slot, src in zip(positions, perm):
            assigned[slot - 1] = values[src]
        w = word_of(BlockDecomposition(0, tuple(assigned)))
        if not w.is_trivial:
            terms.append((w, _perm_sign(perm)))
    return combine(terms)


def gen_altodd_even(lengths) -> Identity:
    """Alternate the odd-position block lengths; even weight, rhs 0."""
    lengths = tuple(lengths)
    B = _nontrivial_block(lengths)
    N = B.weight
    if N % 2:
        raise ValueError("the even-weight alt-odd family needs even weight")
    if len(lengths) < 3:
        raise ValueError("need at least 3 blocks")
    odd_positions = tuple(range(1, len(lengths) + 1, 2))
    lhs = alt_sum(lengths, odd_positions)
    return Identity(
        "altodd-even", {"lengths": lengths}, N, lhs, PiRational(Fraction(0))
    )


@dataclass
class AltOddRow:
    index: int
    inserted: int
    b_string: tuple[int, ...]
    b_slots: tuple[int, ...]  # 1-based slots of the odd-position lengths
    c_string: tuple[int, ...]
    c_slots: tuple[int, ...]


def altodd_odd_rows(lengths: tuple[int, ...], x: int) -> list[AltOddRow]:
    """Row data for the odd-weight alt-odd candidate (steps 1-4).

    Row i drops the i-th even-position length, interleaves the odd
    positions with the kept evens, and inserts x - sum(kept evens) to
    the left (B) and right (C) of the i-th odd length.
    """
    lengths = tuple(lengths)
    if len(lengths) % 2 or len(lengths) < 2:
        raise ValueError("need an even number of block lengths")
    n = len(lengths) // 2
    odds = lengths[0::2]
    evens = lengths[1::2]
    if (x + sum(odds)) % 2 == 0:
        raise ValueError(
            f"constraint violated: x + sum(odd positions) = "
            f"{x + sum(odds)} must be odd"
        )
    rows = []
    for i in range(1, n + 1):
        kept = evens[: i - 1] + evens[i:]
        v = x - sum(kept)
        if v <= 0:
            raise ValueError(f"constraint violated: x - sum(E_{i}) = {v} must be > 0")
        inter: list[int] = []
        for j in range(n):
            inter.append(odds[j])
            if j < n - 1:
                inter.append(kept[j])
        # odd length j sits at inter index 2j; insertion shifts later slots
        ins_b = 2 * (i - 1)
        b_string = tuple(inter[:ins_b] + [v] + inter[ins_b:])
        b_slots = tuple(2 * j + 1 if 2 * j < ins_b else 2 * j + 2 for j in range(n))
        ins_c = 2 * (i - 1) + 1
        c_string = tuple(inter[:ins_c] + [v] + inter[ins_c:])
        c_slots = tuple(2 * j + 1 if 2 * j < ins_c else 2 * j + 2 for j in range(n))
        rows.append(AltOddRow(i, v, b_string, b_slots, c_string, c_slots))
    return rows


def gen_altodd_odd(lengths, x: int) -> Identity:
    """Odd-weight alt-odd candidate: signed sum of the rows R_i."""
    lengths = tuple(lengths)
    rows = altodd_odd_rows(lengths, x)
    lhs = LinComb.zero()
    for row in rows:
        sign = 1 if row.index % 2 else -1  # (-1)^(i+1), first row positive
        lhs = lhs + alt_sum(row.b_string, row.b_slots) * sign
        lhs = lhs + alt_sum(row.c_string, row.c_slots) * sign
    N = x + sum(lengths[0::2]) - 2
    return Identity(
        "altodd-odd",
        {"lengths": lengths, "x": x},
        N,
        lhs,
        PiRational(Fraction(0)),
    )


def gen_double_alt(lengths) -> Identity:
    """Standalone double-Alt identities for 4 and 6 blocks (odd weight)."""
    lengths = tuple(lengths)
    if len(lengths) == 4:
        partitions = ((1, 3), (2, 4))
    elif len(lengths) == 6:
        partitions = ((1, 4, 6), (2, 3, 5))
    else:
        raise ValueError("double-alt is stated for 4 or 6 blocks")
    B = _nontrivial_block(lengths)
    first, second = partitions
    lhs = LinComb.zero()
    vals1 = [lengths[p - 1] for p in first]
    vals2 = [lengths[p - 1] for p in second]
    if len(set(vals1)) == len(vals1) and len(set(vals2)) == len(vals2):
        for perm1 in itertools.permutations(range(len(vals1))):
            for perm2 in itertools.permutations(range(len(vals2))):
                assigned = list(lengths)
                for slot, src in zip(first, perm1):
                    assigned[slot - 1] = vals1[src]
                for slot, src in zip(second, perm2):
                    assigned[slot - 1] = vals2[src]
                w = word_of(BlockDecomposition(0, tuple(assigned)))
                if not w.is_trivial:
                    lhs = lhs + LinComb.term(w, _perm_sign(perm1) * _perm_sign(perm2))
    return Identity(
        "double-alt",
        {"lengths": lengths},
        B.weight,
        lhs,
        PiRational(Fraction(0)),
    )
