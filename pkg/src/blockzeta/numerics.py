"""Arbitrary-precision evaluation of MZVs and identity verification.

Convergent iterated integrals are evaluated by composing the path at
the midpoint: I(0; a; 1) = sum_k I(0; a_1..a_k; 1/2) I(1/2; a_{k+1}..; 1),
with the right factors reflected through t -> 1-t so every factor is a
convergent power series at 1/2 with a geometric tail.  Prefix and
suffix factors are built incrementally, one series transform per letter.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import series
from .bigreal import BigReal, bits_for_digits, pi_power
from .lincomb import LinComb
from .regalgebra import bernoulli, regularise
from .words import ONE, Word, ZetaComposition, mzv_to_word

DEFAULT_DIGITS = 50
MAX_DIGITS = 2000  # ceiling: quadratic cost makes more impractical here
_TAIL_EXTRA = 8  # truncation order M = bits + _TAIL_EXTRA
_SCALE_EXTRA = 16  # coefficient scale F = bits + _SCALE_EXTRA


def _digits_bucket(digits: int) -> int:
    return ((max(digits, 10) + 9) // 10) * 10


class EvalCache:
    """In-memory value cache with optional line-oriented persistence.

    File records: "z(s1,...,sk) <digits> <decimal value>"; records are
    reused when stored at least at the requested precision.
    """

    def __init__(self, path: str | None = None):
        self._lock = threading.Lock()
        self._mem: dict[tuple[ZetaComposition, int], BigReal] = {}
        self._file: dict[ZetaComposition, tuple[int, str]] = {}
        self.path = path
        if path and os.path.exists(path):
            self._load(path)

    def _load(self, path: str) -> None:
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                parts = line.split()
                if len(parts) != 3:
                    continue
                try:
                    comp = ZetaComposition.parse(parts[0])
                    digits = int(parts[1])
                except (ValueError, ArithmeticError):
                    continue
                old = self._file.get(comp)
                if old is None or old[0] < digits:
                    self._file[comp] = (digits, parts[2])

    def get(self, comp: ZetaComposition, digits: int) -> BigReal | None:
        key = (comp, _digits_bucket(digits))
        with self._lock:
            hit = self._mem.get(key)
            if hit is not None:
                return hit
            rec = self._file.get(comp)
        if rec is not None and rec[0] >= digits:
            stored_digits, text = rec
            bits = bits_for_digits(digits)
            decimals = len(text.partition(".")[2])
            frac = Fraction(int(text.replace(".", "")), 10**decimals)
            val = BigReal.from_fraction(frac, bits)
            # stored text is truncated at stored_digits decimal places
            err = (2 << bits) // 10**stored_digits + 2
            return BigReal(val.man, bits, val.err + err)
        return None

    def put(self, comp: ZetaComposition, digits: int, value: BigReal) -> None:
        key = (comp, _digits_bucket(digits))
        with self._lock:
            self._mem[key] = value
            if self.path:
                rec = self._file.get(comp)
                if rec is None or rec[0] < digits:
                    text = value.to_decimal(digits)
                    self._file[comp] = (digits, text)
                    with open(self.path, "a", encoding="ascii") as fh:
                        fh.write(f"{comp} {digits} {text}\n")


_cache = EvalCache(os.environ.get("MZV_CACHE_PATH"))
_word_cache: dict[tuple[Word, int], BigReal] = {}
_word_lock = threading.Lock()


def reset_caches() -> None:
    global _cache
    _cache = EvalCache(os.environ.get("MZV_CACHE_PATH"))
    with _word_lock:
        _word_cache.clear()


def eval_word(w: Word, digits: int = DEFAULT_DIGITS) -> BigReal:
    """Value of the iterated integral of a convergent word."""
    bits = bits_for_digits(digits)
    key = (w, _digits_bucket(digits))
    with _word_lock:
        hit = _word_cache.get(key)
    if hit is not None:
        return hit
    if w.weight == 0:
        return BigReal.from_int(1, bits)  # unit integral, any bounds
    if w.is_trivial:
        return BigReal.exact_zero(bits)
    if not w.is_convergent:
        raise ValueError(f"word {w} is divergent; regularise before evaluating")
    F = bits + _SCALE_EXTRA
    M = bits + _TAIL_EXTRA
    interior = w.interior
    N = len(interior)
    # prefix factors g(a_1..a_k; 1/2), built left to right
    pref_vals = [1 << F]
    pref_errs = [0]
    C = None
    for k in range(1, N + 1):
        C = series.g_init(M, F) if k == 1 else series.g_append(C, interior[k - 1], M, F)
        pref_vals.append(series.g_value(C, M, F))
        pref_errs.append(k + 3 + (1 << (F - M)))
    # suffix factors g(flip reverse(a_{k+1}..a_N); 1/2), built right to left
    suf_vals = [0] * (N + 1)
    suf_errs = [0] * (N + 1)
    suf_vals[N] = 1 << F
    D = None
    for k in range(N - 1, -1, -1):
        bit = 1 - interior[k]
        D = series.g_init(M, F) if k == N - 1 else series.g_append(D, bit, M, F)
        suf_vals[k] = series.g_value(D, M, F)
        suf_errs[k] = (N - k) + 3 + (1 << (F - M))
    total = 0
    err = 0
    for k in range(N + 1):
        term = (pref_vals[k] * suf_vals[k]) >> F
        if (N - k) % 2:
            term = -term
        total += term
        err += pref_errs[k] + suf_errs[k] + 2
    result = BigReal(total, F, err, digits)._rescale(bits)
    with _word_lock:
        _word_cache[key] = result
    return result


def eval_mzv(s: ZetaComposition, digits: int = DEFAULT_DIGITS) -> BigReal:
    """zeta(s) to the requested precision; s must be convergent."""
    if digits < 10:
        raise ValueError("need digits >= 10")
    if digits > MAX_DIGITS:
        raise ValueError(f"digits {digits} beyond the configured ceiling {MAX_DIGITS}")
    if not s.is_convergent:
        raise ValueError(f"{s} diverges: last argument must be >= 2")
    if not s.args:
        return BigReal.from_int(1, bits_for_digits(digits))
    hit = _cache.get(s, digits)
    if hit is not None:
        return hit
    w, sign = mzv_to_word(s)
    val = eval_word(w, digits)
    if sign < 0:
        val = -val
    _cache.put(s, digits, val)
    return val


def zeta_value(n: int, digits: int = DEFAULT_DIGITS) -> BigReal:
    """zeta(n) for integer n >= 2."""
    return eval_mzv(ZetaComposition((n,)), digits)


def eval_lincomb(c: LinComb, digits: int = DEFAULT_DIGITS) -> BigReal:
    """Exact-coefficient combination of MZV and word values.

    Word keys are regularised first; the empty composition is the
    constant 1; pi powers come from the verified pi engine.
    """
    flat = regularise(c)
    bits = bits_for_digits(digits)
    acc = BigReal.exact_zero(bits)
    for key, coeff in flat.items():
        if not isinstance(key, ZetaComposition):
            raise TypeError(f"cannot evaluate term {key!r}")
        base = (
            BigReal.from_int(1, bits) if key is ONE or not key.args else eval_mzv(key, digits)
        )
        term = base.mul_fraction(coeff.coeff)
        if coeff.pi_exp:
            term = term * pi_power(coeff.pi_exp, bits)
        acc = acc + term
    return acc


@dataclass
class VerificationReport:
    identity: str
    status: str  # verified | refuted | inconclusive
    residual: BigReal
    digits_matched: int
    target_digits: int
    elapsed: float
    note: str = ""

    def __str__(self) -> str:
        return (
            f"[{self.status}] {self.identity}: residual ~ 1e-{self.digits_matched} "
            f"(target {self.target_digits} digits, {self.elapsed:.2f}s)"
        )


def verify(identity, digits: int = DEFAULT_DIGITS, max_den: int = 10**6) -> VerificationReport:
    """Evaluate lhs - rhs and classify against the digit target.

    Identities with an unknown rational right-hand side are checked by
    rational recognition of lhs / zeta(N) instead, with denominators up
    to max_den.
    """
    t0 = time.monotonic()
    threshold = Fraction(1, 10**digits)
    if identity.rhs is None:
        ratio, rec = _recognize_zeta_multiple(identity, digits, max_den)
        elapsed = time.monotonic() - t0
        if rec is not None:
            residual = ratio - BigReal.from_fraction(rec, ratio.bits)
            return VerificationReport(
                identity.describe(), "verified", residual,
                residual.digits_matched(), digits, elapsed,
                note=f"lhs = ({rec}) * zeta({identity.weight})",
            )
        return VerificationReport(
            identity.describe(), "inconclusive", ratio, 0, digits, elapsed,
            note="no small rational multiple recognised",
        )
    residual = eval_lincomb(identity.difference(), digits)
    elapsed = time.monotonic() - t0
    matched = residual.digits_matched()
    if residual.abs_at_most(threshold):
        status = "verified"
    elif residual.abs_exceeds(10 * residual.err_fraction()):
        status = "refuted"
    else:
        status = "inconclusive"
    return VerificationReport(
        identity.describe(), status, residual, matched, digits, elapsed
    )


def _recognize_zeta_multiple(identity, digits: int, max_den: int):
    val = eval_lincomb(identity.lhs, digits)
    zval = zeta_value(identity.weight, digits)
    ratio = val / zval
    return ratio, recognize_rational(ratio, max_den)


def recognize_rational(x: BigReal, max_den: int) -> Fraction | None:
    """Continued-fraction recognition with a confirmation margin.

    Accepts a convergent p/q, q <= max_den, only when x matches it to
    its own error bound and carries at least 20 digits of confirmation
    beyond what the approximation q^2 could produce by chance.
    """
    need = Fraction(1, max_den * max_den * 10**20)
    if not x.err_at_most(need):
        raise ValueError(
            f"recognition needs error <= {need}; recompute at higher precision"
        )
    target = x.as_fraction()
    # continued fraction convergents of target: p_{-1}=1, p_{-2}=0
    p_prev, q_prev, p_cur, q_cur = 0, 1, 1, 0
    a_rest = target
    for _ in range(200):
        a = a_rest.numerator // a_rest.denominator
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > max_den:
            break
        cand = Fraction(p_cur, q_cur)
        if abs(target - cand) <= x.err_fraction() + need:
            return cand
        frac_part = a_rest - a
        if frac_part == 0:
            break
        a_rest = 1 / frac_part
    return None


# --------------------------------------------------------------------------
# independent oracle: direct summation with a rigorous tail bound


def _em_tail(s: int, M: int, shift: int) -> tuple[int, int]:
    """sum_{n>M} n^-s scaled by 2^shift, with an error bound in ulps.

    Euler-Maclaurin with three Bernoulli corrections; the remainder is
    bounded by the magnitude of the first omitted correction term.
    """
    one = 1 << shift
    total = one // ((s - 1) * M ** (s - 1)) - one // (2 * M**s)
    # + sum_j B_2j/(2j)! * (s)_{2j-1} / M^(s+2j-1)
    err = 4
    coeffs = [(bernoulli(2 * j), 2 * j) for j in (1, 2, 3)]
    for B2j, twoj in coeffs:
        rising = 1
        for i in range(twoj - 1):
            rising *= s + i
        q = B2j * rising / _fact(twoj)
        term = (one * q.numerator) // (q.denominator * M ** (s + twoj - 1))
        total += term
        err += 2
    B8 = bernoulli(8)
    rising = 1
    for i in range(7):
        rising *= s + i
    rem = abs((one * B8.numerator * rising) // (B8.denominator * _fact(8) * M ** (s + 7)))
    err += 2 * rem + 2
    return total, err


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _log_power_tail(a: int, s: int, M: int, factor: Fraction) -> Fraction:
    """Upper bound for factor * sum_{n>M} (1+ln n)^a / n^s, s >= 2.

    Integral comparison after substituting u = ln x; rational upper
    bound ln(M+1) <= 0.7 * bitlength(M+1).
    """
    log_bound = Fraction(7, 10) * ((M + 1).bit_length())
    total = Fraction(0)
    for i in range(a + 1):
        total += (
            comb(a, i)
            * (1 + log_bound) ** (a - i)
            * _fact(i)
            / Fraction((s - 1) ** (i + 1))
        )
    return factor * total / Fraction(M ** (s - 1))


def _inner_tail_envelope(args: tuple[int, ...]) -> tuple[Fraction, int, int]:
    """(Q, a, d): tail(args, m) <= Q (1+ln m)^a / m^d for the partial sums.

    Valid for convergent args (last >= 2); crude but rigorous: each layer
    below the outermost contributes a factor 2 (sum <= zeta(2)) or a
    harmonic-log factor.
    """
    base = Fraction(1)
    for x in args[:-1]:
        if x != 1:
            base *= 2
    a = sum(1 for x in args[:-1] if x == 1)
    s_out = args[-1]
    total = Fraction(0)
    for i in range(a + 1):
        total += comb(a, i) * _fact(i) / Fraction((s_out - 1) ** (i + 1))
    # (1+ln m)^(a-i) <= (1+ln m)^a folded into the envelope exponent
    return base * total, a, s_out - 1


def mzv_direct_sum(s: ZetaComposition, terms: int = 200_000) -> tuple[Fraction, Fraction]:
    """(midpoint, radius): direct partial sums plus a certified tail bound.

    Depth-1 tails use Euler-Maclaurin (many digits).  At depth >= 2 with
    a convergent inner prefix the outer tail is peeled analytically:
    sum_{n>M} S_inner(n-1) n^-s = zeta(inner) Z(s, M) - correction, with
    Z from Euler-Maclaurin, zeta(inner) by recursion, and the correction
    bounded through the inner tail envelope.  Divergent prefixes fall
    back to the positive-term integral bound.  This is the convention
    oracle for eval_mzv.
    """
    if not s.is_convergent or not s.args:
        raise ValueError(f"oracle needs a convergent non-empty composition, got {s}")
    args = s.args
    k = len(args)
    shift = 96
    one = 1 << shift
    M = terms
    if k == 1:
        M = min(terms, 4000)
        acc = 0
        for n in range(1, M + 1):
            acc += one // n ** args[0]
        tail, terr = _em_tail(args[0], M, shift)
        mid = Fraction(acc + tail, one)
        return mid, Fraction(M + terr + 2, one)
    # incremental multiple partial sums; level j must see the n-1 state
    # of level j-1, so levels are updated top-down
    if args[-2] >= 2:
        M = min(terms, 20_000)  # the analytic peel converges much faster
    prev = [0] * k
    for n in range(1, M + 1):
        for j in range(k - 1, -1, -1):
            p = n ** args[j]
            inc = one // p if j == 0 else prev[j - 1] // p
            prev[j] += inc
    partial = Fraction(prev[k - 1], one)
    rounding = Fraction(M * 3**k, one)
    s_out = args[-1]
    if args[-2] >= 2:
        inner = args[:-1]
        inner_mid, inner_rad = mzv_direct_sum(ZetaComposition(inner), terms)
        z_tail, z_err = _em_tail(s_out, M, shift)
        z_mid = Fraction(z_tail, one)
        z_rad = Fraction(z_err, one)
        # correction = sum_{n>M} T_inner(n-1) n^-s_out, in [0, corr_max];
        # the factor 2 absorbs (n-1)^-d vs n^-d for n > M
        Q, a, d = _inner_tail_envelope(inner)
        corr_max = 2 * _log_power_tail(a, s_out + d, M, Q)
        mid = partial + inner_mid * z_mid - corr_max / 2
        radius = (
            rounding
            + inner_rad * z_mid
            + (inner_mid + inner_rad) * z_rad
            + corr_max / 2
        )
        return mid, radius
    # divergent prefix: positive-term integral bound for the whole tail
    base = Fraction(1)
    for x in args[:-1]:
        if x != 1:
            base *= 2  # each convergent layer is bounded by zeta(2) < 2
    ones_inner = sum(1 for x in args[:-1] if x == 1)
    tail = _log_power_tail(ones_inner, s_out, M, base)
    return partial + tail / 2, tail / 2 + rounding
