import random
from fractions import Fraction

import mpmath
import pytest

from blockzeta.bigreal import BigReal, bits_for_digits, pi_bigreal, pi_power
from blockzeta.identities import Identity, gen_symmetric
from blockzeta.lincomb import PiRational
from blockzeta.numerics import (
    EvalCache,
    eval_lincomb,
    eval_mzv,
    eval_word,
    mzv_direct_sum,
    recognize_rational,
    verify,
    zeta_value,
)
from blockzeta.regalgebra import shuffle_words, stuffle_depth1, zeta_two_power
from blockzeta.words import (
    ZetaComposition,
    blocks,
    convergent_words,
    word,
    word_to_mzv,
    zc,
)


def as_mp(x: BigReal):
    return mpmath.mpf(x.man) / mpmath.mpf(2) ** x.bits


class TestBigReal:
    def test_error_bounds_random(self):
        rng = random.Random(12)
        bits = 120
        for _ in range(200):
            a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
            A = BigReal.from_fraction(a, bits)
            B = BigReal.from_fraction(b, bits)
            for op, exact in (
                (A + B, a + b),
                (A - B, a - b),
                (A * B, a * b),
                (A.mul_fraction(b), a * b),
            ):
                assert abs(op.as_fraction() - exact) <= op.err_fraction()
            if b != 0 and abs(B.man) > 2 * B.err:
                D = A / B
                assert abs(D.as_fraction() - a / b) <= D.err_fraction()

    def test_division_by_zero_interval(self):
        bits = 64
        tiny = BigReal(1, bits, 5)
        with pytest.raises(ZeroDivisionError):
            BigReal.from_int(1, bits) / tiny

    def test_digits_matched(self):
        bits = 200
        x = BigReal.from_fraction(Fraction(1, 10**25), bits)
        assert 20 <= x.digits_matched() <= 25


class TestPi:
    def test_against_mpmath(self):
        mpmath.mp.dps = 220
        pi = pi_bigreal(bits_for_digits(200))
        assert abs(as_mp(pi) - mpmath.pi) < mpmath.mpf(10) ** -200

    def test_powers(self):
        mpmath.mp.dps = 80
        p = pi_power(10, bits_for_digits(60))
        assert abs(as_mp(p) - mpmath.pi**10) < mpmath.mpf(10) ** -55


class TestEvalMzv:
    def test_zeta2_closed_form(self):
        val = eval_mzv(zc(2), 50)
        target = pi_power(2, val.bits).mul_fraction(Fraction(1, 6))
        assert (val - target).abs_at_most(Fraction(1, 10**50))

    def test_zeta_two_powers(self):
        for m in range(1, 9):
            val = eval_mzv(ZetaComposition((2,) * m), 40)
            coeff = zeta_two_power(m)
            target = pi_power(coeff.pi_exp, val.bits).mul_fraction(coeff.coeff)
            assert (val - target).abs_at_most(Fraction(1, 10**40))

    def test_depth1_against_mpmath(self):
        mpmath.mp.dps = 60
        for n in (2, 3, 5, 7):
            val = eval_mzv(zc(n), 50)
            assert abs(as_mp(val) - mpmath.zeta(n)) < mpmath.mpf(10) ** -50

    def test_zeta13_zagier(self):
        val = eval_mzv(zc(1, 3), 50)
        target = pi_power(4, val.bits).mul_fraction(Fraction(1, 360))
        assert (val - target).abs_at_most(Fraction(1, 10**50))

    def test_duality_value(self):
        a = eval_mzv(zc(1, 2), 40)
        b = eval_mzv(zc(3), 40)
        assert (a - b).abs_at_most(Fraction(1, 10**40))

    def test_rejects_divergent(self):
        with pytest.raises(ValueError):
            eval_mzv(zc(2, 1), 30)
        with pytest.raises(ValueError):
            eval_word(word("0011"), 30)

    def test_oracle_agreement_weight_le_6(self):
        # every convergent composition of weight <= 6 against the
        # direct-summation oracle, at the oracle's certified radius;
        # the evaluation side carries at least 30 certified digits
        for N in range(2, 7):
            for w in convergent_words(N):
                comp, _ = word_to_mzv(w)
                val = eval_mzv(comp, 35)
                assert val.err_fraction() < Fraction(1, 10**30)
                mid, rad = mzv_direct_sum(comp, 60_000)
                assert abs(val.as_fraction() - mid) <= rad + val.err_fraction()

    def test_monotone_precision(self):
        lo = eval_mzv(zc(2, 3), 20)
        hi = eval_mzv(zc(2, 3), 60)
        assert hi.err_fraction() <= lo.err_fraction()
        assert (lo - hi).abs_at_most(lo.err_fraction() * 2)


class TestAlgebraNumericsConsistency:
    def test_regularise_duality_invariance(self):
        # regularised values satisfy I(w) = (-1)^N I(dual w); the exact
        # combinations differ (the procedure picks per-word normal forms)
        from blockzeta.regalgebra import regularise_word
        from blockzeta.words import all_words

        digits = 30
        for L in (5, 6, 7, 8):
            for w in list(all_words(L))[:: max(1, 2 ** (L - 5))]:
                lhs = eval_lincomb(regularise_word(w), digits)
                rhs = eval_lincomb(regularise_word(w.dual()), digits)
                if w.weight % 2:
                    rhs = -rhs
                assert (lhs - rhs).abs_at_most(Fraction(1, 10 ** (digits - 3)))

    def test_odd_weight_closure_sums_to_zero(self):
        # at odd weight a reflectively closed set pairs off under duality
        from blockzeta.derivation import closure_comb
        from blockzeta.reflect import reflective_closure

        S = reflective_closure([blocks(0, 2, 3, 4)])
        val = eval_lincomb(closure_comb(S), 30)
        assert val.abs_at_most(Fraction(1, 10**25))

    def test_shuffle_homomorphism(self):
        rng = random.Random(13)
        digits = 30
        for _ in range(12):
            u = tuple([1] + [rng.randint(0, 1) for _ in range(rng.randint(0, 3))])
            v = tuple([1] + [rng.randint(0, 1) for _ in range(rng.randint(0, 3))])
            if u[-1] == 1 or v[-1] == 1:
                u, v = u + (0,), v + (0,)
            lhs = eval_word(word("0" + "".join(map(str, u)) + "1"), digits) * eval_word(
                word("0" + "".join(map(str, v)) + "1"), digits
            )
            rhs = eval_lincomb(shuffle_words(u, v), digits)
            assert (lhs - rhs).abs_at_most(Fraction(1, 10 ** (digits - 2)))

    def test_stuffle_shuffle_agreement(self):
        digits = 30
        for n in (2, 3, 4):
            for s in (zc(2), zc(3), zc(2, 2), zc(1, 3), zc(1, 2)):
                if n + s.weight > 10:
                    continue
                via_stuffle = eval_lincomb(stuffle_depth1(n, s), digits)
                prod = eval_mzv(zc(n), digits) * eval_mzv(s, digits)
                assert (via_stuffle - prod).abs_at_most(Fraction(1, 10 ** (digits - 2)))


class TestVerify:
    def test_counterexample_refuted(self):
        from blockzeta.identities import cyclic_sum

        bogus = Identity(
            "cyclic-basic",
            {"lengths": (1, 1, 2, 3)},
            5,
            cyclic_sum((1, 1, 2, 3)),
            PiRational(Fraction(0)),
        )
        rep = verify(bogus, 30)
        assert rep.status == "refuted"
        z2z3 = zeta_value(2, 35) * zeta_value(3, 35)
        resid = rep.residual
        assert (resid - z2z3 - z2z3).abs_at_most(Fraction(1, 10**28))

    def test_unknown_rhs_via_recognition(self):
        ident = gen_symmetric(blocks(0, 2, 3, 3))
        rep = verify(ident, 40)
        assert rep.status == "verified"
        # duality pairs the six permutations into twice the cyclic sum,
        # which evaluates to 2*I_bl(8) = -2 pi^6/7! = -(3/8) zeta(6)
        assert "lhs = (-3/8) * zeta(6)" in rep.note


class TestRecognizeRational:
    def test_exact_half(self):
        x = BigReal.from_fraction(Fraction(1, 2), bits_for_digits(60))
        assert recognize_rational(x, 10**6) == Fraction(1, 2)

    def test_zeta_ratio(self):
        # zeta(1,3) / zeta(4) = 1/4
        ratio = eval_mzv(zc(1, 3), 60) / eval_mzv(zc(4), 60)
        assert recognize_rational(ratio, 10**6) == Fraction(1, 4)

    def test_irrational_ratio_rejected(self):
        # zeta(3)/zeta(2) has no small rational form
        ratio = eval_mzv(zc(3), 60) / eval_mzv(zc(2), 60)
        assert recognize_rational(ratio, 10**6) is None

    def test_insufficient_precision_raises(self):
        x = BigReal.from_fraction(Fraction(1, 3), bits_for_digits(12))
        with pytest.raises(ValueError):
            recognize_rational(x, 10**6)


class TestCacheFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "cache.txt"
        cache = EvalCache(str(path))
        val = eval_mzv(zc(2, 3), 30)
        cache.put(zc(2, 3), 30, val)
        reloaded = EvalCache(str(path))
        hit = reloaded.get(zc(2, 3), 25)
        assert hit is not None
        assert (hit - val).abs_at_most(Fraction(1, 10**25))
        assert reloaded.get(zc(2, 3), 40) is None  # stored precision too low

    def test_format_line(self, tmp_path):
        path = tmp_path / "cache.txt"
        cache = EvalCache(str(path))
        cache.put(zc(2), 20, eval_mzv(zc(2), 20))
        line = path.read_text().strip()
        parts = line.split()
        assert parts[0] == "z(2)" and parts[1] == "20"
        assert parts[2].startswith("1.6449340668")


class TestKernels:
    def test_both_kernels_agree(self):
        from blockzeta.series import available_kernels

        kernels = available_kernels()
        if len(kernels) < 2:
            pytest.skip("compiled kernel not built")
        M, F = 80, 120
        py = kernels["python"]
        cy = kernels["cython"]
        Cp = py.g_init(M, F)
        Cc = cy.g_init(M, F)
        assert Cp == Cc
        for bit in (0, 1, 1, 0):
            Cp = py.g_append(Cp, bit, M, F)
            Cc = cy.g_append(Cc, bit, M, F)
            assert Cp == Cc
        assert py.g_value(Cp, M, F) == cy.g_value(Cc, M, F)
