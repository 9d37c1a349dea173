"""Weight sequences, associated functions, and growth certificates."""

import threading

import numpy as np
import pytest
from scipy.special import gammaln

from ultranorm import sequences as sq
from ultranorm.errors import LocalizationError

import oracles


def test_associated_matches_brute_force_gevrey_family():
    # independent scan oracle over three Gevrey orders
    t = np.geomspace(1e-2, 1e3, 120)
    for s in (0.5, 1.0, 2.0):
        seq = sq.WeightSequence.gevrey(s)
        fast = sq.log_associated(seq, t)
        brute = oracles.brute_assoc_gevrey(s, t)
        assert np.allclose(fast, brute, rtol=1e-12, atol=1e-12)


def test_associated_exact_values_factorial():
    seq = sq.WeightSequence.gevrey(1.0)
    # sup log(2^p / p!) is attained at p = 1 and p = 2: log 2
    assert sq.log_associated(seq, np.array([2.0]))[0] == \
        pytest.approx(np.log(2.0), abs=1e-12)
    # at t = 4 the sup sits at p = 3: log(64 / 6)
    assert sq.log_associated(seq, np.array([4.0]))[0] == \
        pytest.approx(np.log(32.0 / 3.0), abs=1e-12)
    assert sq.log_associated(seq, np.array([0.0]))[0] == 0.0
    assert sq.log_associated(seq, np.array([1.0]))[0] == 0.0
    # frozen regression anchor
    assert sq.log_associated(seq, np.array([4.0]))[0] == \
        pytest.approx(2.3671236141316165, abs=1e-13)


def test_associated_monotone_and_zero_below_one():
    seq = sq.WeightSequence.gevrey(1.0)
    t = np.linspace(0.0, 50.0, 301)
    vals = sq.log_associated(seq, t)
    assert np.all(np.diff(vals) >= -1e-12)
    assert np.all(vals[t <= 1.0] == 0.0)


def test_associated_from_finite_table_matches_table_oracle():
    rng = np.random.default_rng(5)
    # random log-convex table: integrate twice from positive second diffs
    d2 = rng.uniform(0.05, 0.4, size=40)
    d1 = np.concatenate([[-1.0], -1.0 + np.cumsum(d2)])
    log_m = np.concatenate([[0.0], np.cumsum(d1)])
    seq = sq.WeightSequence(log_table=log_m, log_convex=True)
    t = np.geomspace(1e-2, 10.0, 60)
    got = sq.log_associated(seq, t)
    want = oracles.brute_assoc_table(log_m, t)
    # the table is finite so the sup is over the same finite range
    assert np.allclose(got, want, rtol=1e-12, atol=1e-12)


def test_radial_extension_equals_radius_evaluation():
    seq = sq.WeightSequence.gevrey(1.0)
    pts = np.array([[3.0, 4.0], [0.0, 0.0], [-1.0, 1.0]])
    want = sq.log_associated(seq, np.array([5.0, 0.0, np.sqrt(2.0)]))
    got = sq.radial_extension(seq, pts)
    assert np.allclose(got, want, rtol=0, atol=1e-14)


def test_log_convexity_check_accepts_and_pinpoints():
    good = sq.WeightSequence.gevrey(1.0)
    ok, bad = sq.check_m1(good, 100)
    assert ok and bad is None
    table = np.exp([0.0, 0.0, 2.0, 2.1])   # bump at p = 2 breaks convexity
    lumpy = sq.WeightSequence.from_values(table)
    assert lumpy.log_convex is False       # auto-detected from the table
    ok, bad = sq.check_m1(lumpy, 2)
    assert not ok and bad == 2


def test_ratio_growth_witness_known_sequences():
    for s, want_h in ((1.0, 2.0), (2.0, 4.0)):
        w = sq.fit_m2prime(sq.WeightSequence.gevrey(s), 200)
        assert w.c0 == pytest.approx(1.0)
        assert w.h == pytest.approx(want_h, rel=1e-12)
        ok, margin = sq.verify_m2prime(sq.WeightSequence.gevrey(s), w)
        assert ok and margin >= -1e-12
    w = sq.fit_m2prime(sq.WeightSequence.constant(), 200)
    assert (w.c0, w.h) == (1.0, 1.0)


def test_ratio_growth_witness_is_minimal():
    seq = sq.WeightSequence.gevrey(1.0)
    w = sq.fit_m2prime(seq, 200)
    shrunk = sq.M2PrimeWitness(c0=w.c0, h=w.h * 0.95, checked_upto=w.checked_upto)
    ok, _ = sq.verify_m2prime(seq, shrunk)
    assert not ok


def test_witness_decay_inequalities():
    seq = sq.WeightSequence.gevrey(1.0)
    w = sq.fit_m2prime(seq, 200)
    t = np.geomspace(1e-2, 1e3, 200)
    for dim in (1, 2):
        res = sq.check_m2prime_decay(seq, w, dim, t)
        assert res.ok
    # exact spot value: with C0 = 1, H = 2 and d = 1 the ratio at t = 1 is
    # exp(-M(4)) (1 + 1) / 4 = (3 / 32) / 2
    assert np.exp(-sq.log_associated(seq, np.array([4.0]))[0]) == \
        pytest.approx(0.09375, abs=1e-13)


def test_log_power_comparison_splits_the_scale():
    assert sq.precedes_log_growth(sq.WeightSequence.gevrey(1.0), 200).verdict
    # the verdict is window-dependent by design: (p!)^{1/2} clears the
    # threshold only once sqrt(p / e) outruns 2 log p
    assert not sq.precedes_log_growth(sq.WeightSequence.gevrey(0.5), 200).verdict
    assert sq.precedes_log_growth(sq.WeightSequence.gevrey(0.5), 1000).verdict
    border = sq.precedes_log_growth(sq.WeightSequence.log_power(), 200)
    assert not border.verdict          # quotient tends to 1, below threshold
    assert not sq.precedes_log_growth(sq.WeightSequence.constant(), 200).verdict


def test_constant_sequence_assoc_diverges_cleanly():
    seq = sq.WeightSequence.constant()
    with pytest.raises(LocalizationError):
        sq.log_associated(seq, np.array([2.0]))


def test_generator_extension_is_thread_safe():
    seq = sq.WeightSequence.gevrey(1.0)
    errs = []

    def worker(k):
        try:
            vals = seq.log_values_upto(3000 + 17 * k)
            ref = gammaln(np.arange(vals.size, dtype=float) + 1.0)
            if not np.allclose(vals, ref, rtol=0, atol=1e-9):
                errs.append("mismatch")
        except Exception as exc:   # noqa: BLE001 - collect everything
            errs.append(repr(exc))

    threads = [threading.Thread(target=worker, args=(k,)) for k in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errs


def test_from_values_rejects_nonpositive():
    with pytest.raises(ValueError):
        sq.WeightSequence.from_values([1.0, 0.0, 2.0])


def test_canonical_operation_aliases_point_at_the_same_objects():
    assert sq.check_m1 is sq.check_log_convexity
    assert sq.fit_m2prime is sq.fit_ratio_growth
    assert sq.associated_function is sq.log_associated
    assert sq.precedes_log_growth is sq.outgrows_log_power
