import mpmath as mp
import pytest

from expspan import (FlatIndex, Interval, MultiplicitySequence,
                     PrecisionContext, Sector, SequenceError, fixture,
                     flat_position, flatten, sector_contains,
                     sequence_from_spec, validate_sequence)


class TestValidate:
    def test_valid_prefix_of_ratio_sequence(self):
        seq = MultiplicitySequence.from_pairs([(3, 2), (9, 4)])
        assert validate_sequence(seq) == []

    def test_duplicate_lambda_reported(self):
        seq = MultiplicitySequence.from_pairs([(1, 1), (1, 1)])
        rules = {v.rule for v in validate_sequence(seq)}
        assert "distinct" in rules

    def test_modulus_order_reported(self):
        seq = MultiplicitySequence.from_pairs([(2, 1), (1, 1)])
        rules = {v.rule for v in validate_sequence(seq)}
        assert "modulus-order" in rules

    def test_zero_lambda_reported(self):
        seq = MultiplicitySequence.from_pairs([(0, 1), (1, 1)])
        assert any(v.rule == "nonzero" for v in validate_sequence(seq))

    def test_every_violation_listed(self):
        seq = MultiplicitySequence.from_pairs([(2, 1), (1, 1), (1, 1)])
        rules = [v.rule for v in validate_sequence(seq)]
        assert "modulus-order" in rules and "distinct" in rules

    def test_arg_tiebreak(self):
        good = MultiplicitySequence.from_pairs([(mp.mpc(1, -1), 1), (mp.mpc(1, 1), 1)])
        assert validate_sequence(good) == []
        bad = MultiplicitySequence.from_pairs([(mp.mpc(1, 1), 1), (mp.mpc(1, -1), 1)])
        assert any(v.rule == "arg-order" for v in validate_sequence(bad))

    @pytest.mark.parametrize("name,terms", [
        ("example_i", 8), ("example_ii", 8), ("example_iii", 8),
        ("example_iv", 8), ("example_v", 6), ("example_vi", 5),
        ("carleson_counterexample", 5),
    ])
    def test_all_fixture_sequences_valid(self, name, terms):
        assert validate_sequence(fixture(name, terms)) == []


class TestFlatten:
    def test_multiplicity_blocks(self):
        seq = MultiplicitySequence.from_pairs([(3, 2), (9, 4)])
        assert flatten(seq, 2) == [FlatIndex(1, 0), FlatIndex(1, 1),
                                   FlatIndex(2, 0), FlatIndex(2, 1),
                                   FlatIndex(2, 2), FlatIndex(2, 3)]
        assert flatten(seq, 1) == [FlatIndex(1, 0), FlatIndex(1, 1)]

    def test_singleton(self):
        seq = MultiplicitySequence.from_pairs([(1, 1)])
        assert flatten(seq, 1) == [FlatIndex(1, 0)]

    def test_out_of_range(self, squares8):
        with pytest.raises(SequenceError):
            flatten(squares8, 9)

    def test_bijection_roundtrip(self):
        seq = fixture("example_v", 5)
        for N in (1, 3, 5):
            idx = flatten(seq, N)
            assert len(idx) == seq.total_multiplicity(N)
            assert len(set(idx)) == len(idx)
            pos = flat_position(seq, N)
            for i, ix in enumerate(idx):
                assert pos[ix] == i
                assert 1 <= ix.n <= N and 0 <= ix.k < seq.mu(ix.n)


class TestSector:
    def test_half_plane(self):
        s = Sector(0, 1)
        assert sector_contains(s, mp.mpf("0.5"))
        assert not sector_contains(s, 1)  # boundary excluded
        assert not sector_contains(s, mp.mpc(2, -5))

    def test_aperture(self):
        s = Sector(mp.pi / 4, 0)
        assert sector_contains(s, mp.mpc(-1, 0.5))
        assert not sector_contains(s, mp.mpc(-1, 1.5))

    def test_violation_message_names_inequality(self):
        s = Sector(0, 1)
        assert "Re z" in s.violation(2)

    def test_left_shift_stays_inside(self):
        rng = __import__("random").Random(7)
        s = Sector(mp.mpf("0.9"), mp.mpf("0.3"))
        found = 0
        while found < 25:
            z = mp.mpc(rng.uniform(-5, 0.3), rng.uniform(-3, 3))
            if sector_contains(s, z):
                found += 1
                t = mp.mpf(rng.uniform(0, 4))
                assert sector_contains(s, z - t)

    def test_eta_range(self):
        with pytest.raises(ValueError):
            Sector(mp.pi / 2, 0)


class TestInterval:
    def test_derived_quantities(self):
        iv = Interval(-1, 3)
        assert iv.sigma == 1 and iv.tau == 2 and iv.length == 4

    def test_order_enforced(self):
        with pytest.raises(ValueError):
            Interval(2, 1)


class TestPrecisionContext:
    def test_defaults_valid(self):
        ctx = PrecisionContext()
        assert ctx.digits >= 50

    def test_digit_floor(self):
        with pytest.raises(ValueError):
            PrecisionContext(digits=20)

    def test_tol_floor(self):
        with pytest.raises(ValueError):
            PrecisionContext(digits=50, tol=mp.mpf("1e-45"))

    def test_truncation_orders_positive(self):
        with pytest.raises(ValueError):
            PrecisionContext(trunc_N=0)


class TestSequenceSpec:
    def test_explicit_roundtrip(self, tmp_path):
        spec = {"kind": "explicit", "entries": [[3, 0, 2], [9, 0, 4]]}
        seq = sequence_from_spec(spec)
        assert seq.size == 2 and seq.mu(2) == 4 and seq.lam(1) == 3

    def test_generator_spec(self):
        seq = sequence_from_spec({"kind": "generator", "name": "example_v",
                                  "terms": 3})
        assert seq.size == 3 and seq.lam(3) == 27 and seq.mu(3) == 8

    def test_string_entries_keep_precision(self):
        spec = {"kind": "explicit",
                "entries": [["1." + "0" * 40 + "1", "0", 1], ["2", "0", 1]]}
        with mp.workdps(80):
            seq = sequence_from_spec(spec)
            assert seq.lam(1) != 1

    def test_bad_spec_rejected(self):
        from expspan import ConfigError
        for spec in ({}, {"kind": "explicit"}, {"kind": "generator"},
                     {"kind": "nope"}):
            with pytest.raises(ConfigError):
                sequence_from_spec(spec)

    def test_paired_fixture_keeps_tiny_gap(self):
        seq = fixture("example_iii", 12)
        # gap e^(-144) must survive in the stored entries
        gap = abs(seq.lam(24) - seq.lam(23))
        assert 0 < gap < mp.mpf("1e-60")
