import numpy as np
import pytest

from qdetect.channels import (choi_output, identity, make_amplitude_damping, make_dephasing,
                              make_depolarizing, make_erasure, random_channel)
from qdetect.detection import BELL, BasisSpec, Family, optimize_qdet, pauli_expectations, q_det
from qdetect.shotsim import (MeasurementRecord, estimate_report, expectations_from_records,
                             outcome_probabilities, report_from_expectations, sample,
                             sample_all)


def test_identity_zz_only_correlated_outcomes():
    rec = sample(identity(2), "ZZ", 5000, seed=1)
    assert rec.counts[(1, -1)] == 0 and rec.counts[(-1, 1)] == 0
    assert sum(rec.counts.values()) == 5000


def test_fully_depolarizing_uniform():
    for s in ("XX", "YY", "ZZ"):
        assert np.allclose(outcome_probabilities(choi_output(make_depolarizing(0.75)), s), 0.25)
        rec = sample(make_depolarizing(0.75), s, 200_000, seed=3)
        assert all(abs(c / 200_000 - 0.25) < 0.005 for c in rec.counts.values())


def test_dephasing_xx_correlation():
    probs = outcome_probabilities(choi_output(make_dephasing(0.5)), "XX")
    # outcomes (+,+) and (-,-) have product +1
    assert probs[0] + probs[3] == pytest.approx(0.75, abs=1e-15)


def test_sampling_is_deterministic():
    ch = make_amplitude_damping(0.3)
    assert sample_all(ch, 1000, 42) == sample_all(ch, 1000, 42)
    assert sample_all(ch, 1000, 42) != sample_all(ch, 1000, 43)


def test_sample_errors():
    with pytest.raises(ValueError):
        sample(make_erasure(0.1, 2), "ZZ", 10)
    with pytest.raises(ValueError):
        sample(identity(2), "XY", 10)
    with pytest.raises(ValueError):
        MeasurementRecord("XX", {(1, 1): 3}, 4)


def test_missing_setting():
    recs = sample_all(identity(2), 100, 0)
    del recs["YY"]
    with pytest.raises(ValueError, match="missing"):
        estimate_report(recs)


@pytest.mark.parametrize("ch", [make_amplitude_damping(0.2), make_dephasing(0.3),
                                make_depolarizing(0.1),
                                random_channel(2, 2, 3, np.random.default_rng(5))],
                         ids=lambda c: c.label)
def test_exact_expectations_reproduce_detection(ch):
    E = pauli_expectations(choi_output(ch))
    assert report_from_expectations(E).q_det == pytest.approx(optimize_qdet(ch).q_det, abs=1e-12)
    assert report_from_expectations(E, BELL).q_det == pytest.approx(q_det(ch, BELL).q_det, abs=1e-12)


def test_expectations_from_records():
    recs = {"XX": MeasurementRecord("XX", {(1, 1): 6, (1, -1): 2, (-1, 1): 0, (-1, -1): 2}, 10),
            "YY": MeasurementRecord("YY", {(1, 1): 5, (1, -1): 0, (-1, 1): 0, (-1, -1): 5}, 10),
            "ZZ": MeasurementRecord("ZZ", {(1, 1): 0, (1, -1): 4, (-1, 1): 6, (-1, -1): 0}, 10)}
    E = expectations_from_records(recs)
    assert E["XX"] == pytest.approx(0.6)
    assert E["XI"] == pytest.approx(0.6)
    assert E["IX"] == pytest.approx(0.2)
    assert E["ZZ"] == pytest.approx(-1.0)
    assert E["IZ"] == pytest.approx(0.2)


def test_negative_estimates_clamped_and_flagged():
    # amplitude damping has exact zeros in its optimal vector; noise pushes some negative
    ch = make_amplitude_damping(0.2)
    flags = [estimate_report(sample_all(ch, 2000, s), BasisSpec(Family.B1, 0.0557, np.pi / 4)).clamped
             for s in range(20)]
    assert any(flags)
    r = estimate_report(sample_all(ch, 2000, 0))
    assert np.all(r.prob_vector >= 0) and r.prob_vector.sum() == pytest.approx(1)


def test_amplitude_damping_estimate_within_tolerance():
    r = estimate_report(sample_all(make_amplitude_damping(0.2), 100_000, 2024))
    assert abs(r.q_det - 0.501955) < 0.02
