import json

import numpy as np
import pytest

from qdetect.channels import (Channel, ChannelError, apply, channel_to_document, choi_output,
                              identity, load_channel, make_amplitude_damping, make_dephasing,
                              make_depolarizing, make_erasure, make_generalized_pauli,
                              make_pauli, make_two_kraus, random_channel, weyl)
from qdetect.detection import bell_states
from qdetect.linalg import SIGMA_X, SIGMA_Z, hermitian_eig, partial_trace, projector

BUILTINS = [
    identity(2), identity(3),
    make_dephasing(0.3), make_dephasing(0.7, d=3), make_dephasing(0.2, d=4),
    make_depolarizing(0.1), make_depolarizing(0.4, d=3), make_depolarizing(0.05, d=4),
    make_pauli(0.7, 0.1, 0.15, 0.05),
    make_generalized_pauli(np.arange(1, 10) / 45, 3),
    make_erasure(0.25, 2), make_erasure(0.4, 3),
    make_amplitude_damping(0.2), make_amplitude_damping(1.0),
    make_two_kraus(0.4, 1.1), make_two_kraus(-2.0, 0.3),
]


@pytest.mark.parametrize("ch", BUILTINS, ids=lambda c: f"{c.label}-{c.d_in}")
def test_builtin_completeness(ch):
    assert ch.completeness_residual() < 1e-12


@pytest.mark.parametrize("ch", BUILTINS, ids=lambda c: f"{c.label}-{c.d_in}")
def test_choi_reduction_matches_apply(ch):
    d = ch.d_in
    joint = choi_output(ch)
    red = partial_trace(joint, (d, ch.d_out), keep=1)
    assert np.abs(red - apply(ch, np.eye(d) / d)).max() < 1e-12
    assert abs(np.trace(joint) - 1) < 1e-12
    assert hermitian_eig(joint).eigenvalues.min() > -1e-12


def test_apply_examples():
    rho = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    assert np.allclose(apply(identity(2), rho), rho)
    assert np.allclose(apply(make_depolarizing(0.6), np.eye(2) / 2), np.eye(2) / 2)
    g = 0.35
    out = apply(make_amplitude_damping(g), np.eye(2) / 2)
    assert np.abs(out - (np.eye(2) + g * SIGMA_Z) / 2).max() < 1e-15


def test_apply_rejects_bad_input():
    with pytest.raises(ValueError):
        apply(identity(2), np.eye(3) / 3)
    with pytest.raises(ValueError):
        apply(identity(2), np.eye(2))


def test_choi_identity_is_phi_plus():
    assert np.abs(choi_output(identity(2)) - projector(bell_states()["phi+"])).max() < 1e-15


def test_choi_dephasing_bell_diagonal():
    p = 0.37
    b = bell_states()
    expected = (1 - p / 2) * projector(b["phi+"]) + p / 2 * projector(b["phi-"])
    assert np.abs(choi_output(make_dephasing(p)) - expected).max() < 1e-15


def test_choi_amplitude_damping_four_terms():
    g = 0.2
    s = np.sqrt(1 - g)
    b = {k: v for k, v in bell_states().items()}
    P = lambda u, v: np.outer(b[u], b[v].conj())
    expected = ((1 + s) ** 2 / 4 * P("phi+", "phi+") + (1 - s) ** 2 / 4 * P("phi-", "phi-")
                + g / 4 * (P("phi+", "phi-") + P("phi-", "phi+"))
                + g / 4 * (P("psi+", "psi+") + P("psi-", "psi-") - P("psi+", "psi-") - P("psi-", "psi+")))
    assert np.abs(choi_output(make_amplitude_damping(g)) - expected).max() < 1e-15
    # Bell-diagonal weights
    diag = [np.real(b[k].conj() @ choi_output(make_amplitude_damping(g)) @ b[k]) for k in ("phi+", "phi-")]
    assert np.allclose(diag, [(1 + np.sqrt(0.8)) ** 2 / 4, (1 - np.sqrt(0.8)) ** 2 / 4], atol=1e-15)


def test_dephasing_kraus():
    ch = make_dephasing(0.0)
    assert np.allclose(choi_output(ch), choi_output(identity(2)))
    ch = make_dephasing(1.0)
    assert np.allclose(ch.kraus[0], np.eye(2) / np.sqrt(2))
    assert np.allclose(ch.kraus[1], SIGMA_Z / np.sqrt(2))
    ev = hermitian_eig(choi_output(make_dephasing(0.5))).eigenvalues
    assert np.allclose(ev, [0.75, 0.25, 0, 0], atol=1e-14)


def test_dephasing_rejects_bad_unitary():
    with pytest.raises(ChannelError):
        make_dephasing(0.3, 2, U=np.eye(2))  # not traceless
    with pytest.raises(ChannelError):
        make_dephasing(0.3, 2, U=np.array([[0, 2], [0.5, 0]]))  # not unitary


def test_depolarizing_examples():
    for d in (2, 3):
        assert np.allclose(choi_output(make_depolarizing(0.0, d)), choi_output(identity(d)))
    assert np.abs(choi_output(make_depolarizing(0.75)) - np.eye(4) / 4).max() < 1e-15
    with pytest.raises(ChannelError):
        make_depolarizing(1.2)


def test_depolarizing_qubit_form_matches_pauli_form():
    for p in (0.0, 0.1, 0.3, 0.75):
        a = choi_output(make_depolarizing(p))
        b = choi_output(make_pauli(1 - p, p / 3, p / 3, p / 3))
        assert np.abs(a - b).max() < 1e-12


def test_depolarizing_d_form_matches_closed_form():
    d, p = 3, 0.4
    rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
    rho[0, 1] = rho[1, 0] = 0.1
    lam = p * d * d / (d * d - 1)
    assert np.abs(apply(make_depolarizing(p, d), rho) - ((1 - lam) * rho + lam * np.eye(d) / d)).max() < 1e-14


def test_pauli_examples():
    assert np.allclose(choi_output(make_pauli(1, 0, 0, 0)), choi_output(identity(2)))
    assert np.abs(choi_output(make_pauli(0.25, 0.25, 0.25, 0.25)) - np.eye(4) / 4).max() < 1e-15
    with pytest.raises(ChannelError):
        make_pauli(0.5, 0.5, 0.5, -0.5)
    with pytest.raises(ChannelError):
        make_generalized_pauli([0.5, 0.5, 0.1, 0], 2)


def test_generalized_pauli_uniform_is_fully_depolarizing():
    ch = make_generalized_pauli(np.full(9, 1 / 9), 3)
    assert np.abs(choi_output(ch) - np.eye(9) / 9).max() < 1e-14


def test_erasure_examples():
    d = 3
    ch = make_erasure(0.0, d)
    assert ch.d_out == d + 1
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    out = apply(ch, rho)
    assert np.allclose(out[:d, :d], rho) and out[d, d] == 0
    out = apply(make_erasure(1.0, d), rho)
    flag = np.zeros((d + 1, d + 1))
    flag[d, d] = 1
    assert np.allclose(out, flag)


def test_erasure_joint_output_spectrum():
    p, d = 0.25, 2
    joint = choi_output(make_erasure(p, d))
    assert np.allclose(hermitian_eig(joint).eigenvalues, [0.75, 0.125, 0.125, 0, 0, 0], atol=1e-14)


def test_amplitude_damping_limits():
    assert np.allclose(choi_output(make_amplitude_damping(0)), choi_output(identity(2)))
    rho = np.array([[0.3, 0.1j], [-0.1j, 0.7]])
    assert np.allclose(apply(make_amplitude_damping(1), rho), np.diag([1, 0]))
    with pytest.raises(ChannelError):
        make_amplitude_damping(1.5)


def test_two_kraus_special_cases():
    a = 0.6
    # alpha == beta: a Pauli-diagonal (dephasing-type) channel
    joint = choi_output(make_two_kraus(a, a))
    b = bell_states()
    bell = np.array([b[k] for k in ("phi+", "phi-", "psi+", "psi-")])
    in_bell = bell.conj() @ joint @ bell.T
    assert np.abs(in_bell - np.diag(np.diag(in_bell))).max() < 1e-15
    # beta == 0 is amplitude damping with gamma = sin^2(alpha), decaying towards |1>:
    # equal to the standard one after relabelling |0> <-> |1> on input and output
    XX = np.kron(SIGMA_X, SIGMA_X)
    ad = choi_output(make_amplitude_damping(np.sin(a) ** 2))
    assert np.abs(choi_output(make_two_kraus(a, 0)) - XX @ ad @ XX).max() < 1e-15
    assert np.allclose(choi_output(make_two_kraus(0, 0)), choi_output(identity(2)))


def test_channel_rejects_non_trace_preserving():
    with pytest.raises(ChannelError):
        Channel((np.eye(2) * 0.9,))
    with pytest.raises(ChannelError):
        Channel((np.eye(2), np.eye(3)))


def test_load_channel_round_trip(tmp_path):
    ch = make_dephasing(0.4)
    doc = channel_to_document(ch)
    loaded = load_channel(doc)
    assert all(np.array_equal(a, b) for a, b in zip(loaded.kraus, ch.kraus))
    path = tmp_path / "ad.json"
    path.write_text(json.dumps(channel_to_document(make_amplitude_damping(0.3))))
    loaded = load_channel(str(path))
    rho = np.array([[0.6, 0.2 - 0.3j], [0.2 + 0.3j, 0.4]])
    assert np.abs(apply(loaded, rho) - apply(make_amplitude_damping(0.3), rho)).max() < 1e-12


def test_load_channel_errors():
    bad = {"d_in": 2, "d_out": 2, "kraus": [{"re": [[1, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]}]}
    with pytest.raises(ChannelError, match="trace preserving"):
        load_channel(bad)
    with pytest.raises(ChannelError):
        load_channel({"d_in": 2, "kraus": []})
    with pytest.raises(ChannelError):
        load_channel({"d_in": 2, "d_out": 2, "kraus": [{"re": [[1, 0]]}]})
    with pytest.raises(ChannelError):
        load_channel('{"d_in": 2, "d_out": ')


def test_random_channel_is_valid():
    rng = np.random.default_rng(0)
    for rank in (1, 2, 4):
        ch = random_channel(2, 3, rank, rng)
        assert ch.d_in == 2 and ch.d_out == 3 and len(ch.kraus) == rank
        assert ch.completeness_residual() < 1e-12


def test_weyl_convention():
    d = 3
    w = np.exp(2j * np.pi / d)
    U = weyl(1, 2, d)
    # U_12 |k+2> = w^k |k>
    for k in range(d):
        e = np.zeros(d)
        e[(k + 2) % d] = 1
        out = np.zeros(d, dtype=complex)
        out[k] = w ** k
        assert np.allclose(U @ e, out)
    assert np.allclose(weyl(0, 1, 2), SIGMA_X)
    assert np.allclose(weyl(1, 0, 2), SIGMA_Z)
