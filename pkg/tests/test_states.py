import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixq.qlinalg import gram, inner_product, projector_sum
from sixq.states import (
    CoefficientQuad,
    PureState,
    bell,
    borras,
    eta,
    fidelity,
    random_state,
    zeta,
)

S = 1 / np.sqrt(2)
AMP = 1 / (4 * np.sqrt(2))

# Channel transcribed ket by ket: each bracket term "|x>|bell>" expanded with
# the Bell kets written as strings, independent of the kron-based constructor.
BELL_KETS = {
    "phi+": {"00": S, "11": S},
    "phi-": {"00": S, "11": -S},
    "psi+": {"01": S, "10": S},
    "psi-": {"01": S, "10": -S},
}
CHANNEL_TEXT = {
    "000": "+0phi+ +1psi+",
    "001": "+0psi- -1phi-",
    "010": "+0psi+ -1phi+",
    "011": "+0phi- +1psi-",
    "100": "-0psi- -1phi-",
    "101": "-0phi+ +1psi+",
    "110": "+0phi- -1psi-",
    "111": "+0psi+ +1phi+",
}


def channel_oracle() -> dict[str, float]:
    amps: dict[str, float] = {}
    for prefix, text in CHANNEL_TEXT.items():
        for term in text.split():
            sign = 1 if term[0] == "+" else -1
            qubit, kind = term[1], term[2:]
            for bits, a in BELL_KETS[kind].items():
                key = prefix + qubit + bits
                amps[key] = amps.get(key, 0.0) + sign * a / 4
    return amps


def test_bell_examples():
    np.testing.assert_allclose(bell("phi_plus").amplitudes, [S, 0, 0, S])
    np.testing.assert_allclose(bell("psi_minus").amplitudes, [0, S, -S, 0])
    assert inner_product(bell("phi_plus").amplitudes, bell("psi_plus").amplitudes) == 0
    with pytest.raises(ValueError):
        bell("chi")


def test_bell_basis_orthonormal():
    g = gram([bell(k).amplitudes for k in ("phi+", "phi-", "psi+", "psi-")])
    np.testing.assert_allclose(g, np.eye(4), atol=1e-15)


def test_borras_matches_ket_by_ket_transcription(channel):
    oracle = channel_oracle()
    for i, a in enumerate(channel.amplitudes):
        assert a == pytest.approx(oracle.get(format(i, "06b"), 0.0), abs=1e-15)


def test_borras_support(channel):
    nz = np.abs(channel.amplitudes) > 1e-14
    assert nz.sum() == 32
    np.testing.assert_allclose(np.abs(channel.amplitudes[nz]), AMP, atol=1e-15)
    assert channel.amplitudes[0] == pytest.approx(AMP)
    assert channel.amplitudes[1] == 0
    assert channel.amplitudes[0b111111] == pytest.approx(AMP)


def test_zeta_examples():
    np.testing.assert_allclose(zeta("000").amplitudes, [0.5, 0, 0, 0.5, 0, 0.5, 0.5, 0])
    # (-|0>|psi-> - |1>|phi->)/sqrt2
    expected = np.array([0, -0.5, 0.5, 0, -0.5, 0, 0, 0.5])
    np.testing.assert_allclose(zeta("100").amplitudes, expected)
    assert zeta(5).amplitudes.tolist() == zeta("100").amplitudes.tolist()
    with pytest.raises(ValueError):
        zeta("0101")
    with pytest.raises(ValueError):
        zeta(9)


def test_zeta_complete_orthonormal_basis():
    vs = [zeta(format(i, "03b")).amplitudes for i in range(8)]
    np.testing.assert_allclose(gram(vs), np.eye(8), atol=1e-12)
    np.testing.assert_allclose(projector_sum(vs), np.eye(8), atol=1e-12)


def test_eta_examples():
    e1 = eta(1).amplitudes
    # (|phi-> |00> + |phi+> |11> + |psi+> |01> + |psi-> |10>) / 2
    expected = np.zeros(16)
    for bell_bits, charlie, sign in [("00", "00", S), ("11", "00", -S), ("00", "11", S), ("11", "11", S),
                                     ("01", "01", S), ("10", "01", S), ("01", "10", S), ("10", "10", -S)]:
        expected[int(bell_bits + charlie, 2)] += sign / 2
    np.testing.assert_allclose(e1, expected, atol=1e-15)
    assert inner_product(eta(1).amplitudes, eta(2).amplitudes) == pytest.approx(0, abs=1e-15)
    assert np.linalg.norm(eta(4).amplitudes) == pytest.approx(1)
    np.testing.assert_allclose(gram([eta(i).amplitudes for i in range(1, 5)]), np.eye(4), atol=1e-12)
    with pytest.raises(ValueError):
        eta(0)


def test_random_state_deterministic_and_normalized():
    a, b = random_state(3, 42), random_state(3, 42)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert not np.array_equal(a.amplitudes, random_state(3, 43).amplitudes)
    for s in range(20):
        assert np.linalg.norm(random_state(3, s).amplitudes) == pytest.approx(1, abs=1e-12)


def test_random_state_isotropic():
    n, draws, idx = 2, 10_000, 1
    samples = np.array([abs(random_state(n, s).amplitudes[idx]) ** 2 for s in range(draws)])
    se = samples.std(ddof=1) / np.sqrt(draws)
    assert abs(samples.mean() - 1 / 2**n) <= 3 * se


def test_fidelity_examples():
    v = random_state(2, 0)
    assert fidelity(v, v) == pytest.approx(1)
    assert fidelity(PureState.from_bits("0"), PureState.from_bits("1")) == 0
    with pytest.raises(ValueError):
        fidelity(v, random_state(3, 0))


@given(st.integers(0, 10_000), st.integers(0, 10_000), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_fidelity_symmetric_and_phase_invariant(s1, s2, t1, t2):
    a, b = random_state(2, s1), random_state(2, s2)
    f = fidelity(a, b)
    assert 0 <= f <= 1
    assert fidelity(b, a) == pytest.approx(f, abs=1e-14)
    a2 = PureState(2, cmath.exp(1j * t1) * a.amplitudes)
    b2 = PureState(2, cmath.exp(1j * t2) * b.amplitudes)
    assert fidelity(a2, b2) == pytest.approx(f, abs=1e-12)


def test_pure_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        PureState(1, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        PureState(2, np.array([1.0, 0.0]))


def test_coefficient_quad_greek_order():
    # alpha|00> + beta|10> + gamma|01> + delta|11>
    q = CoefficientQuad.from_greek(0.5, 0.5j, -0.5, 0.5)
    np.testing.assert_allclose(q.state().amplitudes, [0.5, -0.5, 0.5j, 0.5])
    assert CoefficientQuad.from_state(q.state()) == q
    with pytest.raises(ValueError):
        CoefficientQuad(1, 1, 0, 0)


@pytest.mark.parametrize("i,j", list(itertools.combinations(range(8), 2)))
def test_zeta_pairwise_orthogonal(i, j):
    assert abs(inner_product(zeta(i + 1).amplitudes, zeta(j + 1).amplitudes)) < 1e-15
