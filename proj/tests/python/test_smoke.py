
import pytest

import cattaneo as ct


def test_region_and_exponents_of_preset():
    p = ct.Parameters()
    assert ct.classify_region(p) == ("InQ", 0.5)
    e = ct.decay_exponents(p)
    assert e["k"] == pytest.approx(2.0)
    assert e["decay_exponent"] == pytest.approx(0.5)
    assert e["sharp"] == "Sharp"


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError, match="Fourier case unsupported"):
        ct.validate(ct.Parameters(tau=0.0))
    with pytest.raises(ct.InvalidParameters):
        ct.decay_exponents(ct.Parameters(alpha=0.5))
    with pytest.raises(ct.UnsupportedNormalization):
        ct.predicted_branches(ct.Parameters(sigma=3.0), 1e4)


def test_unit_mode_quartic():
    assert ct.char_coeffs(ct.Parameters(), 1.0) == [2.0, 2.0, 5.0, 3.0, 2.0]
    roots = ct.mode_roots(ct.Parameters(), 1.0)
    for z in roots:
        value = sum(c * z ** (4 - j) for j, c in enumerate([2.0, 2.0, 5.0, 3.0, 2.0]))
        assert abs(value) < 1e-12
    assert sum(roots).real == pytest.approx(-1.0)


def test_known_roots():
    # (x + 1)(x + 2)(x^2 + 2x + 5)
    roots = ct.solve_quartic([1, 5, 13, 19, 10])
    assert roots[0] == pytest.approx(complex(-1, 2))
    assert roots[3] == pytest.approx(-2)


def test_roots_agree_with_generator_eigenvalues():
    p = ct.Parameters(alpha=0.8, beta=0.2, gamma=0.7, m=1.3, sigma=1.5, tau=0.7)
    for mu in (1.0, 1e3, 1e7):
        roots = ct.mode_roots(p, mu)
        eig = ct.modal_eigenvalues(p, mu)
        for z in roots:
            assert min(abs(z - w) for w in eig) <= 1e-8 * abs(z)


def test_generator_trace():
    m = ct.generator(ct.Parameters(tau=0.25), 10.0)
    assert sum(m[i][i] for i in range(4)) == pytest.approx(-4.0)


def test_branch_prediction_and_sharpness():
    p = ct.Parameters()
    pred = ct.predicted_branches(p, 1e8)
    assert pred[0].imag == pytest.approx(1e6)
    root = ct.mode_roots(p, 1e10)[0]
    assert ct.sharpness_product(root, 2.0) == pytest.approx(0.5, abs=0.025)


def test_resolvent_high_frequency_limit():
    modes = ct.spectrum("biharmonic1d", 3)
    s = 1e7
    norm, mode = ct.resolvent_norm(ct.Parameters(), modes, s)
    assert norm * s == pytest.approx(1.0, rel=1e-2)
    assert 0 <= mode < 3


def test_decay_fit_on_preset():
    p = ct.Parameters(m=0.0)
    modes = ct.spectrum("biharmonic1d", 200)
    lo, hi = ct.default_decay_window(p, modes)
    t = [lo * (hi / lo) ** (i / 63) for i in range(64)]
    env = ct.decay_envelope(p, modes, t, threads=2)
    fit = ct.fit_powerlaw(env["abscissae"], env["values"])
    assert fit["slope"] == pytest.approx(-0.5, abs=0.05)
    assert fit["r_squared"] >= 0.98


def test_fit_powerlaw_exact_and_refused():
    x = [2.0 ** i for i in range(12)]
    fit = ct.fit_powerlaw(x, [3 * xi ** -0.5 for xi in x], (1.0, 2048.0))
    assert fit["slope"] == pytest.approx(-0.5)
    assert fit["r_squared"] == pytest.approx(1.0)
    zigzag = [1.0 if i % 2 else 10.0 for i in range(12)]
    with pytest.raises(ct.FitRefused):
        ct.fit_powerlaw(x, zigzag, (1.0, 2048.0))


def test_acceptance_criteria_pass():
    results = ct.run_acceptance()
    assert [r["id"] for r in results] == list(range(1, 13))
    failed = [r["title"] for r in results if not r["pass"]]
    assert not failed
