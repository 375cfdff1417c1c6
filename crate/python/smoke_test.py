"""Smoke test for the compiled `lzs` module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install crates/python`.
"""

import math

import lzs


def main():
    p = lzs.DriveParams(eps0=3.0, amp=10.0, omega=3.0)
    t, p_up = lzs.simulate(p, cycles=50, steps_per_period=256)
    assert len(t) == len(p_up) == 50 * 256 + 1
    assert all(0.0 <= v <= 1.0 for v in p_up)

    est = lzs.extract_frequency(p_up, t[1] - t[0], smoothing=p.period())
    rwa = lzs.rwa_predict(p)
    tm = lzs.tm_predict(p)
    assert rwa["n"] == -1
    assert abs(rwa["omega_osc"] - abs(lzs.bessel_jn(1, 10.0 / 3.0))) < 1e-12
    assert abs(est["omega_est"] - rwa["omega_osc"]) < 0.15 * rwa["omega_osc"], (est, rwa)
    assert abs(est["omega_est"] - tm["omega_osc"]) < 0.15 * tm["omega_osc"], (est, tm)

    u = lzs.full_cycle_matrix(p)
    exact = lzs.period_propagator(p)
    assert abs(u.trace() - exact.trace()) < 0.02
    r = lzs.reconstruct(*u.decompose())
    assert max(abs(a - b) for ra, rb in zip(r.entries(), u.entries()) for a, b in zip(ra, rb)) < 1e-12

    _, strobe = lzs.propagate_tm(lzs.DriveParams(5.0, 30.0, 1.0), 20)
    assert len(strobe) == 21

    assert lzs.classify(lzs.DriveParams(0.0, 0.5, 5.0)) == "RABI"
    assert abs(lzs.stokes_phase(1e-4) - math.pi / 4) < 1e-3
    assert lzs.cdt_amplitudes(5.0, 2)[0] > 12.0

    csv = lzs.scan_csv(lzs.DriveParams(9.0, 15.0, 3.0), ("eps0", 8.9, 9.1, 3), ("A", 15.0, 15.0, 1), 64)
    assert csv.splitlines()[0] == "axis1,axis2,omega_est,amplitude,omega_rwa,omega_tm,slow_lhs,flags"

    try:
        lzs.tm_predict(lzs.DriveParams(5.0, 3.0, 1.0))
    except lzs.RegimeError:
        pass
    else:
        raise AssertionError("expected RegimeError")

    print("lzs", lzs.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
