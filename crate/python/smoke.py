"""Smoke test for the stabloc_py extension; run after `pip install -e crates/stabloc-py`."""

import math

import stabloc_py as sl


def main():
    ring = sl.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert ring.n_nodes == 5 and ring.is_connected()

    red = sl.reduce(ring, "pms: 3:X 4:Y")
    assert red.s == [0, 1, 2]
    probs = [red.outcome(k)[0] for k in range(4)]
    assert math.isclose(sum(probs), 1.0), probs

    value, m, orbits = sl.lgme(ring, [0, 1, 2])
    assert value == 1.0 and orbits == 1, (value, m, orbits)

    corner = sl.lgme_lattice("square:4x4", "plaquette:corner")
    assert corner == (2.0, 13, 1), corner

    p = sl.NoisyProblem("linear:8", "line:boundary")
    lam = p.lambdas("BF", 0.2, 0.0)
    assert math.isclose(sum(lam), 1.0)
    qc = p.critical_noise("BF", 0.0)
    assert 0.27 < qc < 0.273, qc

    try:
        sl.Graph(3, [(1, 1)])
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("self-loop accepted")

    print(f"ok: outcomes {probs}, lgme {value}, corner {corner}, q_c {qc:.6f}")


if __name__ == "__main__":
    main()
