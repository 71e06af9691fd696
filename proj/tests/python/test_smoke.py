import math

import pytest

import pbqclab as pv


def test_states_and_gates():
    bell = pv.bell_pair()
    assert pv.fidelity(bell, bell) == pytest.approx(1.0)
    amps = bell.amplitudes()
    assert amps[0] == pytest.approx(1 / math.sqrt(2))
    assert amps[3] == pytest.approx(1 / math.sqrt(2))

    plus = pv.apply_named_gate(pv.PureState([2]), "H", [0])
    out, _ = pv.measure_pauli(plus, "X", pv.Rng(1))
    assert out == 1

    ghz = pv.make_ghz(3, [0, 0, 0], 0)
    assert pv.equal_up_to_phase(ghz, ghz)


def test_schedules():
    line = pv.Geometry.collinear(1.0, 0.1, 1.0)
    assert pv.honest_completion(line).completion == pytest.approx(2.0)
    assert pv.cheat_completion(line).completion == pytest.approx(2.0)

    tri = pv.Geometry.equilateral(1.0, 0.1, 1.0)
    cheat = pv.cheat_completion(tri)
    assert cheat.completion == pytest.approx(2.0 + (math.sqrt(3.0) - 2.0) * 0.1)
    assert cheat.meets_deadline

    feasible, witness = pv.feasibility_check(tri)
    assert feasible and witness is None


def test_honest_runs_and_attacks():
    line = pv.Geometry.collinear(1.0, 0.1, 1.0)
    t = pv.run_protocol_a(2, 1, [1], line, seed=7)
    assert t.decoded == [1]

    for u in range(2):
        for q in range(2):
            out = pv.attack_a_n2(u, q, line, seed=11 + u * 2 + q)
            assert out.success
            assert out.schedule.completion == pytest.approx(2.0)

    tri = pv.Geometry.equilateral(1.0, 0.1, 1.0)
    out = pv.attack_b_n3([0, 1, 1], 1, tri, seed=3)
    assert out.success

    tele = pv.attack_modified(0, math.pi / 2, 0.0, "teleport-optimal", line, seed=5)
    assert tele.success


def test_rates_small():
    rep = pv.rate_monte_carlo("measure-hold", 2000, seed=42)
    assert abs(rep.rate - 0.75) < 0.05
    assert rep.samples == 2000

    assert pv.teleport_success_prob(0.0, 0.0) == pytest.approx(1.0)
    quad = pv.rate_quadrature_teleport(1e-4)
    assert 0.84 < quad < 0.86


def test_search_smoke():
    res = pv.two_qubit_cheat_search([math.pi / 2], 2, 9)
    assert res.best_success > 1 - 1e-6
    assert res.resource_dim == 2
