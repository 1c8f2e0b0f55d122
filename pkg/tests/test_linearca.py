import random

import pytest

from caexp import bitgrid, engine, linearca, presets
from caexp.config import Configuration, random_config
from caexp.errors import UsageError
from caexp.lattice import Z, Z2
from caexp.rules import LinearRule
from caexp.z2subst import exact_trace_null


def test_lucas_vn_k1():
    coeffs = linearca.lucas_power_coeffs(presets.vn2(), 1)
    assert coeffs == {(0, 0): 1, (0, 2): 1, (2, 0): 1, (0, -2): 1, (-2, 0): 1}


def test_lucas_f3_k2():
    coeffs = linearca.lucas_power_coeffs(presets.f3(), 2)
    assert coeffs == {9: 1, -9: 1}


def test_lucas_k0_is_identity():
    rule = presets.tri2()
    assert linearca.lucas_power_coeffs(rule, 0) == rule.coeffs


def test_lucas_requires_prime():
    rule = LinearRule(Z, 6, {-1: 1, 1: 1})
    with pytest.raises(UsageError):
        linearca.lucas_power_coeffs(rule, 1)


def test_lucas_spread_matches_iterate():
    # one application of the spread rule equals p^k plain steps on a spot
    for rule, lat in ((presets.vn2(), Z2), (presets.f3(), Z)):
        spotc = Configuration.spot(lat, rule.m, 1)
        for k in (1, 2, 3, 4):
            spread = linearca.spread_rule(rule, k)
            assert engine.step(spread, spotc) == \
                engine.iterate(rule, spotc, rule.m ** k)


def test_fast_iterate_zero():
    c = Configuration.spot(Z2, 2, 1)
    assert linearca.fast_iterate(presets.vn2(), c, 0) == c


def test_fast_iterate_agrees_with_iterate():
    rng = random.Random(9)
    vn = presets.vn2()
    for _ in range(30):
        c = random_config(Z2, 2, rng, radius=4, max_cells=4)
        t = rng.randint(0, 32)
        assert linearca.fast_iterate(vn, c, t) == engine.iterate(vn, c, t)


def test_fast_iterate_agrees_with_dense_backend_large_t():
    # large t: compare against the independent bit-packed backend
    rng = random.Random(10)
    vn = presets.vn2()
    for t in (100, 157, 200):
        c = random_config(Z2, 2, rng, radius=3, max_cells=3)
        fast = linearca.fast_iterate(vn, c, t)
        dense = bitgrid.simulate_support(vn.neighborhood, sorted(c.cells), t)
        assert set(fast.cells) == dense


def test_fast_iterate_spot_powers_of_two():
    vn = presets.vn2()
    c = Configuration.spot(Z2, 2, 1)
    for k in (2, 5):
        out = linearca.fast_iterate(vn, c, 2 ** k)
        d = 2 ** k
        assert sorted(out.cells) == sorted(
            [(0, 0), (0, d), (d, 0), (0, -d), (-d, 0)])


def test_crt_decompose_m6():
    rule = LinearRule(Z, 6, {-1: 1, 1: 1})
    parts = linearca.crt_decompose(rule)
    assert [p.m for p in parts] == [2, 3]
    assert all(p.coeffs == {-1: 1, 1: 1} for p in parts)


def test_crt_decompose_prime_power_unchanged():
    rule = LinearRule(Z, 4, {0: 2, 1: 3})
    parts = linearca.crt_decompose(rule)
    assert len(parts) == 1 and parts[0].m == 4
    assert parts[0].coeffs == rule.coeffs


def test_crt_recombination_matches_direct_step():
    rng = random.Random(17)
    rule = LinearRule(Z, 6, {-1: 5, 0: 2, 2: 3})
    parts = linearca.crt_decompose(rule)
    moduli = [p.m for p in parts]
    for _ in range(100):
        c = random_config(Z, 6, rng, radius=6, max_cells=6)
        direct = engine.step(rule, c)
        comps = [engine.step(p, Configuration(
            Z, p.m, {s: v % p.m for s, v in c.cells.items()}))
            for p in parts]
        sites = set()
        for comp in comps:
            sites |= set(comp.cells)
        rebuilt = {}
        for s in sites:
            val = linearca.crt_recombine([comp.get(s) for comp in comps], moduli)
            if val:
                rebuilt[s] = val
        assert rebuilt == direct.cells


def test_amplify_minimal_scale():
    vn = presets.vn2()
    c = Configuration(Z2, 2, {(1, 0): 1, (0, 2): 1})
    out = linearca.amplify(vn, c, 1)   # m_target <= p-1 forces k=1
    assert sorted(out.cells) == [(0, 4), (2, 0)]
    assert len(out) == len(c)


def test_amplify_witness_stays_null():
    from caexp.z2subst import vn_witness
    vn = presets.vn2()
    w = vn_witness(3)           # null T_3 (and T_1, the rule radius)
    out = linearca.amplify(vn, w, 7)
    assert sorted(out.cells) == [(-64, 32), (64, 32)]
    assert exact_trace_null(out, 7)


def test_amplify_rejects_zero():
    with pytest.raises(UsageError):
        linearca.amplify(presets.vn2(), Configuration.zero(Z2, 2), 3)


def test_second_order_spot():
    psi = presets.psi()
    enc = psi.alphabet.encode
    out = engine.step(psi, Configuration(Z, 9, {0: enc(1, 0)}))
    assert out.cells == {0: enc(0, 1)}


def test_second_order_inverse_composition():
    rng = random.Random(23)
    for rule in (presets.psi(), presets.upsilon()):
        inv = linearca.second_order_inverse(rule)
        for _ in range(100):
            c = random_config(Z, rule.q, rng, radius=6, max_cells=6)
            assert engine.step(inv, engine.step(rule, c)) == c
            assert engine.step(rule, engine.step(inv, c)) == c


def test_second_order_inverse_needs_wrapper():
    with pytest.raises(UsageError):
        linearca.second_order_inverse(presets.f3())


def test_layered_flip_resets_last_layer():
    rng = random.Random(29)
    lay = presets.layered(2)
    flip_bit = 1 << lay.k
    for _ in range(30):
        c = random_config(Z, lay.q, rng, radius=5, max_cells=5)
        out = engine.step(lay, c)
        assert all(v & flip_bit == 0 for v in out.cells.values())


def test_layered_flip_acts_as_product_on_clean_configs():
    rng = random.Random(31)
    lay = presets.layered(2)
    f2 = presets.f2()
    for _ in range(30):
        c = random_config(Z, lay.q, rng, radius=5, max_cells=5,
                          states=[1, 2, 3])  # last layer clear
        out = engine.step(lay, c)
        for layer in (0, 1):
            part = Configuration(Z, 2, {s: (v >> layer) & 1
                                        for s, v in c.cells.items()})
            expect = engine.step(f2, part)
            got = {s: (v >> layer) & 1 for s, v in out.cells.items()}
            got = {s: v for s, v in got.items() if v}
            assert got == expect.cells


def test_layered_flip_offset():
    # a lone layer-(k+1) mark flips layer i at z + 3i
    lay = presets.layered(2)
    z = 4
    c = Configuration(Z, lay.q, {z: 1 << lay.k})
    out = engine.step(lay, c)
    assert out.cells == {z + 3: 0b01, z + 6: 0b10}


def test_layered_flip_collision_beyond_k():
    # an explicit (k+2)-difference pair with equal images
    lay = presets.layered(2)
    k = lay.k
    cells = {0: 1 << k, 2: 1 << k}
    for i in range(1, k + 1):
        site = 3 * i + 1
        cells[site] = cells.get(site, 0) | (1 << (i - 1))
    c = Configuration.zero(Z, lay.q)
    d = Configuration(Z, lay.q, cells)
    assert c.diff_count(d) == k + 2
    assert engine.step(lay, c) == engine.step(lay, d)


def test_layered_flip_validation():
    with pytest.raises(UsageError):
        linearca.layered_flip(LinearRule(Z, 2, {-2: 1, 2: 1}), 2)  # radius 2
    with pytest.raises(UsageError):
        linearca.layered_flip(presets.f3(), 2)  # not binary


def test_rule_radius():
    assert presets.f3().radius == 1
    assert presets.vn2().radius == 1
    assert presets.tri2().radius == 2
    assert presets.layered(2).radius == 6   # reads layer k+1 at offset -3k
    assert presets.mult(3, 2).radius == 1


def test_empty_config_size():
    assert Configuration.zero(Z2, 2).size() == 0
