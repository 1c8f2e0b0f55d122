import random

import pytest

from caexp import configio, engine, presets, render
from caexp.config import Configuration, random_config
from caexp.errors import ResourceLimitError, UsageError
from caexp.lattice import Z, Z2
from caexp.rules import LinearRule, identity_rule


def spot(lat, q, state=1, site=None):
    return Configuration.spot(lat, q, state, site)


def test_linear_step_spreads_spot():
    out = engine.step(presets.f3(), spot(Z, 3))
    assert out.cells == {-1: 1, 1: 1}


def test_quiescent_fixed_point():
    for rule in (presets.f3(), presets.vn2(), presets.mult(3, 2),
                 presets.psi(), presets.layered(2)):
        zero = Configuration.zero(rule.lattice, rule.q)
        assert engine.step(rule, zero) == zero


def test_mult_composition_is_shift():
    rng = random.Random(7)
    m32, m23 = presets.mult(3, 2), presets.mult(2, 3)
    for _ in range(25):
        c = random_config(Z, 6, rng, radius=8, max_cells=6)
        assert engine.step(m32, engine.step(m23, c)) == c.shift(1)
        assert engine.step(m23, engine.step(m32, c)) == c.shift(1)


def test_shift_convention_pinned():
    # a spot at s seen through offset v contributes at s - v
    rule = LinearRule(Z, 7, {3: 2})
    out = engine.step(rule, spot(Z, 7, 1, 10))
    assert out.cells == {7: 2}
    rule2 = LinearRule(Z2, 5, {(1, -2): 1})
    out2 = engine.step(rule2, spot(Z2, 5, 1, (0, 0)))
    assert out2.cells == {(-1, 2): 1}


def test_iterate_zero_steps():
    c = spot(Z, 3)
    assert engine.iterate(presets.f3(), c, 0) == c


def test_iterate_vn_lucas_support():
    out = engine.iterate(presets.vn2(), spot(Z2, 2), 2)
    assert sorted(out.cells) == [(-2, 0), (0, -2), (0, 0), (0, 2), (2, 0)]


def test_iterate_resource_limit():
    with pytest.raises(ResourceLimitError) as err:
        engine.iterate(presets.vn2(), spot(Z2, 2), 10, max_cells=6)
    assert err.value.last_completed is not None


def test_trace_of_zero_config():
    tr = engine.trace(presets.f3(), Configuration.zero(Z, 3), 2, 10)
    assert tr.is_null()


def test_trace_vn_origin_prefix():
    tr = engine.trace(presets.vn2(), spot(Z2, 2), 0, 1)
    assert tr.patterns == ((1,), (1,))


def test_trace_triangular_spot_null_window():
    c = spot(Z2, 2, 1, (0, 36))
    tr = engine.trace(presets.tri2(), c, 2, 64)
    assert tr.is_null()


def test_trace_consistency_with_iterate():
    rng = random.Random(3)
    rule = presets.upsilon()
    for _ in range(20):
        c = random_config(Z, 4, rng, radius=5, max_cells=4)
        t = rng.randint(0, 8)
        tr = engine.trace(rule, c, 1, t)
        assert tr.patterns[t] == engine.iterate(rule, c, t).restrict(tr.ball)


def test_fronts_f3_spot():
    fr = engine.fronts(presets.f3(), spot(Z, 3), Configuration.zero(Z, 3), 12)
    assert fr.l == [-t for t in range(13)]
    assert fr.r == list(range(13))


def test_fronts_glider():
    from caexp.expansivity import upsilon_glider
    g = upsilon_glider(0, 3)
    fr = engine.fronts(presets.upsilon(), g, Configuration.zero(Z, 4), 10)
    assert fr.l == [-t for t in range(11)]
    assert fr.r == [2 - t for t in range(11)]


def test_fronts_equal_configs_rejected():
    c = spot(Z, 3)
    with pytest.raises(UsageError):
        engine.fronts(presets.f3(), c, c, 5)


def test_fronts_need_z():
    with pytest.raises(UsageError):
        engine.fronts(presets.vn2(), spot(Z2, 2),
                      Configuration.zero(Z2, 2), 4)


def test_product_componentwise():
    f3 = presets.f3()
    prod = engine.product(f3, f3)
    alpha = prod.alphabet
    c = Configuration(Z, 9, {0: alpha.encode(1, 0)})
    out = engine.step(prod, c)
    assert out.cells == {-1: alpha.encode(1, 0), 1: alpha.encode(1, 0)}

    ident = identity_rule(Z, 3)
    prod2 = engine.product(ident, f3)
    c2 = Configuration(Z, 9, {0: prod2.alphabet.encode(2, 1)})
    out2 = engine.step(prod2, c2)
    assert out2.cells == {0: prod2.alphabet.encode(2, 0),
                          -1: prod2.alphabet.encode(0, 1),
                          1: prod2.alphabet.encode(0, 1)}
    assert prod.radius == max(f3.radius, ident.radius)


def test_product_collision_transfers():
    # differences confined to one component collide iff that component does
    from caexp.expansivity import _glider
    ups = presets.upsilon()
    f2 = presets.f2()
    prod = engine.product(ups, f2)
    alpha = prod.alphabet
    g = _glider(-6, 3)
    c = Configuration(Z, prod.q, {s: alpha.encode(v, 0) for s, v in g.cells.items()})
    zero = Configuration.zero(Z, prod.q)
    assert engine.traces_equal(prod, c, zero, 1, 40)
    # a difference in the expansive component separates quickly
    d = Configuration(Z, prod.q, {-6: alpha.encode(0, 1)})
    assert not engine.traces_equal(prod, d, zero, 1, 40)


def test_step_rejects_mismatches():
    with pytest.raises(UsageError):
        engine.step(presets.f3(), spot(Z2, 3, 1, (0, 0)))
    with pytest.raises(UsageError):
        engine.step(presets.f3(), spot(Z, 5))


def test_shift_equivariance_quick():
    rng = random.Random(11)
    for rule in (presets.f3(), presets.vn2(), presets.mult(2, 4),
                 presets.psi(), presets.lambda_rule(2)):
        for _ in range(30):
            c = random_config(rule.lattice, rule.q, rng, radius=3, max_cells=4)
            z = rng.choice(rule.lattice.origin_ball(2))
            assert engine.step(rule, c.shift(z)) == engine.step(rule, c).shift(z)


def test_linearity_quick():
    rng = random.Random(12)
    for rule in (presets.f3(), presets.vn2(), presets.upsilon()):
        for _ in range(30):
            c = random_config(rule.lattice, rule.q, rng, radius=3, max_cells=4)
            d = random_config(rule.lattice, rule.q, rng, radius=3, max_cells=4)
            lhs = engine.step(rule, c.add(d, rule.alphabet))
            rhs = engine.step(rule, c).add(engine.step(rule, d), rule.alphabet)
            assert lhs == rhs


def test_table_rule_must_fix_quiescent():
    from caexp.rules import TableRule
    with pytest.raises(UsageError):
        TableRule(Z, 2, (0,), {(0,): 1, (1,): 0})


# --- configuration file format --------------------------------------------

def test_config_roundtrip(tmp_path):
    rng = random.Random(5)
    for lat, q in ((Z, 4), (Z2, 2), (presets.lambda_rule(2).lattice, 2)):
        c = random_config(lat, q, rng, radius=3, max_cells=5)
        path = tmp_path / "c.cfg"
        configio.save(c, path)
        assert configio.load(path) == c


def test_config_format_details():
    text = "lattice=z2 q=2 quiescent=0\n3,-2\t1\n"
    c = configio.loads(text)
    assert c.cells == {(3, -2): 1}
    assert configio.dumps(c) == text
    with pytest.raises(UsageError):
        configio.loads("lattice=z2 q=2 quiescent=1\n")
    with pytest.raises(UsageError):
        configio.loads("lattice=z2 q=2 quiescent=0\n3,-2 1\n")


# --- rendering --------------------------------------------------------------

def test_render_zero_uniform():
    img = render.render_strip(presets.f3(), Configuration.zero(Z, 3), 5, 4)
    assert img.shape == (5, 11)
    assert not img.any()


def test_render_deterministic(tmp_path):
    c = spot(Z, 9, 3)  # psi state (1,0)
    one = render.render_spacetime(presets.psi(), c, 20, 20)
    two = render.render_spacetime(presets.psi(), c, 20, 20)
    assert isinstance(one, bytes) and one == two


def test_render_free_group_rejected():
    lam = presets.lambda_rule(2)
    c = Configuration.spot(lam.lattice, 2, 1)
    with pytest.raises(UsageError):
        render.render_spacetime(lam, c, 3, 3)


def test_psi_orbit_first_steps_exact():
    """First six steps of the spot-(1,0) orbit, worked out by hand."""
    rule = presets.psi()
    enc = rule.alphabet.encode
    expected = [
        {0: (1, 0)},
        {0: (0, 1)},
        {-1: (0, 1), 0: (1, 0), 1: (0, 1)},
        {-2: (0, 1), -1: (1, 0), 1: (1, 0), 2: (0, 1)},
        {-3: (0, 1), -2: (1, 0), -1: (0, 2), 1: (0, 2), 2: (1, 0), 3: (0, 1)},
        {-4: (0, 1), -3: (1, 0), -2: (0, 1), -1: (2, 0), 0: (0, 1),
         1: (2, 0), 2: (0, 1), 3: (1, 0), 4: (0, 1)},
    ]
    cur = Configuration(Z, 9, {0: enc(1, 0)})
    for t, pattern in enumerate(expected):
        want = {s: enc(a, b) for s, (a, b) in pattern.items()}
        assert cur.cells == want, f"t={t}"
        cur = engine.step(rule, cur)


def test_bitgrid_matches_sparse_on_random_mod2_rules():
    from caexp import bitgrid
    rng = random.Random(19)
    for _ in range(10):
        n_off = rng.randint(2, 5)
        offsets = set()
        while len(offsets) < n_off:
            offsets.add((rng.randint(-2, 2), rng.randint(-2, 2)))
        offsets = tuple(sorted(offsets))
        rule = LinearRule(Z2, 2, {v: 1 for v in offsets})
        c = random_config(Z2, 2, rng, radius=3, max_cells=4)
        t_max = 12
        ball = Z2.origin_ball(2)
        series = bitgrid.simulate_series(offsets, sorted(c.cells), t_max, ball)
        tr = engine.trace(rule, c, 2, t_max)
        assert [tuple(int(x) for x in series[t]) for t in range(t_max + 1)] \
            == list(tr.patterns)


def test_dense1d_matches_sparse():
    from caexp import dense1d
    rng = random.Random(20)
    rule = LinearRule(Z, 5, {-2: 3, 0: 1, 1: 4})
    for _ in range(10):
        c = random_config(Z, 5, rng, radius=4, max_cells=4)
        x0, rows = dense1d.orbit_linear(rule, c, 8)
        cur = c
        for t in range(9):
            if t > 0:
                cur = engine.step(rule, cur)
            assert dense1d.row_to_config(rule, x0, rows[t]) == cur
    so = presets.upsilon()
    for _ in range(10):
        c = random_config(Z, 4, rng, radius=4, max_cells=4)
        x0, a, b = dense1d.orbit_second_order(so, c, 8)
        cur = c
        for t in range(9):
            if t > 0:
                cur = engine.step(so, cur)
            assert dense1d.pair_rows_to_config(so, x0, a[t], b[t]) == cur


def test_lr_permutivity():
    from caexp.rules import is_lr_permutive
    assert is_lr_permutive(presets.f2())
    assert is_lr_permutive(presets.f3())
    # non-unit boundary coefficient breaks the left permutation
    assert not is_lr_permutive(LinearRule(Z, 4, {-1: 2, 1: 1}))
    # the reversible wrapper is not permutive on the pair alphabet
    assert not is_lr_permutive(presets.psi())
    with pytest.raises(UsageError):
        is_lr_permutive(presets.mult(3, 2))   # one-sided neighborhood
    with pytest.raises(UsageError):
        is_lr_permutive(presets.vn2())


def test_front_escape_tracks_expansivity():
    # permutive rule: one-sided differences run off both ways; the nilpotent
    # doubling rule loses its differences instead
    f3 = presets.f3()
    c = Configuration.spot(Z, 3, 1, 5)
    fr = engine.fronts(f3, c, Configuration.zero(Z, 3), 25)
    assert fr.l[25] == 5 - 25 and fr.r[25] == 5 + 25
    dbl = LinearRule(Z, 4, {1: 2})
    fr2 = engine.fronts(dbl, Configuration.spot(Z, 4, 1, 5),
                        Configuration.zero(Z, 4), 6)
    assert fr2.l[0] == 5 and fr2.l[2] is None
