import itertools

import pytest

from conftest import naive_z2_abcd_ball
from hnnkit.cayley import (
    BallCapError,
    OutOfBallError,
    build_ball,
    distance,
    export_ball,
    geodesics_of,
    is_geodesic,
)
from hnnkit.words import format_word, parse_word


def test_sphere_sizes_examples(z2_abcd, wise):
    ball = build_ball(z2_abcd, 1)
    assert ball.sphere_sizes == [1, 8]
    ball0 = build_ball(z2_abcd, 0)
    assert ball0.sphere_sizes == [1]
    wball = build_ball(wise, 1)
    assert wball.sphere_sizes == [1, 12]


def test_wise_generators_pairwise_distinct(wise):
    # the 12 signed generators give 12 distinct normal forms
    nfs = set()
    for lid in range(wise.alphabet.n_letters):
        nfs.add(wise.apply_letter(wise.identity_key(), lid))
    assert len(nfs) == 12


def test_distances_against_naive_bfs(z2_abcd, z2_abcd_ball9):
    naive = naive_z2_abcd_ball(9)
    p = lambda s: parse_word(z2_abcd.alphabet, s)
    for x, y in itertools.product(range(-4, 5), repeat=2):
        text = ("a" if x >= 0 else "a'") * abs(x) + ("b" if y >= 0 else "b'") * abs(y)
        key = z2_abcd.evaluate(p(text))
        assert z2_abcd_ball9.distance_of_key(key) == naive[(x, y)]


def test_sphere_additivity(z2_abcd_ball9, g2_ball7):
    for ball in (z2_abcd_ball9, g2_ball7):
        assert sum(ball.sphere_sizes) == len(ball)


def test_predecessor_completeness(z2_abcd, z2_abcd_ball9):
    ball = z2_abcd_ball9
    for eid in range(len(ball)):
        if ball.dist[eid] >= 3:
            continue
        expected = set()
        for lid in range(z2_abcd.alphabet.n_letters):
            k2 = z2_abcd.apply_letter(ball.keys[eid], lid)
            tid = ball.ids[k2]
            if ball.dist[tid] == ball.dist[eid] - 1:
                expected.add((tid, lid ^ 1))
        assert set(ball.preds[eid]) == expected


def test_distance_queries(wise, z2_abcd, z2_abcd_ball9):
    wball = build_ball(wise, 3)
    p = lambda s: parse_word(wise.alphabet, s)
    ka = wise.evaluate(p("a"))
    ident = wise.identity_key()
    assert distance(wball, ident, ka) == 1
    assert distance(wball, ka, ka) == 0
    # d(a, d) in the base: a^-1 d = b + c, two letters, and no single letter hits it
    naive = naive_z2_abcd_ball(4)
    assert naive[(1, 2)] == 2
    q = lambda s: parse_word(z2_abcd.alphabet, s)
    assert (
        distance(z2_abcd_ball9, z2_abcd.evaluate(q("a")), z2_abcd.evaluate(q("d"))) == 2
    )
    # d(s, t) in the Wise group: s^-1 t is Britton-reduced with two stable letters
    ks, kt = wise.evaluate(p("s")), wise.evaluate(p("t"))
    assert distance(wball, ks, kt) == 2
    assert distance(wball, ks, kt) == distance(wball, kt, ks)


def test_distance_symmetry_random(z2_abcd, z2_abcd_ball9):
    import random

    rng = random.Random(15)
    keys = z2_abcd_ball9.keys
    inner = [k for k, d in zip(keys, z2_abcd_ball9.dist) if d <= 4]
    for _ in range(100):
        x, y = rng.choice(inner), rng.choice(inner)
        assert distance(z2_abcd_ball9, x, y) == distance(z2_abcd_ball9, y, x)
        assert distance(z2_abcd_ball9, x, x) == 0


def test_out_of_ball_error(z2_abcd):
    ball = build_ball(z2_abcd, 2)
    p = lambda s: parse_word(z2_abcd.alphabet, s)
    far = z2_abcd.evaluate(p("a" * 9))
    with pytest.raises(OutOfBallError):
        ball.distance_of_key(far)


def test_is_geodesic_and_geodesics_of(z2_abcd, z2_abcd_ball9):
    ball = z2_abcd_ball9
    p = lambda s: parse_word(z2_abcd.alphabet, s)
    assert not is_geodesic(ball, p("cc"))  # d is shorter
    assert is_geodesic(ball, p("d"))
    geos = geodesics_of(ball, z2_abcd.evaluate(p("c")))
    assert [format_word(g) for g in geos] == ["c"]
    for n in range(1, 6):
        for gen in ("a", "b", "d"):
            geos = geodesics_of(ball, z2_abcd.evaluate(p(gen * n)))
            assert [format_word(g) for g in geos] == [gen * n]


def test_geodesics_shortlex_order_and_count(z2_ab, z2_ab_ball9):
    p = lambda s: parse_word(z2_ab.alphabet, s)
    key = z2_ab.evaluate(p("aabb"))
    geos = geodesics_of(z2_ab_ball9, key)
    assert len(geos) == 6  # (4 choose 2) orderings of aabb
    texts = [format_word(g) for g in geos]
    assert texts == sorted(texts, key=lambda t: (len(t), t))
    assert z2_ab_ball9.geodesic_count(z2_ab_ball9.id_of(key)) == 6


def test_export_examples(z2_ab, wise):
    ball0 = build_ball(z2_ab, 0)
    dot = export_ball(ball0, "dot").decode()
    assert dot.count("->") == 0
    assert dot.count("label=") == 1
    ball1 = build_ball(z2_ab, 1)
    dot = export_ball(ball1, "dot").decode()
    assert dot.count('[label="') - dot.count("->") == 5  # 5 vertices
    assert dot.count("->") == 8  # 8 directed edge records
    wball = build_ball(wise, 2)
    csv_rows = export_ball(wball, "csv").decode().strip().splitlines()
    assert len(csv_rows) == 1 + 1 + 12 + wball.sphere_sizes[2]


def test_export_determinism(z2_abcd):
    b1 = build_ball(z2_abcd, 4)
    b2 = build_ball(z2_abcd, 4)
    for fmt in ("dot", "json", "csv"):
        assert export_ball(b1, fmt) == export_ball(b2, fmt)


def test_mem_cap(z2_abcd):
    with pytest.raises(BallCapError) as err:
        build_ball(z2_abcd, 9, mem_cap=50)
    assert err.value.cap_elements == 50
    assert 0 <= err.value.radius_reached < 9


def test_base_embeds_isometrically_in_extension(wise, z2_abcd):
    wball = build_ball(wise, 5)
    zball = build_ball(z2_abcd, 5)
    for key, eid in zball.ids.items():
        ext = (key,)
        assert ext in wball.ids
        assert wball.dist[wball.ids[ext]] == zball.dist[eid]
