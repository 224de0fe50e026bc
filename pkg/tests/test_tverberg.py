import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from stabletverberg.complex import make_complex, simplex
from stabletverberg.errors import DegenerateInputError, DomainError
from stabletverberg.families import cyclic_stable_extendable
from stabletverberg.geometry import PointConfiguration, random_configuration
from stabletverberg.tverberg import (
    ColorConstraint,
    birch_certificate,
    colorful_conjecture_search,
    common_point,
    equal_coefficient_search,
    interval_common_point,
    no_tverberg_partition,
    optimality_witness,
    set_partitions,
    shift_incidences,
    shift_to_avoid,
    sigma_constrained_cover,
    triple_partitions,
    tverberg_partition,
)

from oracles import interval_partition_exists, separated_by_line


def cfg(points):
    return PointConfiguration.of(points)


def test_square_radon_partition_is_diagonals():
    config = cfg([(0, 0), (1, 0), (1, 1), (0, 1)])
    cert = tverberg_partition(config, 2)
    assert cert.verify(config)
    assert sorted(cert.parts) == [(0, 2), (1, 3)]
    assert cert.point == (F(1, 2), F(1, 2))


def test_radon_point_inside_triangle():
    config = cfg([(0, 0), (4, 0), (0, 4), (1, 1)])
    cert = tverberg_partition(config, 2)
    assert cert.verify(config) and cert.point == (1, 1)
    assert {len(p) for p in cert.parts} == {1, 3}


def test_line_examples():
    config = cfg([(0,), (1,), (2,), (3,)])
    cert = tverberg_partition(config, 2)
    assert cert.verify(config)
    config = cfg([(x,) for x in range(6)])
    assert tverberg_partition(config, 3).verify(config)


def test_set_partition_count():
    # Stirling numbers of the second kind
    assert sum(1 for _ in set_partitions(4, 2)) == 7
    assert sum(1 for _ in set_partitions(6, 3)) == 90
    assert sum(1 for _ in set_partitions(5, 5)) == 1
    assert sum(1 for _ in set_partitions(3, 4)) == 0


def test_infeasibility_certificate_and_separator():
    config = cfg([(0, 0), (1, 0), (5, 5), (6, 5)])
    res = common_point([(0, 1), (2, 3)], config)
    assert not res and res.verify()
    w, hi, lo = res.separating_functional()
    assert hi < lo
    assert all(sum(a * b for a, b in zip(w, config[i])) <= hi for i in (0, 1))
    assert all(sum(a * b for a, b in zip(w, config[i])) >= lo for i in (2, 3))


def test_common_point_agrees_with_separation_oracle():
    rng = random.Random(5)
    for _ in range(80):
        config = random_configuration(6, 2, rng)
        idx = list(range(6))
        rng.shuffle(idx)
        k = rng.randint(1, 5)
        A, B = tuple(idx[:k]), tuple(idx[k:])
        res = common_point([A, B], config)
        sep = separated_by_line([config[i] for i in A], [config[i] for i in B])
        assert bool(res) == (not sep)
        if res:
            assert res.verify(config)
        else:
            assert res.verify()


def test_interval_test_agrees_with_oracle_and_lp():
    rng = random.Random(9)
    partitions = list(set_partitions(6, 3))
    for _ in range(60):
        config = random_configuration(6, 1, rng)
        parts = rng.choice(partitions)
        xs = [pt[0] for pt in config.points]
        expect = interval_partition_exists(xs, parts)
        assert interval_common_point(parts, config) == expect
        assert bool(common_point(parts, config)) == expect


def test_no_partition_below_threshold_line():
    # (q-1)(d+1) = 2 points on a line never split into two meeting parts
    assert no_tverberg_partition(cfg([(0,), (1,)]), 2) == (True, None)
    ok, parts = no_tverberg_partition(cfg([(0,), (1,), (2,)]), 2)
    assert not ok and parts is not None


@pytest.mark.parametrize("q,d", [(2, 1), (2, 2), (3, 1)])
def test_optimality_witness(q, d):
    w = optimality_witness(q, d, seed=1)
    assert len(w) == (q - 1) * (d + 1)
    assert no_tverberg_partition(w, q)[0]


def test_witness_limit():
    with pytest.raises(DomainError):
        optimality_witness(5, 3)


def test_rainbow_constraint_respected():
    config = cfg([(x,) for x in range(6)])
    colors = ColorConstraint.of([(0, 1), (2, 3)], "rainbow")
    cert = tverberg_partition(config, 2, colors)
    assert cert.verify(config, colors=colors)
    for part in cert.parts:
        assert not {0, 1} <= set(part) and not {2, 3} <= set(part)


def test_rainbow_verification_rejects_violations():
    config = cfg([(0,), (1,), (2,), (3,)])
    cert = common_point([(0, 3), (1, 2)], config)
    assert cert.verify(config)
    assert not cert.verify(config, colors=ColorConstraint.of([(0, 3)]))
    assert cert.verify(config, colors=ColorConstraint.of([(0, 1)]))


def test_colour_classes_must_be_disjoint():
    with pytest.raises(DomainError):
        ColorConstraint.of([(0, 1), (1, 2)])
    with pytest.raises(DomainError):
        ColorConstraint.of([(0,)], "plaid")


def test_colorful_search_reports():
    config = cfg([(0,), (1,), (2,), (3,)])
    rep = colorful_conjecture_search(config, 2, ColorConstraint.of([(0, 1)]))
    assert rep["found"] and rep["certificate"]["parts"]


def test_equal_coefficient_certificate():
    rng = random.Random(2)
    config = random_configuration(12, 1, rng)
    colors = ColorConstraint.of([range(0, 3), range(3, 6), range(6, 9), range(9, 12)], "equal")
    cert = equal_coefficient_search(config, 2, colors)
    assert cert is not None and cert.verify(config, colors=colors)


def test_disjointness_checked():
    config = cfg([(0,), (1,)])
    cert = common_point([(0, 1), (0, 1)], config)
    assert cert.verify(config, disjoint=False)
    assert not cert.verify(config)


def test_sigma_cover_full_simplex():
    # with the full simplex as constraint every point may lie in every face
    config = cfg([(0,), (1,)])
    sigma = simplex((1, 2, 3))
    cover = sigma_constrained_cover(config, sigma, 3)
    assert cover is not None and cover.verify(config, sigma)


def test_sigma_cover_cycle_complex():
    config = random_configuration(6, 1, random.Random(3))
    sigma = cyclic_stable_extendable(7, 2, 2)
    cover = sigma_constrained_cover(config, sigma, 7)
    if cover is not None:
        assert cover.verify(config, sigma)


def test_sigma_cover_requires_invariance():
    path = make_complex([(1, 3)], universe=range(1, 4))
    with pytest.raises(DomainError):
        sigma_constrained_cover(cfg([(0,)]), path, 3)


def test_shift_examples():
    sigma = cyclic_stable_extendable(7, 2, 2)
    assert shift_to_avoid((1, 2), (), sigma, 7) == 0
    assert shift_to_avoid((1, 2), (1, 4), sigma, 7) == 1
    assert shift_to_avoid((1, 2), (2, 4, 6), sigma, 7) == 6
    assert shift_to_avoid((1, 2), (3, 6), sigma, 7) == 0
    assert len(shift_incidences((1, 2), (1, 4), 7)) == 4


def test_shift_preconditions():
    sigma = cyclic_stable_extendable(7, 2, 2)
    with pytest.raises(DomainError, match="independent"):
        shift_to_avoid((1, 3), (2,), sigma, 7)
    with pytest.raises(DomainError, match="not a face"):
        shift_to_avoid((1, 2), (1, 2), sigma, 7)
    sigma8 = make_complex([(i,) for i in range(1, 9)], universe=range(1, 9))
    with pytest.raises(DomainError, match="not prime"):
        shift_to_avoid((1,), (1,), sigma8, 8)


@pytest.mark.parametrize("p,q,a", [(7, 2, 2), (11, 2, 4), (13, 3, 3), (11, 5, 1)])
def test_shift_exhaustive_small(p, q, a):
    sigma = cyclic_stable_extendable(p, q, a)
    I = tuple(range(1, q + 1))
    for face in sigma.all_faces():
        m = shift_to_avoid(I, face, sigma, p)
        assert set(face).isdisjoint((i - 1 + m) % p + 1 for i in I)
        assert all(not set(face).isdisjoint((i - 1 + s) % p + 1 for i in I) for s in range(m))


def test_triple_partitions_count():
    assert sum(1 for _ in triple_partitions(6)) == 10
    assert sum(1 for _ in triple_partitions(9)) == 280


def test_birch_nested_triangles():
    config = cfg([(0, 0), (10, 0), (0, 10), (1, 1), (4, 1), (1, 4)])
    cert = birch_certificate(config, 2)
    assert cert is not None and cert.verify(config) and cert.margin > 0


def test_birch_convex_hexagon():
    hexagon = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
    config = cfg(hexagon)
    cert = birch_certificate(config, 2)
    assert cert.verify(config)


def test_birch_input_errors():
    with pytest.raises(DegenerateInputError):
        birch_certificate(cfg([(x, 2 * x) for x in range(6)]), 2)
    with pytest.raises(DomainError):
        birch_certificate(cfg([(0, 0)] * 5), 2)
    with pytest.raises(DomainError):
        birch_certificate(cfg([(x,) for x in range(6)]), 2)


def test_birch_certificate_checks_strict_interior():
    config = cfg([(0, 0), (10, 0), (0, 10), (1, 1), (4, 1), (1, 4)])
    cert = birch_certificate(config, 2)
    moved = type(cert)(cert.triangles, (F(100), F(100)))
    assert not moved.verify(config)
    # all triangles must be disjoint
    for t, u in combinations(cert.triangles, 2):
        assert not set(t) & set(u)
