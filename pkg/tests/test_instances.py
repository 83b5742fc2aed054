"""Generators and the instance file format."""

from __future__ import annotations

import pytest

from partition_ais import (
    GStarParams,
    Instance,
    InstanceFormatError,
    ParameterError,
    gen_g_star,
    gen_p_star,
    gen_uniform,
    read_instance,
    write_instance,
)


def test_gstar_n8_exact_values():
    inst = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4)))
    assert inst.p == (39, 39, 11, 11, 11, 11, 11, 11)
    assert inst.W == 144
    assert inst.meta.family == "gstar"
    assert inst.meta.s == 2
    assert inst.meta.eps == (1, 4)
    assert inst.meta.scale == 1


def test_gstar_n12_exact_values():
    inst = gen_g_star(GStarParams(n=12, s=2, eps=(1, 4)))
    assert inst.p == (65, 65) + (11,) * 10
    assert inst.W == 240


def test_gstar_scale_multiplies_all_times():
    base = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4)))
    scaled = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4), scale=3))
    assert scaled.p == tuple(3 * t for t in base.p)
    assert scaled.W == 3 * base.W


def test_gstar_eps_is_reduced():
    a = gen_g_star(GStarParams(n=8, s=2, eps=(2, 8)))
    b = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4)))
    assert a == b
    assert a.meta.eps == (1, 4)


def test_pstar_is_gstar_with_two_heavies():
    for n, eps, scale in [(8, (1, 4), 1), (16, (1, 8), 1), (12, (1, 4), 5)]:
        assert gen_p_star(n, eps, scale) == gen_g_star(
            GStarParams(n=n, s=2, eps=eps, scale=scale)
        )


def test_gstar_parameter_validation():
    with pytest.raises(ParameterError, match="even number of jobs"):
        GStarParams(n=9, s=2, eps=(1, 4))
    with pytest.raises(ParameterError, match="even number of heavy"):
        GStarParams(n=8, s=3, eps=(1, 4))
    with pytest.raises(ParameterError):
        GStarParams(n=8, s=0, eps=(1, 4))
    with pytest.raises(ParameterError, match="smaller than n"):
        GStarParams(n=4, s=4, eps=(1, 8))
    with pytest.raises(ParameterError, match="strictly below"):
        GStarParams(n=8, s=2, eps=(1, 3))
    with pytest.raises(ParameterError):
        GStarParams(n=8, s=2, eps=(0, 4))
    with pytest.raises(ParameterError):
        GStarParams(n=8, s=2, eps=(1, 4), scale=0)


def test_gstar_rejects_degenerate_weights():
    # with too few light jobs per heavy one the "heavy" weight drops below
    # the "light" weight and the family loses its structure
    with pytest.raises(ParameterError, match="increase n or decrease s"):
        gen_g_star(GStarParams(n=6, s=4, eps=(1, 8)))


def test_uniform_generator_shape_and_determinism():
    a = gen_uniform(10, 100, seed=42)
    b = gen_uniform(10, 100, seed=42)
    c = gen_uniform(10, 100, seed=43)
    assert a == b
    assert a != c
    assert a.n == 10
    assert all(1 <= t <= 100 for t in a.p)
    assert all(x >= y for x, y in zip(a.p, a.p[1:]))
    assert a.meta.family == "uniform"


def test_uniform_generator_validation():
    with pytest.raises(ParameterError):
        gen_uniform(1, 100, seed=0)
    with pytest.raises(ParameterError):
        gen_uniform(5, 0, seed=0)


def test_write_then_read_round_trip_gstar(tmp_path):
    inst = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4), scale=2))
    path = tmp_path / "g.txt"
    write_instance(inst, str(path))
    back = read_instance(str(path))
    assert back == inst


def test_written_gstar_file_bytes(tmp_path):
    inst = gen_g_star(GStarParams(n=8, s=2, eps=(1, 4)))
    path = tmp_path / "g.txt"
    write_instance(inst, str(path))
    expected = (
        "partition v1\nn=8\nmeta=gstar;s=2;eps=1/4;scale=1\n"
        "39\n39\n11\n11\n11\n11\n11\n11\n"
    )
    assert path.read_bytes().decode("utf-8") == expected


def test_round_trip_uniform_and_custom(tmp_path):
    uni = gen_uniform(6, 50, seed=1)
    path = tmp_path / "u.txt"
    write_instance(uni, str(path))
    assert read_instance(str(path)) == uni

    custom = Instance(p=(9, 4, 4, 1))
    path2 = tmp_path / "c.txt"
    write_instance(custom, str(path2))
    text = path2.read_text(encoding="utf-8")
    assert "meta" not in text
    assert read_instance(str(path2)) == custom


def test_read_resorts_and_flags_unsorted_input(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("partition v1\nn=3\n2\n5\n3\n", encoding="utf-8")
    inst = read_instance(str(path))
    assert inst.p == (5, 3, 2)
    assert inst.meta.resorted is True


def test_read_errors_carry_line_numbers(tmp_path):
    cases = [
        ("wrong header\nn=1\n5\n", "line 1"),
        ("partition v1\nnope\n5\n", "line 2"),
        ("partition v1\nn=2\n5\nx\n", "line 4"),
        ("partition v1\nn=2\n5\n", "line 4"),
        ("partition v1\nn=2\n5\n0\n", "line 4"),
        ("partition v1\nn=2\nmeta=gstar;s=x\n5\n4\n", "line 3"),
    ]
    for i, (content, fragment) in enumerate(cases):
        path = tmp_path / f"bad{i}.txt"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(InstanceFormatError, match=fragment):
            read_instance(str(path))


def test_read_rejects_extra_values(tmp_path):
    path = tmp_path / "extra.txt"
    path.write_text("partition v1\nn=2\n5\n4\n3\n", encoding="utf-8")
    with pytest.raises(InstanceFormatError):
        read_instance(str(path))


def test_read_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        read_instance(str(tmp_path / "absent.txt"))
