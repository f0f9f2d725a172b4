import json
import os

import pytest

import rainbowcc

DATA = os.environ.get("RAINBOWCC_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_cyclic_scheme_parameters():
    s = rainbowcc.cyclic(4)
    assert (s.K, s.F, s.m) == (4, 4, 3)
    assert s.rate == "3/4"
    assert s.cache_fraction == "1/2"
    assert s.color_at(0, 0) is None


def test_exhaustive_simulation_decodes():
    report = rainbowcc.simulate(rainbowcc.cyclic(4), 3, policy="exhaustive", packet_size=8)
    assert report["demand_count"] == 81
    assert report["all_pass"]
    assert report["realized_rate"] == "3/4"


def test_man_matches_closed_form():
    s = rainbowcc.man(5, 2)
    assert s.num_colors == 10
    assert rainbowcc.man_rate(5, "2/5") == "1"


def test_four_node_shuffle():
    plan = rainbowcc.mapreduce(rainbowcc.cyclic(4))
    assert plan["m_prime"] == 4
    assert plan["L"] == "1/4"
    assert plan["cdc_bound"] == "1/4"
    assert plan["reduce"]["pass"]
    assert sorted(msg["sender"] for msg in plan["messages"]) == [1, 2, 3, 4]


def test_k4_rainbow_scheme():
    with open(os.path.join(DATA, "ap_m4.json")) as fh:
        ap = json.load(fh)
    s = rainbowcc.rainbow_3ap(ap)
    assert (s.K, s.F, s.num_colors) == (4, 4, 6)
    found = rainbowcc.search_rainbow(4, strategy="exact")
    assert found["n"] == 8 and found["strict_rainbow"]


def test_scheme_json_round_trip():
    s = rainbowcc.union_subsets(5, 1, 2, field="GF256")
    back = rainbowcc.Scheme.from_json(s.to_json())
    assert back.to_json() == s.to_json()


def test_errors_carry_codes():
    with pytest.raises(rainbowcc.RainbowError) as info:
        rainbowcc.man(4, 4)
    assert info.value.code == "RANGE"
    with open(os.path.join(DATA, "bad.pda")) as fh:
        text = fh.read()
    with pytest.raises(rainbowcc.RainbowError) as info:
        rainbowcc.pda_import(text)
    assert info.value.code == "PDA_INVALID"


def test_field_helpers():
    assert rainbowcc.gf_mul(2, 128) == 0x1D
    assert rainbowcc.verify_mds(rainbowcc.mds_matrix(3, 6))
    assert rainbowcc.cdc_bound("2", 4) == "1/4"
    assert rainbowcc.cutset_bound(4, 4, "2") == "1/2"
