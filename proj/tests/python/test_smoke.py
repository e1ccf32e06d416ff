import brauerkit
import pytest


def test_hilbert_table():
    got = [brauerkit.hilbert_symbol(5, 17, v) for v in ("2", "5", "17", "inf")]
    assert got == [1, -1, -1, 1]


def test_places_and_isotropy():
    assert brauerkit.anisotropic_places([1, 1, 1]) == ["2", "inf"]
    assert brauerkit.anisotropic_places(["1", "-5", "-17"]) == ["5", "17"]
    assert brauerkit.is_isotropic_local([1, 1, 1, 7], "2")


def test_cohomology():
    assert brauerkit.h1_invariant_factors("sl2", 3) == []
    assert brauerkit.h1_invariant_factors("sl2plus", 4) != []
    with pytest.raises(brauerkit.GroupCapExceeded):
        brauerkit.h1_invariant_factors("gl2", 16, cap=100)


def test_curve():
    assert brauerkit.count_points("[0,1,1,-12,-21]", 5) == (4, 2)
    assert brauerkit.mod2_image_full("[0,1,1,-12,-21]")


def test_pipeline_and_recheck():
    report = brauerkit.run_pipeline("threefold-padic")
    assert report["schema"] == 1
    assert report["overall"] == "pass"
    assert all(row["ok"] for row in brauerkit.recheck(report))
    altered = brauerkit.run_pipeline("threefold-real", {"n": "3"})
    assert altered["overall"] == "fail"


def test_refusal():
    with pytest.raises(brauerkit.PipelineRefused, match="congruent to 1 modulo 8"):
        brauerkit.run_pipeline("surface", {"c": "17"})
