import pytest

from tlk import plotting
from tlk.catalog import garland, make
from tlk.frames import build_frame
from tlk.sequences import gtm
from tlk.umbrella import umbrella


def test_layout_puts_roots_low():
    pos = plotting.layout(garland(2))
    assert pos["1"][1] < pos["0"][1] == pos["2"][1]


@pytest.mark.parametrize(
    "F",
    [garland(3), make("Ct", "+-", 2), umbrella("01").frame, build_frame(["a", "b"], [("a", "b")], "none")],
)
def test_draw_and_save(F, tmp_path):
    path = plotting.save(plotting.draw_frame(F, title="t", highlight=F.points[:1]), tmp_path / "f.png")
    assert (tmp_path / "f.png").stat().st_size > 0 and str(path).endswith("f.png")


def test_bits_and_timings(tmp_path):
    ax = plotting.draw_bits({"a": gtm("0", 1), "b": gtm("00", 2)}, title="bits")
    plotting.save(ax, tmp_path / "b.png")
    report = {"cases": [{"id": 1, "name": "x", "status": "pass", "seconds": 0.5},
                        {"id": 2, "name": "y", "status": "fail", "seconds": 1.5}],
              "suite": "demo", "totals": {"cases": 2, "passed": 1, "failed": 1}}
    plotting.save(plotting.draw_timings(report), tmp_path / "t.png")
    assert (tmp_path / "b.png").exists() and (tmp_path / "t.png").exists()
