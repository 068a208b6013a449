"""Projection, file formats and the command-line interface."""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from desitter.cli import main
from desitter.errors import AtPole, IoError
from desitter.io import (CurveRecord, ProjectionSpec, export_curve,
                         import_curve_csv, stereographic_inverse,
                         stereographic_project)
from desitter.minkowski import lorentz_dot

rng = np.random.default_rng(20240822)


def _random_sphere_point():
    while True:
        x = rng.normal(size=4)
        q = lorentz_dot(x, x)
        if q > 0.1:
            return x / np.sqrt(q)


def _records(n=12):
    out = []
    for i in range(n):
        t = i / 10.0
        x = np.array([np.sinh(t), np.cosh(t) * np.cos(t),
                      np.cosh(t) * np.sin(t), 0.0])
        out.append(CurveRecord(t=t, s=t, point=x, kappa_g=1.0 + t,
                               tau_g=None))
    return out


def test_projection_antipode_of_pole_maps_to_origin():
    spec = ProjectionSpec(pole_axis=2, pole_sign=1)
    y = stereographic_project(np.array([0.0, 1.0, 0.0, 0.0]), spec)
    assert y == (0.0, 0.0, 0.0)


def test_projection_at_pole_raises():
    spec = ProjectionSpec(pole_axis=2, pole_sign=-1)
    with pytest.raises(AtPole):
        stereographic_project(np.array([0.0, 1.0, 0.0, 0.0]), spec)


def test_projection_round_trip_random():
    for axis in (2, 3, 4):
        for sign in (-1, 1):
            spec = ProjectionSpec(pole_axis=axis, pole_sign=sign)
            for _ in range(40):
                x = _random_sphere_point()
                if abs(1.0 + sign * x[axis - 1]) < 1e-3:
                    continue
                y = stereographic_project(x, spec)
                back = stereographic_inverse(np.array(y), spec)
                assert np.max(np.abs(back - x)) < 1e-12 * max(
                    1.0, float(np.max(np.abs(y))) ** 2)


def test_projection_spec_validation():
    with pytest.raises(ValueError):
        ProjectionSpec(pole_axis=1)
    with pytest.raises(ValueError):
        ProjectionSpec(pole_sign=0)


def test_csv_round_trip_lossless(tmp_path):
    path = tmp_path / "curve.csv"
    records = _records()
    export_curve(records, path, "csv")
    back = import_curve_csv(path)
    assert len(back) == len(records)
    for a, b in zip(records, back):
        assert a.t == b.t and a.s == b.s
        assert np.array_equal(a.point, b.point)
        assert a.kappa_g == b.kappa_g
        assert b.tau_g is None


def test_csv_header_and_row_count(tmp_path):
    path = tmp_path / "curve.csv"
    export_curve(_records(3), path, "csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "t,s,x1,x2,x3,x4,kappa_g,tau_g"
    assert len(lines) == 4


def test_empty_exports(tmp_path):
    export_curve([], tmp_path / "e.csv", "csv")
    assert (tmp_path / "e.csv").read_text().splitlines() == [
        "t,s,x1,x2,x3,x4,kappa_g,tau_g"]
    export_curve([], tmp_path / "e.json", "json")
    assert json.loads((tmp_path / "e.json").read_text())["samples"] == []


def test_json_structure(tmp_path):
    path = tmp_path / "curve.json"
    export_curve(_records(5), path, "json", meta={"label": "demo"})
    data = json.loads(path.read_text())
    assert data["meta"] == {"label": "demo"}
    assert len(data["samples"]) == 5
    sample = data["samples"][0]
    assert set(sample) == {"t", "s", "point", "kappa_g", "tau_g"}
    assert len(sample["point"]) == 4


def test_svg_well_formed_and_counts(tmp_path):
    path = tmp_path / "curve.svg"
    records = _records(25)
    export_curve(records, path, "svg")
    root = ET.parse(path).getroot()
    polylines = [el for el in root.iter()
                 if el.tag.endswith("polyline")]
    assert len(polylines) == 1
    pts = polylines[0].attrib["points"].split()
    assert len(pts) == 25
    for pair in pts:
        vx, vy = (float(c) for c in pair.split(","))
        assert -1e-6 <= vx <= 800 + 1e-6
        assert -1e-6 <= vy <= 800 + 1e-6


def test_export_rejects_off_sphere_points(tmp_path):
    bad = [CurveRecord(t=0.0, s=0.0, point=np.array([0.0, 1.1, 0.0, 0.0]))]
    with pytest.raises(IoError):
        export_curve(bad, tmp_path / "bad.csv", "csv")


def test_cli_synthesize_and_check(tmp_path):
    out = tmp_path / "synth.csv"
    code = main(["synthesize", "--kappa", "2", "--tau-sinh", "0.5",
                 "--tau-cosh", "0.3", "--range", "-0.6", "0.6",
                 "--step", "0.001", "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert main(["check-rectifying", "--in", str(out)]) == 0


def test_cli_check_rejects_non_hyperbolic(tmp_path):
    # hand-built file whose tau/kappa ratio is linear in s
    path = tmp_path / "linear.csv"
    records = []
    for s in np.linspace(-1, 1, 101):
        x = np.array([np.sinh(s), np.cosh(s), 0.0, 0.0])
        records.append(CurveRecord(t=s, s=s, point=x, kappa_g=2.0,
                                   tau_g=2.0 * s))
    export_curve(records, path, "csv")
    assert main(["check-rectifying", "--in", str(path)]) == 2


def test_cli_bad_arguments_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["synthesize", "--kappa", "2"])  # missing --out
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_cli_cone_geodesic_and_project(tmp_path):
    cone_out = tmp_path / "cone.csv"
    assert main(["cone-geodesic", "--lambda1", "0.3", "--lambda2", "0.1",
                 "--range", "-1", "1", "--out", str(cone_out)]) == 0
    assert cone_out.read_text().splitlines()[0] == "s,u,v"

    synth = tmp_path / "synth.csv"
    main(["synthesize", "--kappa", "1.5", "--range", "-0.4", "0.4",
          "--step", "0.001", "--out", str(synth)])
    svg = tmp_path / "proj.svg"
    assert main(["project", "--in", str(synth), "--out", str(svg),
                 "--format", "svg"]) == 0
    ET.parse(svg)


def test_cli_frame(tmp_path, capsys):
    synth = tmp_path / "synth.csv"
    main(["synthesize", "--kappa", "2", "--range", "-0.5", "0.5",
          "--step", "0.001", "--out", str(synth)])
    assert main(["frame", "--in", str(synth), "--at", "0.1"]) == 0
    out = capsys.readouterr().out
    assert "kappa_g" in out


def test_cli_missing_file_is_error(tmp_path):
    assert main(["check-rectifying", "--in", str(tmp_path / "nope.csv")]) == 1
