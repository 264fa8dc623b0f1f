import json
import math
import subprocess
import sys

import numpy as np
import pytest

from diskchristoffel import io
from diskchristoffel.bodies import Ball, Ellipsoid, MinkowskiSum, cube, cylinder
from diskchristoffel.cli import JobConfig, main, run
from diskchristoffel.disk_forward import forward, forward_density
from diskchristoffel.errors import SpecError
from diskchristoffel.sphere_geom import SphereGrid
from zoo import ANALYTIC, spliced_family

G = SphereGrid.uniform(3, 16, 64)


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize("name", sorted(ANALYTIC))
def test_body_spec_round_trip(name):
    K = ANALYTIC[name]
    L = io.body_from_spec(json.loads(json.dumps(io.body_to_spec(K))))
    x = np.random.default_rng(0).standard_normal((30, 3))
    assert np.array_equal(K.support(x), L.support(x))


@pytest.mark.parametrize("name", ["ball", "cube", "cylinder", "zonal", "ball_plus_cube"])
def test_family_round_trip(name):
    fam = forward(ANALYTIC[name], G).family
    text = io.family_to_json(fam)
    back = io.family_from_json(text)
    assert io.families_equal(fam, back)
    assert io.family_to_json(back) == text


def test_family_document_layout():
    text = io.family_to_json(forward(Ball(), G).family)
    doc = json.loads(text)
    assert doc["format"] == "disk-family" and doc["version"] == 1 and doc["dim"] == 3
    assert doc["circle"] == 64 and len(doc["planes"]) == 16
    assert text.count("\n") == 16 + 2  # header line, one line per plane, closing line
    assert set(doc["planes"][0]) == {"w", "weight", "density", "atoms", "rho", "poles"}


def test_density_and_measure_round_trip():
    q = forward_density(Ellipsoid((1, 2, 3)), G)
    back = io.density_from_json(io.density_to_json(q))
    assert back.grid == q.grid and np.array_equal(back.q, q.q)
    from diskchristoffel.christoffel2d import forward_polygon
    from diskchristoffel.sphere_geom import CircleGrid
    mu = forward_polygon([[0, 0], [1, 0], [0, 2]], CircleGrid(64))
    nu = io.measure2d_from_json(io.measure2d_to_json(mu))
    assert np.array_equal(mu.atom_angles, nu.atom_angles) and np.array_equal(mu.atom_masses, nu.atom_masses)


def test_sphere_table_rows():
    g = SphereGrid.uniform(3, 16, 16)
    values = np.arange(16 * 16, dtype=float).reshape(16, 16)
    rows = io.sphere_table(g, values).splitlines()
    assert rows[0].startswith("#") and len(rows) == 1 + 256
    az, pol, v = map(float, rows[1 + 16 * 3 + 12].split())
    assert v == 3 * 16 + 12
    assert 0 <= pol <= math.pi and 0 <= az < 2 * math.pi
    # the table row names the same direction as the grid point
    u = g.points()[3, 12]
    assert np.allclose([math.sin(pol) * math.cos(az), math.sin(pol) * math.sin(az), math.cos(pol)], u)


@pytest.mark.parametrize("doc,field", [
    ({"radius": 1}, "type"),
    ({"type": "ellipsoid"}, "semi_axes"),
    ({"type": "sum", "terms": [{"type": "ball"}, {"type": "polytope"}]}, "body.terms[1]"),
    ({"type": "blob"}, "blob"),
    ({"type": "ball", "radius": -1}, "body"),
])
def test_bad_body_spec_names_field(doc, field):
    with pytest.raises(SpecError, match=field.replace("[", r"\[").replace("]", r"\]")):
        io.body_from_spec(doc)


def test_bad_family_documents():
    text = io.family_to_json(forward(Ball(), G).family)
    doc = json.loads(text)
    with pytest.raises(SpecError, match="format"):
        io.family_from_json(json.dumps(dict(doc, format="other")))
    bad = json.loads(text)
    del bad["planes"][2]["rho"]
    with pytest.raises(SpecError, match=r"planes\[2\].*rho"):
        io.family_from_json(json.dumps(bad))
    bad = json.loads(text)
    bad["planes"][0]["rho"] += 1.0
    with pytest.raises(SpecError, match="rho"):
        io.family_from_json(json.dumps(bad))
    with pytest.raises(SpecError, match="invalid JSON"):
        io.family_from_json("{")


# --- CLI -------------------------------------------------------------------

def test_cli_forward_ball(tmp_path, capsys):
    body = write(tmp_path / "ball.json", {"type": "ball", "radius": 1.0})
    out, table, report = tmp_path / "fam.txt", tmp_path / "q.txt", tmp_path / "rep.json"
    code = main(["forward", "--body", body, "--planes", "128", "--circle", "512",
                 "--out", str(out), "--table", str(table), "--report", str(report)])
    assert code == 0
    fam = io.load_family(out)
    assert np.max(np.abs(fam.rho - math.pi ** 2)) <= 1e-6
    summary = json.loads(report.read_text())
    assert summary["total_mass"] == pytest.approx(math.pi ** 2, abs=1e-6)
    assert summary["pole_mass"] == [0.0, 0.0] and summary["smooth"]
    assert len(table.read_text().splitlines()) == 1 + 128 * 512


def test_cli_forward_deterministic(tmp_path):
    body = write(tmp_path / "b.json", {"type": "sum", "terms": [{"type": "ellipsoid", "semi_axes": [1, 2, 3]},
                                                              {"type": "polytope", "vertices": [[0, 0, 0], [1, 0, 0.5], [0, 1, 0.2], [0, 0, 1]]}]})
    outs = []
    for i in range(2):
        out = tmp_path / f"f{i}.txt"
        assert main(["forward", "--body", body, "--planes", "16", "--circle", "64", "--out", str(out),
                     "--report", str(tmp_path / "r.json")]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_cli_forward_stdout(tmp_path, capsys):
    body = write(tmp_path / "ball.json", {"type": "ball"})
    assert main(["forward", "--body", body, "--planes", "16", "--circle", "32"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["format"] == "disk-family"


def test_cli_roundtrip_ellipsoid(tmp_path, capsys):
    body = write(tmp_path / "e.json", {"type": "ellipsoid", "semi_axes": [1, 1, 2]})
    code = main(["roundtrip", "--body", body, "--planes", "256", "--circle", "1024"])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["verdict"] == "solvable" and summary["relative_error"] <= 1e-2


def test_cli_invert_family_and_density(tmp_path, capsys):
    fam = tmp_path / "fam.txt"
    io.save_family(forward(ANALYTIC["zonal"], G).family, fam)
    h, rep = tmp_path / "h.txt", tmp_path / "rep.json"
    assert main(["invert", "--family", str(fam), "--out", str(h), "--report", str(rep)]) == 0
    doc = json.loads(rep.read_text())
    assert doc["verdict"] == "solvable" and doc["certificates"] == []
    assert set(doc["tolerances"]) == {"conditions", "battery", "self_certification"}
    assert json.loads(json.dumps(doc))["calibration"]["kernel"] == "berg"
    assert len(h.read_text().splitlines()) == 1 + 16 * 64
    dens = tmp_path / "q.json"
    dens.write_text(io.density_to_json(forward_density(Ball(), G)))
    assert main(["invert", "--density", str(dens), "--out", str(h), "--report", str(rep)]) == 0
    even = tmp_path / "even.json"
    io.save_family(forward(Ellipsoid((1, 2, 3)), G).family, fam)
    assert main(["invert-even", "--family", str(fam), "--out", str(h), "--report", str(even)]) == 0
    assert json.loads(even.read_text())["calibration"]["kernel"] == "even"


def test_cli_invert_spliced_exit_2(tmp_path, capsys):
    g = SphereGrid.uniform(3, 64, 256)
    fam = tmp_path / "spliced.txt"
    io.save_family(spliced_family(g), fam)
    rep = tmp_path / "rep.json"
    assert main(["invert", "--family", str(fam), "--report", str(rep)]) == 2
    doc = json.loads(rep.read_text())
    assert doc["verdict"] == "rejected"
    widths = [c for c in doc["certificates"] if c["condition"] == "axial_width"][0]["location"]["widths"]
    assert sorted(widths) == pytest.approx([2.0, 4.0], abs=1e-3)


def test_cli_invert_pole_mass_exit_2(tmp_path, capsys):
    fam = tmp_path / "cyl.txt"
    io.save_family(forward(cylinder(), G).family, fam)
    assert main(["invert", "--family", str(fam)]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["certificates"][0]["condition"] == "pole_mass"


def test_cli_check(tmp_path, capsys):
    fam = tmp_path / "f.txt"
    io.save_family(forward(cube(), G).family, fam)
    assert main(["check", "--family", str(fam)]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert not doc["ok"] and not doc["pole_mass"]["ok"]
    io.save_family(forward(Ball(), G).family, fam)
    assert main(["check", "--family", str(fam)]) == 0


def test_cli_planar(tmp_path, capsys):
    body = write(tmp_path / "tri.json", {"type": "polytope", "vertices": [[0, 0], [2, 0], [0, 1]]})
    meas = tmp_path / "mu.json"
    assert main(["body2d-forward", "--body", body, "--circle", "256", "--out", str(meas)]) == 0
    mu = io.measure2d_from_json(meas.read_text())
    assert mu.total_mass() == pytest.approx(3 + math.sqrt(5))
    out = tmp_path / "h.txt"
    assert main(["body2d-invert", "--measure", str(meas), "--out", str(out)]) == 0
    rows = np.loadtxt(out)
    assert rows.shape == (256, 2)
    # the triangle centred at its Steiner point (vertices weighted by exterior angle / 2 pi)
    V = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
    ext = np.array([math.pi / 2, math.pi - math.atan(0.5), math.pi - math.atan(2.0)])
    s = ext @ V / (2 * math.pi)
    t, h = rows[:, 0], rows[:, 1]
    u = np.stack([np.cos(t), np.sin(t)], axis=1)
    assert np.max(np.abs(h - np.max(u @ (V - s).T, axis=1))) <= 1e-6
    ball3 = write(tmp_path / "b3.json", {"type": "ball"})
    assert main(["body2d-forward", "--body", ball3]) == 1
    assert "2-dimensional" in capsys.readouterr().err


@pytest.mark.parametrize("argv,field", [
    (["forward", "--body", "x.json", "--planes", "8"], "planes"),
    (["forward", "--body", "x.json", "--circle", "31"], "circle"),
    (["forward", "--body", "x.json", "--tol", "0"], "tol"),
    (["invert"], "input"),
    (["invert", "--family", "a", "--density", "b"], "input"),
])
def test_cli_config_errors(argv, field, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith(f"error: {field}")


def test_cli_bad_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["forward", "--body", str(bad)]) == 1
    assert "invalid JSON" in capsys.readouterr().err
    assert main(["forward", "--body", str(tmp_path / "missing.json")]) == 1
    assert main(["invert", "--family", str(bad)]) == 1


def test_job_config_direct():
    assert run(JobConfig("nonsense")) == 1
    with pytest.raises(SpecError, match="command"):
        JobConfig("nonsense").validate()
    JobConfig("forward", body="x").validate()


def test_module_entry_point(tmp_path):
    body = write(tmp_path / "ball.json", {"type": "ball"})
    proc = subprocess.run([sys.executable, "-m", "diskchristoffel", "roundtrip", "--body", body,
                           "--planes", "16", "--circle", "64"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["verdict"] == "solvable"
