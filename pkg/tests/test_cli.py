import json
import os

from dgconf.cli import main
from dgconf.reports import Report

PRESETS = os.path.join(os.path.dirname(__file__), os.pardir, "presets")


def preset(name):
    return os.path.join(PRESETS, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_verify_sphere(capsys):
    code, data = run(capsys, "verify", "--input", preset("s4.toml"))
    assert code == 0
    assert data["violations"] == []
    assert data["extras"]["poincare_duality"] == {"formal_dim": 4}


def test_series_sphere(capsys):
    code, data = run(capsys, "series", "--input", preset("s4.toml"))
    assert code == 0
    assert data["betti"] == [1, 0, 0, 0, 1]


def test_cohomology_ring_s3s3(capsys):
    code, data = run(capsys, "cohomology", "--input", preset("s3xs3.toml"))
    assert code == 0
    assert data["betti"] == [1, 0, 0, 2, 0, 0, 1]
    assert data["ring"]["structure_constants"]


def test_conf2_disk_bundle_hopf(capsys):
    code, data = run(capsys, "conf2-disk-bundle", "--base", preset("s4.toml"),
                     "--euler", "x", "--rank", "4", "--massey", "auto")
    assert code == 0
    assert data["betti"] == [1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]
    nontrivial = [m for m in data["massey"] if m["nontrivial"]]
    assert nontrivial
    assert all(m["indeterminacy_dim"] == 0 for m in nontrivial)
    assert data["extras"]["two_pipeline_agreement"] is True
    assert data["extras"]["dual_square"]["commutes"] is True


def test_conf2_disk_bundle_trivial_with_presentation(capsys):
    code, data = run(capsys, "conf2-disk-bundle", "--base", preset("s4.toml"),
                     "--euler", "0", "--rank", "4",
                     "--check-presentation", preset("presentation_s4xr4.toml"))
    assert code == 0
    assert data["betti"] == [1, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1]
    assert data["ring"]["presentation_check"]["passed"] is True


def test_conf2_disk_bundle_odd_rank_exit_code(capsys):
    code, data = run(capsys, "conf2-disk-bundle", "--base", preset("s4.toml"),
                     "--euler", "0", "--rank", "5")
    assert code == 3
    assert "even" in data["violations"][0]


def test_conf2_punctured_sphere(capsys):
    code, data = run(capsys, "conf2-punctured", "--manifold", preset("s4.toml"))
    assert code == 0
    assert data["betti"] == [1, 0, 0, 1]
    assert data["extras"]["dual_square"]["commutes"] is True


def test_conf2_pretty_punctured_s4(capsys):
    code, data = run(capsys, "conf2-pretty", "--pd", preset("s4.toml"),
                     "--target", preset("point.toml"),
                     "--phi", preset("phi_punctured_s4.toml"))
    assert code == 0
    assert data["betti"] == [1, 0, 0, 1]


def test_complement_interior_and_boundary_point(capsys):
    code, data = run(capsys, "complement", "--ambient", preset("point.toml"),
                     "--module", preset("interior_point_module.toml"),
                     "--n", "8", "--k", "0", "--r", "-1")
    assert code == 0
    assert data["betti"] == [1, 0, 0, 0, 0, 0, 0, 1]

    code, data = run(capsys, "complement", "--ambient", preset("point.toml"),
                     "--module", preset("boundary_point_module.toml"),
                     "--n", "8", "--k", "0", "--r", "6")
    assert code == 0
    assert data["betti"] == [1]


def test_usage_error_exit_code(capsys):
    code, data = run(capsys, "series")
    assert code == 1


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("this is not toml [", encoding="utf-8")
    code, data = run(capsys, "verify", "--input", str(bad))
    assert code == 1


def test_axiom_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('\n'.join([
        'name = "bad"',
        'dimension_bound = 8',
        '[[generators]]',
        'name = "x"',
        'degree = 2',
        '[[generators]]',
        'name = "b"',
        'degree = 3',
        '[differentials]',
        'b = "x"',      # wrong degree: d(b) must be degree 4
    ]), encoding="utf-8")
    code, data = run(capsys, "verify", "--input", str(bad))
    assert code in (1, 2)
    assert data["violations"]


def test_output_file_and_roundtrip(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["series", "--input", preset("s4.toml"), "--output", str(out)])
    assert code == 0
    text = out.read_text(encoding="utf-8")
    report = Report.from_json(text)
    assert report.betti == [1, 0, 0, 0, 1]
    assert report.to_json() == text.rstrip("\n")


def test_massey_subcommand(capsys, tmp_path):
    code, data = run(capsys, "massey", "--input", preset("s4.toml"))
    assert code == 0
    # zero differential: defined products all contain zero
    assert all(not m["nontrivial"] for m in data["massey"])

    code, data = run(capsys, "massey", "--input", preset("s4.toml"),
                     "--triple", "h4_0,h4_0,h4_0")
    assert code == 0
    assert data["massey"][0]["defined"] is True

    code, data = run(capsys, "massey", "--input", preset("s4.toml"),
                     "--triple", "nope,h4_0,h4_0")
    assert code == 1


def test_conf2_pretty_reproduces_hopf_disk_bundle(capsys):
    """The pretty-model CLI route with a hand-written presentation of
    P = Λ(x,z)/(x², z²-xz), oriented by -xz, and φ(z) = x reproduces the
    quaternionic Hopf configuration space."""
    code, data = run(capsys, "conf2-pretty", "--pd", preset("hopf_total_space.toml"),
                     "--target", preset("s4.toml"), "--phi", preset("phi_hopf.toml"),
                     "--massey", "auto")
    assert code == 0
    assert data["betti"] == [1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]
    assert any(m["nontrivial"] for m in data["massey"])
    assert data["extras"]["dual_square"]["commutes"] is True
