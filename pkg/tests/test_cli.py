import json
import random
from fractions import Fraction as Q

from witchmoduli import cli, limits as lm, moduli as md, serialize as sz, strata
from witchmoduli.laurent import Laurent, t_power

from famgen import random_family

C = Laurent.of
T = t_power(1)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def family_file(tmp_path, fam, name="family.json"):
    p = tmp_path / name
    p.write_text(json.dumps(sz.family_dump(fam)))
    return str(p)


def curve_file(tmp_path, curve, name):
    p = tmp_path / name
    p.write_text(sz.dumps(curve))
    return str(p)


def test_roundtrip_serialization_randomized():
    rng = random.Random(8)
    for _ in range(12):
        fam = random_family(rng)
        blob = json.dumps(sz.family_dump(fam), sort_keys=True)
        fam2 = sz.family_parse(json.loads(blob))
        assert json.dumps(sz.family_dump(fam2), sort_keys=True) == blob
        limit = lm.gromov_limit(fam)
        blob = json.dumps(sz.limit_dump(limit), sort_keys=True)
        limit2 = sz.limit_parse(json.loads(blob))
        assert json.dumps(sz.limit_dump(limit2), sort_keys=True) == blob
        assert limit2.curve.key() == limit.curve.key()


def test_roundtrip_curve_and_pair():
    w = md.smooth_witch_curve((2, 1), (0, 1), ((0, 3), (7,)))
    blob = sz.dumps(w)
    w2 = sz.curve_parse(json.loads(blob))
    assert w2.key() == w.key()
    assert sz.dumps(w2) == blob
    tp = w.pair
    tp2 = sz.tree_pair_parse(json.loads(json.dumps(sz.tree_pair_dump(tp))))
    assert tp2.canon == tp.canon


def test_enumerate_k_command(capsys):
    code, out, _ = run_cli(capsys, "enumerate-k", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 11
    assert doc["f_vector"] == [5, 5, 1]


def test_enumerate_w_command(capsys):
    code, out, _ = run_cli(capsys, "enumerate-w", "1,1")
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_fvector_command(capsys):
    code, out, _ = run_cli(capsys, "fvector", "2,1")
    assert code == 0
    assert json.loads(out) == [8, 8, 1]


def test_hasse_dot_and_png(capsys, tmp_path):
    dot = tmp_path / "h.dot"
    png = tmp_path / "h.png"
    code, out, _ = run_cli(
        capsys, "hasse", "1,1", "--dot", str(dot), "--png", str(png)
    )
    assert code == 0
    assert dot.read_text().startswith("digraph")
    assert png.stat().st_size > 1000
    code, out, _ = run_cli(capsys, "hasse", "--k", "3")
    assert code == 0
    assert out.startswith("digraph")


def test_hasse_usage_error(capsys):
    code, _, err = run_cli(capsys, "hasse")
    assert code == 2


def test_validate_and_canon(capsys, tmp_path):
    w = md.smooth_witch_curve((2,), (5,), ((2, 9),))
    f = curve_file(tmp_path, w, "w.json")
    code, out, _ = run_cli(capsys, "validate", f)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run_cli(capsys, "canon", f)
    assert code == 0
    canon = sz.curve_parse(json.loads(out))
    assert canon.key() == md.canonical_form(w).key()
    # canonical output re-parses byte-stable
    f2 = tmp_path / "canon.json"
    f2.write_text(out)
    code, out2, _ = run_cli(capsys, "canon", str(f2))
    assert out2 == out


def test_iso_command(capsys, tmp_path):
    w1 = md.smooth_witch_curve((2,), (0,), ((0, 1),))
    w2 = md.smooth_witch_curve((2,), (4,), ((-1, 5),))
    fa = curve_file(tmp_path, w1, "a.json")
    fb = curve_file(tmp_path, w2, "b.json")
    code, out, _ = run_cli(capsys, "iso", fa, fb)
    assert code == 0 and json.loads(out)["isomorphic"] is True


def test_limit_command_with_check(capsys, tmp_path):
    fam = lm.smooth_family((3,), [C(0)], [[C(0), C(1), C(1) + T]])
    f = family_file(tmp_path, fam)
    code, out, _ = run_cli(capsys, "limit", f, "--check")
    assert code == 0
    doc = json.loads(out)
    assert doc["check"]["all_pass"] is True
    limit = sz.limit_parse(doc)
    assert len(limit.curve.pair.components) == 2


def test_classify_command(capsys, tmp_path):
    fam = lm.smooth_family((2,), [C(0)], [[C(0), C(1)]])
    f = family_file(tmp_path, fam)
    point = json.dumps([[[0, "0"]], [[-1, "1"]]])
    code, out, _ = run_cli(capsys, "classify", f, "--point", point)
    assert code == 0
    assert json.loads(out)["case"] == "C2b"


def test_mu_command_identity(capsys, tmp_path):
    w = md.smooth_witch_curve((2,), (0,), ((0, 1),))
    f = curve_file(tmp_path, w, "w.json")
    code, out, _ = run_cli(capsys, "mu", f, f, "--eps", "1/4")
    assert code == 0
    assert json.loads(out)["value"] <= 1e-9


def test_mu_command_with_witness_file(capsys, tmp_path):
    fam = lm.smooth_family((3,), [C(0)], [[C(0), C(1), C(1) + T]])
    limit = lm.gromov_limit(fam)
    t0 = Q(1, 1024)
    phis, psis = limit.witness_at(t0)
    from witchmoduli import metric as mt

    wit = mt.MuWitness(mt.surjection_to_smooth(limit.curve.pair), phis, psis)
    fa = curve_file(tmp_path, limit.curve, "lim.json")
    fb = curve_file(tmp_path, fam.at(t0), "smooth.json")
    wf = tmp_path / "wit.json"
    wf.write_text(json.dumps(sz.witness_dump(wit)))
    code, out, _ = run_cli(capsys, "mu", fa, fb, "--eps", "1/4", "--witness", str(wf))
    assert code == 0
    assert json.loads(out)["value"] < 0.05


def test_forget_command(capsys, tmp_path):
    w = md.smooth_witch_curve((1, 1), (0, 1), ((2,), (3,)))
    f = curve_file(tmp_path, w, "w.json")
    code, out, _ = run_cli(capsys, "forget", f)
    assert code == 0
    d = sz.disk_tree_parse(json.loads(out))
    assert d.tree.paren == "(..)"


def test_domain_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type_vector": [0], "x": [], "z": []}))
    code, _, err = run_cli(capsys, "limit", str(bad))
    assert code == 1
    assert "error" in err


def test_malformed_json_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    code, _, err = run_cli(capsys, "validate", str(bad))
    assert code == 1
