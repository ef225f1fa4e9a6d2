from __future__ import annotations

import pytest

from supertropical import fmt
from supertropical.cli import main
from supertropical.fixtures import fix2


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def twin_file(tmp_path):
    p = tmp_path / "twin.txt"
    p.write_text(fmt.dump_monoid(fix2()) + "\nclasses E: {x1 x2}\nclasses F: {x1 c}\n")
    return str(p)


def test_check(capsys, twin_file):
    code, out = run(capsys, "check", twin_file)
    assert code == 0
    assert out.splitlines()[0] == "monoid twin: OK"
    assert "E" in out and "F" in out


def test_check_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("monoid bad\nelements 0 e 1\nrow 0: 0 0\n")
    code = main(["check", str(p)])
    captured = capsys.readouterr()
    assert code == 2 and "line" in captured.out + captured.err


def test_missing_file(capsys, tmp_path):
    assert main(["check", str(tmp_path / "absent.txt")]) == 2


def test_factorize_ghost_map(capsys):
    code, out = run(capsys, "factorize", "twin", "--verify")
    assert code == 0
    assert "tangible part: 0->0 e->e c->c 1->1 x1->x1|x2 x2->x1|x2" in out
    assert "mixing part: 0->0 e->e c->c 1->e x1|x2->c" in out
    assert out.rstrip().endswith("verify: OK")


def test_factorize_relation_from_file(capsys, twin_file):
    code, out = run(capsys, "factorize", "E", "-f", twin_file, "--verify")
    assert code == 0 and "verify: OK" in out


def test_equalize(capsys):
    code, out = run(capsys, "equalize", "twin", "x1", "c", "--paths")
    assert code == 0
    assert out.splitlines() == ["Feq(c x1) classes: {c x1}", "ghost separating: no", "path c ~ x1: (c 1 x1)"]


def test_tyrant_and_isolate(capsys):
    code, out = run(capsys, "tyrant", "lone", "1")
    assert code == 0 and "T(1): case II; classes {e 1 t2}; witness t2,1,t2" in out
    code, out = run(capsys, "isolate", "plane", "x", "--porcelain")
    assert out.splitlines()[0] == "isolated=yes"
    assert "cancellation=fails" in out
    code, out = run(capsys, "isolate", "twin", "c")
    assert code == 2


def test_mfce_listing(capsys):
    code, out = run(capsys, "mfce", "twin")
    assert code == 0 and len(out.splitlines()) == 6
    assert "E5: (diagonal)  tangible mixing" in out
    code, out = run(capsys, "mfce", "twin", "--dot")
    assert out.startswith('digraph "twin"')


def test_show_round_trips(capsys):
    code, out = run(capsys, "show", "twin")
    assert fmt.parse(out).monoid("twin").same_as(fix2())


def test_verify_small_run(capsys):
    code, out = run(capsys, "verify", "--count", "2", "--no-fixtures", "--only", "refinement", "--porcelain")
    assert code == 0
    assert out.splitlines()[-1] == "result=pass"


def test_verify_exit_code_on_violation(capsys):
    code, out = run(capsys, "verify", "--count", "0", "--only", "compose_tm", "--porcelain")
    assert code == 1 and "property=compose_tm" in out and "status=fail" in out
