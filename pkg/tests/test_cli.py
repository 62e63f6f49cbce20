import io
import json
import re

import pytest

from rigidpg.cli import main

FLOAT = re.compile(r"\d\.\d|\d[eE][+-]?\d")


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def search_csv(tmp_path_factory):
    code, text = run("search", "--alpha-min", "2", "--alpha-max", "1000")
    assert code == 0
    path = tmp_path_factory.mktemp("cli") / "table1.csv"
    path.write_text(text)
    return path


@pytest.fixture(scope="module")
def sieve_md(search_csv):
    code, text = run("sieve", "--input", str(search_csv), "--format", "md")
    assert code == 0
    return text


def case_block(md: str, case: int) -> str:
    m = re.search(rf"### Case {case}:.*?(?=### Case|\Z)", md, re.S)
    assert m
    return m.group(0)


def test_search_alpha2():
    code, text = run("search", "--alpha-min", "2", "--alpha-max", "2")
    assert code == 0
    assert text == "case,s,t,alpha,x,v,k,lambda,mu,v_factored\n1,5,5,2,1,81,30,9,12,3^4\n"


def test_search_alpha4_header_only():
    code, text = run("search", "--alpha-min", "4", "--alpha-max", "4")
    assert code == 0 and text == "case,s,t,alpha,x,v,k,lambda,mu,v_factored\n"


def test_search_full_has_21_rows(search_csv):
    lines = search_csv.read_text().splitlines()
    assert len(lines) == 22
    assert lines[21] == "21,1394,47429,774,34,119164000,66117420,36664010,36710820,2^5*5^3*31^3"


def test_search_formats():
    _, js = run("search", "--alpha-max", "3", "--format", "jsonl")
    recs = [json.loads(line) for line in js.splitlines()]
    assert [(r["s"], r["t"], r["alpha"]) for r in recs] == [(5, 5, 2), (11, 23, 3)]
    _, md = run("search", "--alpha-max", "3", "--format", "md")
    assert md.splitlines()[0].startswith("| case | s | t |")


def test_search_engines_and_mls_flag_agree():
    base = run("search", "--alpha-max", "60")[1]
    assert run("search", "--alpha-max", "60", "--engine", "loop")[1] == base
    assert run("search", "--alpha-max", "60", "--mls-as-code")[1] == base
    assert run("search", "--alpha-max", "60", "--workers", "2")[1] == base


@pytest.mark.parametrize(
    "argv",
    [
        ["search", "--alpha-min", "5", "--alpha-max", "4"],
        ["search", "--alpha-min", "1"],
        ["search", "--format", "xml"],
        ["family", "--n-max", "1"],
        ["bogus"],
        ["verify"],
        ["verify", "--input", "/nonexistent/file"],
        ["cyclotomy", "--p", "3", "--f", "4", "--e", "7", "--target", "81,30,9,12"],
        ["cyclotomy", "--p", "3", "--f", "4", "--e", "16", "--target", "81,30"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_sieve_case14(sieve_md):
    block = case_block(sieve_md, 14)
    assert "|N|=512, pi=8, theta=-33, beta1=0, d=229440, nonsquare, verdict=ExcludedT1" in block
    assert "verdict=ExcludedT1" in block


def test_sieve_case11(sieve_md):
    block = case_block(sieve_md, 11)
    assert "verdict=Open" in block
    assert "Sylow-7: k1=1050" in block and "Sylow-3: k1 in {24,60}" in block
    assert "k1=1344 DeadT3 Var=-14751744" in block


def test_sieve_case19(sieve_md):
    block = case_block(sieve_md, 19)
    assert "verdict=Open" in block and "Sylow-2: k1=2064" in block


def test_sieve_csv_and_jsonl(search_csv):
    code, text = run("sieve", "--input", str(search_csv))
    assert code == 0
    verdicts = {}
    for line in text.splitlines()[1:]:
        cells = line.split(",")
        verdicts[int(cells[0])] = cells[-1]
    assert len(verdicts) == 21 and verdicts[20] == "ExcludedT2"
    code, js = run("sieve", "--alpha-max", "3", "--format", "jsonl")
    assert [json.loads(x)["verdict"] for x in js.splitlines()] == ["Open", "Open"]


def test_sieve_bad_input(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert run("sieve", "--input", str(bad))[0] == 2
    bad.write_text("s,t,alpha\n5,6,2\n")
    assert run("sieve", "--input", str(bad))[0] == 2


def test_family_default():
    code, text = run("family")
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 9
    assert lines[1] == "2,5,29,119,20736,3480,504,600,256,16,-3,0,136,120,-1188096,-844800,true"


def test_family_n32():
    code, text = run("family", "--n-max", "32")
    assert code == 0
    lines = text.splitlines()[1:]
    assert len(lines) == 31 and all(line.endswith(",true") for line in lines)


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.pds"
    path.write_text("# the pentagon\n5\n1\n4\n")
    return path


def test_verify_pentagon(pentagon_file):
    code, text = run("verify", "--input", str(pentagon_file))
    assert code == 0
    assert text.startswith("(5,2,0,1) involution_free: true")


def test_verify_not_pds(tmp_path):
    path = tmp_path / "z4.pds"
    path.write_text("4\n1\n2\n")
    code, text = run("verify", "--input", str(path))
    assert code == 1 and text.startswith("not a PDS")


def test_verify_involution(tmp_path):
    path = tmp_path / "z2z2.pds"
    path.write_text("2,2\n1,0\n0,1\n1,1\n")
    code, text = run("verify", "--input", str(path))
    assert code == 0 and "involution_free: false" in text


@pytest.fixture(scope="module")
def vls_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("vls") / "vls.pds"
    code, text = run(
        "cyclotomy", "--p", "3", "--f", "4", "--e", "16", "--target", "81,30,9,12",
        "--write-pds", str(path),
    )
    assert code == 0
    found = [line for line in text.splitlines() if not line.startswith("#")]
    assert len(found) >= 1 and all(len(line.split(",")) == 6 for line in found)
    return path


def test_cyclotomy_paley():
    code, text = run("cyclotomy", "--p", "3", "--f", "2", "--e", "2", "--target", "9,4,1,2", "--limit", "1")
    assert code == 0 and text.splitlines()[1:] == ["0"]


def test_cyclotomy_nothing_found():
    code, text = run("cyclotomy", "--p", "3", "--f", "2", "--e", "2", "--target", "9,4,1,3")
    assert code == 1 and len(text.splitlines()) == 1


def test_geometry_vls(vls_file):
    code, text = run("geometry", "--input", str(vls_file))
    assert code == 0
    assert text.startswith("pg(5,5,2) proper rigid")


def test_geometry_pentagon_fails(pentagon_file):
    code, text = run("geometry", "--input", str(pentagon_file), "--line-size", "3")
    assert code == 1


def test_report_small_deterministic():
    a = run("report", "--alpha-max", "120")
    b = run("report", "--alpha-max", "120")
    assert a == b and a[0] == 0


def test_no_floats_anywhere(search_csv, sieve_md):
    texts = [search_csv.read_text(), sieve_md, run("family", "--n-max", "32")[1]]
    texts.append(run("report", "--alpha-max", "120")[1])
    for text in texts:
        assert not FLOAT.search(text)
