import os
import subprocess

import pytest

CLI = os.environ.get("SLPWB_CLI")

pytestmark = pytest.mark.skipif(
    CLI is None, reason="SLPWB_CLI not set (run through ctest)"
)


def run(*args, expect=0):
    proc = subprocess.run(
        [CLI, *map(str, args)], capture_output=True, text=True
    )
    assert proc.returncode == expect, proc.stderr
    return proc.stdout


def test_build_solve_index_query(tmp_path):
    text = tmp_path / "text.txt"
    text.write_bytes(b"abbab")
    dic = tmp_path / "dict.txt"
    dic.write_bytes(b"ab\nb\n")
    slp = tmp_path / "g.slp"

    run("build-slp", text, "-o", slp)
    out = run("solve", slp, dic, "--witness", "1000", "--expand-check")
    assert out.splitlines()[0] == "YES"
    assert out.splitlines()[1].startswith("witness:")
    assert "expand-check: OK" in out

    bad_dict = tmp_path / "dict2.txt"
    bad_dict.write_bytes(b"ab\n")
    assert run("solve", slp, bad_dict).splitlines()[0] == "NO"

    idx = tmp_path / "g.swbi"
    run("index", slp, dic, "-o", idx)
    ranges = tmp_path / "ranges.txt"
    ranges.write_text("2 3\n3 4\n1 5\n")
    out = run("query", ranges, "--slp", slp, "--dict", dic, "--index", idx)
    assert out.splitlines() == ["1", "0", "1"]

    ranges_bad = tmp_path / "ranges_bad.txt"
    ranges_bad.write_text("2 3\n0 9\n")
    out = run(
        "query", ranges_bad, "--slp", slp, "--dict", dic, "--index", idx, expect=4
    )
    assert out.splitlines() == ["1", "ERR"]


def test_exit_codes(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_bytes(b"")
    run("build-slp", empty, "-o", tmp_path / "x.slp", expect=2)
    run("nonsense-subcommand", expect=2)


def test_gen_clique_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for prefix in (a, b):
        run(
            "gen-clique", "--n", 5, "--k", 1, "--random", 0.5, "--seed", 7,
            "-o", prefix, "--oracle",
        )
    for ext in (".slp", ".dict", ".manifest"):
        assert (a.parent / (a.name + ext)).read_bytes() == (
            b.parent / (b.name + ext)
        ).read_bytes()

    manifest = (a.parent / (a.name + ".manifest")).read_text().splitlines()[0]
    n, k, n_pow_k, expected = manifest.split()
    assert (n, k, n_pow_k) == ("5", "1", "5")
    assert expected in ("YES", "NO")

    slp = a.parent / (a.name + ".slp")
    dic = a.parent / (a.name + ".dict")
    out = run("solve", slp, dic, "--tokens")
    assert out.splitlines()[0] == expected


def test_gen_clique_from_edges_known_sizes(tmp_path):
    graph = tmp_path / "k4.graph"
    graph.write_text("G 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    out = run("gen-clique", "--k", 1, "--edges", graph, "-o", tmp_path / "k4",
              "--oracle")
    assert "776 tokens" in out
    assert "51 words" in out
    assert (tmp_path / "k4.manifest").read_text().splitlines()[0] == "4 1 4 YES"


def test_expand_round_trip(tmp_path):
    text = tmp_path / "text.txt"
    text.write_bytes(b"mississippi")
    slp = tmp_path / "g.slp"
    run("build-slp", text, "-o", slp)
    assert run("expand", slp) == "mississippi"


def test_expand_check_never_mismatches(tmp_path):
    import random

    rng = random.Random(3)
    for case in range(12):
        text = bytes(rng.choice(b"abc") for _ in range(rng.randint(1, 80)))
        words = [
            bytes(rng.choice(b"abc") for _ in range(rng.randint(1, 5)))
            for _ in range(rng.randint(1, 6))
        ]
        (tmp_path / f"t{case}").write_bytes(text)
        (tmp_path / f"d{case}").write_bytes(b"\n".join(words) + b"\n")
        slp = tmp_path / f"g{case}.slp"
        run("build-slp", tmp_path / f"t{case}", "-o", slp)
        out = run("solve", slp, tmp_path / f"d{case}", "--expand-check")
        assert "expand-check: OK" in out


def test_bench_produces_csv():
    out = run("bench", "--suite", "scaling-N", "--t-min", 10, "--t-max", 14)
    lines = out.splitlines()
    assert lines[0].startswith("suite,t,N,g,m")
    assert len(lines) == 6
