import hashlib
import subprocess

import numpy as np
import pytest

from surpkit.cli import main
from surpkit.datasets import toy_graph, toy_truth
from surpkit.graph import save_edge_list
from surpkit.partition import load_partition, save_partition


@pytest.fixture()
def toy_edges(tmp_path, toy):
    path = tmp_path / "toy.edges"
    save_edge_list(toy, path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


class TestDetect:
    def test_toy(self, capsys, tmp_path, toy_edges, toy_surprise_oracle):
        best, _ = toy_surprise_oracle
        out_path = tmp_path / "part.txt"
        code, out = run(capsys, "detect", "--graph", toy_edges, "--out", out_path)
        assert code == 0
        fields = dict(kv.split("=") for kv in out.split())
        assert fields["K"] == "11" and fields["Nc"] == "4"
        assert float(fields["S"]) == pytest.approx(best, abs=1e-8)
        assert load_partition(out_path).Nc == 4

    def test_empty_graph_all_singletons(self, capsys, tmp_path):
        path = tmp_path / "iso.edges"
        path.write_text("# no edges, but 3 isolated nodes after this one pair\n0 3\n")
        code, out = run(capsys, "detect", "--graph", path)
        assert code == 0
        fields = dict(kv.split("=") for kv in out.split())
        assert float(fields["S"]) >= 0.0

    def test_missing_file_fails(self, capsys, tmp_path):
        assert main(["detect", "--graph", str(tmp_path / "nope.edges")]) == 1

    def test_anneal_polish_keeps_optimum(self, capsys, toy_edges, toy_surprise_oracle):
        best, _ = toy_surprise_oracle
        code, out = run(
            capsys, "detect", "--graph", toy_edges,
            "--anneal-steps", 5, "--anneal-T", 0.01, "--seed", 3,
        )
        assert code == 0
        fields = dict(kv.split("=") for kv in out.split())
        assert float(fields["S"]) == pytest.approx(best, abs=1e-8)


class TestBench:
    def test_our_round_trip(self, capsys, tmp_path):
        edges = tmp_path / "bench.edges"
        truth = tmp_path / "bench.truth"
        code, out = run(
            capsys, "bench", "our", "--ncliques", 5, "--pielou", 0.9,
            "--nodes", 100, "--r", 0.0, "--seed", 1,
            "--out-edges", edges, "--out-truth", truth,
        )
        assert code == 0
        assert load_partition(truth).Nc == 5
        fields = dict(kv.split("=") for kv in out.split())
        assert fields["K"] == "100"

    def test_rc(self, capsys, tmp_path, toy_edges):
        out_path = tmp_path / "rc.edges"
        code, out = run(capsys, "bench", "rc", "--graph", toy_edges, "--R", 50, "--seed", 2, "--out", out_path)
        assert code == 0
        fields = dict(kv.split("=") for kv in out.split())
        assert fields["n_before"] == "16" and fields["n_after"] == "8"

    def test_reproducible_outputs(self, capsys, tmp_path):
        digests = []
        for tag in ("a", "b"):
            edges = tmp_path / f"{tag}.edges"
            truth = tmp_path / f"{tag}.truth"
            code, _ = run(
                capsys, "bench", "our", "--ncliques", 4, "--pielou", 0.85,
                "--nodes", 60, "--r", 0.05, "--p", 0.2, "--q", 0.01,
                "--seed", 11, "--out-edges", edges, "--out-truth", truth,
            )
            assert code == 0
            digests.append(
                hashlib.sha256(edges.read_bytes() + truth.read_bytes()).hexdigest()
            )
        assert digests[0] == digests[1]


class TestEval:
    def test_vi_identical(self, capsys, tmp_path, truth):
        p = tmp_path / "p.txt"
        save_partition(truth, p)
        code, out = run(capsys, "eval", "vi", "--a", p, "--b", p, "--normalized")
        assert code == 0 and float(out) == 0.0

    def test_pielou(self, capsys, tmp_path, truth):
        p = tmp_path / "p.txt"
        save_partition(truth, p)
        code, out = run(capsys, "eval", "pielou", "--partition", p)
        assert code == 0 and 0.9 < float(out) <= 1.0

    def test_surprise_at_optimum(self, capsys, tmp_path, toy_edges, toy_surprise_oracle):
        best, argmax = toy_surprise_oracle
        p = tmp_path / "opt.txt"
        save_partition(argmax[0], p)
        code, out = run(capsys, "eval", "surprise", "--graph", toy_edges, "--partition", p)
        assert code == 0 and float(out) == pytest.approx(best, abs=1e-8)

    def test_modularity(self, capsys, tmp_path, toy_edges, truth, toy_modularity_oracle):
        best, _ = toy_modularity_oracle
        p = tmp_path / "truth.txt"
        save_partition(truth, p)
        code, out = run(capsys, "eval", "modularity", "--graph", toy_edges, "--partition", p)
        assert code == 0 and float(out) == pytest.approx(best, abs=1e-8)

    def test_frag_csv(self, capsys, tmp_path, truth):
        a = tmp_path / "a.txt"
        save_partition(truth, a)
        code, out = run(capsys, "eval", "frag", "--initial", a, "--found", a)
        assert code == 0
        header, row = out.strip().splitlines()
        assert header.startswith("kept,")
        assert row.split(",")[0] == "100.00"

    def test_domain_error_exit(self, capsys, tmp_path, truth):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        save_partition(truth, a)
        b.write_text("0\n1\n")
        assert main(["eval", "vi", "--a", str(a), "--b", str(b)]) == 1


class TestOracle:
    def test_surprise_degeneracy(self, capsys, toy_edges, toy_surprise_oracle):
        best, _ = toy_surprise_oracle
        code, out = run(capsys, "oracle", "--graph", toy_edges, "--quality", "surprise")
        assert code == 0
        lines = out.strip().splitlines()
        fields = dict(kv.split("=") for kv in lines[0].split())
        assert fields["maximizers"] == "2"
        assert float(fields["value"]) == pytest.approx(best, abs=1e-8)
        assert len(lines) == 3

    def test_triangle_all_in_one(self, capsys, tmp_path):
        path = tmp_path / "tri.edges"
        path.write_text("0 1\n1 2\n0 2\n")
        code, out = run(capsys, "oracle", "--graph", path)
        lines = out.strip().splitlines()
        assert "0 0 0" in lines[1:]

    def test_too_large_refused(self, capsys, tmp_path):
        path = tmp_path / "big.edges"
        path.write_text("\n".join(f"{i} {i + 1}" for i in range(13)))
        assert main(["oracle", "--graph", str(path)]) == 1


class TestMLE:
    def test_discrete(self, capsys, tmp_path):
        from surpkit.randoms import sample_powerlaw_discrete

        path = tmp_path / "samples.txt"
        draws = sample_powerlaw_discrete(2.5, None, rng=0, count=20_000)
        path.write_text("\n".join(map(str, draws)))
        code, out = run(capsys, "mle", "--samples", path, "--discrete")
        assert code == 0
        fields = dict(kv.split("=") for kv in out.split())
        assert abs(float(fields["gamma"]) - 2.5) < 0.1

    def test_continuous(self, capsys, tmp_path):
        import math

        path = tmp_path / "samples.txt"
        path.write_text("\n".join([str(math.e)] * 50))
        code, out = run(capsys, "mle", "--samples", path)
        fields = dict(kv.split("=") for kv in out.split())
        assert float(fields["gamma"]) == pytest.approx(2.0, rel=1e-9)


class TestLandscape:
    def test_embed_and_walk(self, capsys, tmp_path):
        from surpkit.embedding import save_distance_matrix

        rng = np.random.default_rng(5)
        pts = rng.random((8, 2))
        D = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
        dist = tmp_path / "dist.txt"
        save_distance_matrix(D, dist)
        coords_out = tmp_path / "coords.tsv"
        code, out = run(
            capsys, "landscape", "embed", "--dist", dist,
            "--gamma", -1.0, "--dlim", 10.0, "--seed", 2, "--out", coords_out,
        )
        assert code == 0
        assert len(coords_out.read_text().splitlines()) == 8

        values = tmp_path / "values.txt"
        values.write_text("\n".join(str(float(i)) for i in range(8)))
        walk_out = tmp_path / "walk.csv"
        code, out = run(
            capsys, "landscape", "walk", "--values", values,
            "--dist", dist, "--top", 5, "--out", walk_out,
        )
        assert code == 0
        lines = walk_out.read_text().splitlines()
        assert lines[0] == "cum_distance,height"
        assert len(lines) == 6


class TestEntryPoint:
    def test_console_script(self, tmp_path):
        edges = tmp_path / "toy.edges"
        save_edge_list(toy_graph(), edges)
        proc = subprocess.run(
            ["surpkit", "detect", "--graph", str(edges)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "Nc=4" in proc.stdout
