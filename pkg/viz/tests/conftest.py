"""Session fixtures for the plot-script tests.

Everything is produced through the analysis CLI (edge lists, description
JSONs, matrix CSVs, tree DOT/JSON), so these tests exercise exactly the
file formats the scripts consume in production.
"""

import shutil
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "graphsim.cli"]


def run_cli(*args):
    proc = subprocess.run(
        CLI + [str(a) for a in args], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def fixtures(tmp_path_factory):
    root = tmp_path_factory.mktemp("viz-fixtures")
    out = {}

    # Fig.-1 style pair: three shared kinds plus one biclique only in g1
    g1, g2 = root / "g1.txt", root / "g2.txt"
    run_cli("gen", "plant", "--n", 300, "--noise", "0.001",
            "--spec", "clique:24", "--spec", "star:40",
            "--spec", "starclique:8x20", "--spec", "biclique:6x10",
            "--seed", 31, "--out", g1)
    run_cli("gen", "plant", "--n", 280, "--noise", "0.001",
            "--spec", "clique:24", "--spec", "star:40",
            "--spec", "starclique:8x20", "--seed", 32, "--out", g2)
    out["fig1_desc"] = root / "fig1.json"
    trees_prefix = root / "fig1trees"
    run_cli("describe", g1, g2, "--out", out["fig1_desc"],
            "--trees", trees_prefix)
    out["tree1_dot"] = root / "fig1trees.tree1.dot"
    out["tree1_json"] = root / "fig1trees.tree1.json"
    out["common_dot"] = root / "fig1trees.common.dot"
    out["common_json"] = root / "fig1trees.common.json"

    # empty common model: disjoint vocabularies
    co, so = root / "cliques.txt", root / "stars.txt"
    run_cli("gen", "plant", "--n", 300, "--spec", "clique:25",
            "--spec", "clique:20", "--seed", 2, "--out", co)
    run_cli("gen", "plant", "--n", 300, "--spec", "star:40",
            "--spec", "star:25", "--seed", 3, "--out", so)
    out["empty_desc"] = root / "empty.json"
    run_cli("describe", co, so, "--out", out["empty_desc"])

    # drift sequence: cumulative clique -> star replacement
    drift_dir = root / "drift"
    drift_dir.mkdir()
    for step in range(5):
        specs = []
        for i in range(4):
            specs += ["--spec", "star:15" if i < step else "clique:16"]
        run_cli("gen", "plant", "--n", 400, "--noise", "0.002",
                *specs, "--seed", 40 + step,
                "--out", drift_dir / f"step{step}.txt")
    out["drift_matrix"] = root / "driftm.csv"
    run_cli("matrix", drift_dir, "--out", root / "driftm")
    out["drift_desc"] = root / "drift01.json"
    run_cli("describe", drift_dir / "step0.txt", drift_dir / "step4.txt",
            "--out", out["drift_desc"])

    # zero matrix: two copies of one graph
    same_dir = root / "same"
    same_dir.mkdir()
    shutil.copy(g1, same_dir / "a.txt")
    shutil.copy(g1, same_dir / "b.txt")
    out["zero_matrix"] = root / "zeros.csv"
    run_cli("matrix", same_dir, "--out", root / "zeros")

    # model tree via the tree subcommand, including a single-structure one
    model = root / "g1model.json"
    run_cli("summarize", g1, "--out", model)
    out["model_tree_dot"] = root / "g1tree.dot"
    out["model_tree_json"] = root / "g1tree.json"
    run_cli("tree", model, "--out", out["model_tree_dot"],
            "--json", out["model_tree_json"])
    single = root / "single.txt"
    run_cli("gen", "plant", "--n", 60, "--spec", "clique:12",
            "--seed", 9, "--out", single)
    single_model = root / "single_model.json"
    run_cli("summarize", single, "--min-size", 3, "--out", single_model)
    out["single_tree_dot"] = root / "single_tree.dot"
    run_cli("tree", single_model, "--out", out["single_tree_dot"])

    # malformed inputs
    out["garbage_json"] = root / "garbage.json"
    out["garbage_json"].write_text("{not json at all")
    out["garbage_dot"] = root / "garbage.dot"
    out["garbage_dot"].write_text("this is not a dot file")
    out["garbage_csv"] = root / "garbage.csv"
    out["garbage_csv"].write_text("a,b\n1,2,3\n")
    out["wrong_schema"] = root / "wrong.json"
    out["wrong_schema"].write_text('{"unexpected": true}')
    return out
