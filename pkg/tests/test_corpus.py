"""reduce + verify over the bundled source corpus must agree everywhere."""

import json
import pathlib
import re

from multivote.cli import main

CORPUS = pathlib.Path(__file__).parent.parent / "corpus"

# (file, reduction, k values to try, force)
CASES = [
    ("triangle.graph.json", "dominating_set", (1, 2, 3), False),
    ("five_cycle.graph.json", "dominating_set", (1, 2), False),
    ("path4.graph.json", "dominating_set", (1, 2), False),
    ("packable.triples.json", "set_packing", (1, 2, 3), False),
    ("overlapping.triples.json", "set_packing", (1, 2), False),
    ("splittable.values.json", "partition", (None,), False),
    ("lopsided.values.json", "partition", (None,), False),
    ("odd_total.values.json", "partition", (None,), True),
    ("satisfiable.cnf.json", "three_sat", (None,), False),
    ("contradiction.cnf.json", "three_sat", (None,), False),
    ("linked.colored.json", "multicolor_clique", (2,), False),
    ("isolated.colored.json", "multicolor_clique", (2,), False),
]


def test_corpus_reduce_then_verify_agrees(tmp_path):
    ran = 0
    for name, reduction, ks, force in CASES:
        source = CORPUS / name
        assert source.exists(), name
        for k in ks:
            out = tmp_path / f"{name}.{k}.inst.json"
            argv = ["reduce", "--reduction", reduction, "--source", str(source),
                    "-o", str(out)]
            if k is not None:
                argv += ["--k", str(k)]
            if force:
                argv.append("--force")
            assert main(argv) == 0, (name, k)
            report_path = tmp_path / f"{name}.{k}.report.json"
            assert main(["verify", "--instance", str(out),
                         "-o", str(report_path)]) == 0, (name, k)
            report = json.loads(report_path.read_text())
            assert report["agree"] is True, (name, k, report)
            ran += 1
    assert ran == sum(len(ks) for _, _, ks, _ in CASES)


def test_thread_count_never_changes_output_content(tmp_path):
    inst = tmp_path / "inst.json"
    assert main(["generate", "--n", "4", "--t", "3", "--ell", "3", "--model", "min",
                 "--d", "1", "--alpha", "2", "--vmin", "0", "--vmax", "1",
                 "--seed", "21", "-o", str(inst)]) == 0
    outputs = []
    for threads in ("1", "8"):
        out = tmp_path / f"res{threads}.json"
        assert main(["solve", "--instance", str(inst), "--threads", threads,
                     "-o", str(out)]) in (0, 1)
        # elapsed_ns is the single wall-clock field; everything else is fixed
        outputs.append(re.sub(r'"elapsed_ns":\d+', '"elapsed_ns":0', out.read_text()))
    assert outputs[0] == outputs[1]
