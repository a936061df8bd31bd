import subprocess
import sys
from pathlib import Path

import pytest

from latticeforge.cex import read_cex
from latticeforge.cli import main
from latticeforge.context import read_csv
from latticeforge.pipeline import RunConfig, eval_corpus, input_kind, load_context, run_pipeline
from latticeforge.reduce import Order, TechniqueConfig

from conftest import MINI_WORDNET, write_corpora
from worked_examples import CEX_SAMPLE, british_museum_pairs_tsv, tourism

ARTIFACTS = ["context.cex", "reduced.cex", "lattice.dot", "stats.csv", "report.txt"]
WN = ["--wordnet-dir", str(MINI_WORDNET)]


@pytest.fixture
def pairs_file(tmp_path):
    path = tmp_path / "british_museum.tsv"
    path.write_text(british_museum_pairs_tsv(), encoding="utf-8")
    return path


@pytest.fixture
def deps_file(tmp_path):
    path = tmp_path / "bell.dep"
    path.write_text("nsubj(distributes-10, Bell-1)\ndobj(makes-8, products-16)\ndet(products-16, the-15)\n")
    return path


@pytest.fixture(autouse=True)
def no_wnhome(monkeypatch):
    monkeypatch.delenv("WNHOME", raising=False)


class TestLoading:
    @pytest.mark.parametrize("name,kind", [("a.cex", "cex"), ("a.tsv", "pairs"), ("a.csv", "csv"),
                                           ("a.dep", "deps"), ("a.txt", "deps")])
    def test_input_kind(self, name, kind):
        assert input_kind(Path(name)) == kind

    def test_deps(self, deps_file):
        from latticeforge.wordnet import load_db
        ctx = load_context(deps_file, db=load_db(MINI_WORDNET))
        assert ctx.objects == ("Bell", "product")
        assert ctx.attributes == ("distribute", "make")

    def test_pairs_fold_case(self, pairs_file):
        ctx = load_context(pairs_file, fold_case=True)
        assert "macgregor" in ctx.objects and "sport" in ctx.attributes


class TestRunPipeline:
    def test_worked_example(self, pairs_file, tmp_path):
        config = RunConfig(pairs_file, TechniqueConfig(4, 5, Order.WORDNET_FREQUENCY), MINI_WORDNET, tmp_path / "out")
        result = run_pipeline(config)
        assert sorted(result.paths) == sorted(ARTIFACTS)
        assert all(p.is_file() for p in result.paths.values())
        assert read_cex((tmp_path / "out" / "context.cex").read_bytes()).context == result.context
        assert [r.technique for r in result.reports] == ["wordnet", "frequency"]
        assert len(result.reduced.objects) <= len(result.context.objects)

    def test_order_none_keeps_context(self, pairs_file, tmp_path):
        result = run_pipeline(RunConfig(pairs_file, out_dir=tmp_path / "o"))
        context = read_cex((tmp_path / "o" / "context.cex").read_bytes())
        reduced = read_cex((tmp_path / "o" / "reduced.cex").read_bytes())
        assert context.context == reduced.context
        assert result.reports == []

    def test_deterministic(self, pairs_file, tmp_path):
        config = TechniqueConfig(4, 5, Order.WORDNET_FREQUENCY)
        run_pipeline(RunConfig(pairs_file, config, MINI_WORDNET, tmp_path / "a"))
        run_pipeline(RunConfig(pairs_file, config, MINI_WORDNET, tmp_path / "b"))
        for name in ARTIFACTS:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestEval:
    def test_twenty_corpora(self, tmp_path):
        write_corpora(tmp_path / "corpus", count=20)
        result = eval_corpus(tmp_path / "corpus", wordnet_dir=MINI_WORDNET)
        assert result.ok
        assert len(result.rows) == 100
        again = eval_corpus(tmp_path / "corpus", wordnet_dir=MINI_WORDNET)
        assert again.csv == result.csv

    def test_bad_corpus_isolated(self, tmp_path):
        write_corpora(tmp_path / "corpus", count=2)
        (tmp_path / "corpus" / "broken.dep").write_text("nsubj(a-1 b-2)\n")
        result = eval_corpus(tmp_path / "corpus", wordnet_dir=MINI_WORDNET)
        assert not result.ok
        assert [c for c, _ in result.failures] == ["broken"]
        assert len(result.rows) == 10


class TestCli:
    def test_nlp(self, tmp_path, capsys):
        text = tmp_path / "t.txt"
        text.write_text("Bell, based in Los Angeles, makes products. The museum opened.")
        assert main(["nlp", "split", str(text)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "Bell, based in Los Angeles, makes products.", "The museum opened."]
        assert main(["nlp", "tokenize", str(text)]) == 0
        assert capsys.readouterr().out.splitlines()[0].startswith("Bell , based in Los Angeles ,")

    def test_ingest_csv(self, deps_file, capsys):
        assert main(["ingest", str(deps_file), "--format", "csv", *WN]) == 0
        ctx = read_csv(capsys.readouterr().out)
        assert ctx.cells() == [("Bell", "distribute"), ("product", "make")]

    def test_ingest_without_wordnet_keeps_surface(self, deps_file, capsys):
        assert main(["ingest", str(deps_file), "--format", "csv"]) == 0
        assert read_csv(capsys.readouterr().out).attributes == ("distributes", "makes")

    def test_reduce_with_report(self, pairs_file, tmp_path, capsys):
        out, report = tmp_path / "r.cex", tmp_path / "r.csv"
        code = main(["reduce", str(pairs_file), "--order", "wn-freq", "--threshold", "5",
                     "--out", str(out), "--report", str(report), *WN])
        assert code == 0
        assert read_cex(out.read_bytes()).extended
        assert report.read_text().startswith("action,axis,survivor,members,frequency\n")

    def test_lattice_and_stats(self, tmp_path, capsys):
        from latticeforge.context import to_csv
        path = tmp_path / "tourism.csv"
        path.write_text(to_csv(tourism()))
        assert main(["lattice", str(path)]) == 0
        assert capsys.readouterr().out.startswith("digraph lattice {")
        assert main(["stats", str(path)]) == 0
        assert capsys.readouterr().out == "concepts,edges,height,width_lo,width_hi\n9,12,4,3,3\n"

    def test_run(self, pairs_file, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["run", str(pairs_file), "--order", "wn-freq", "--threshold", "5", "--out", str(out), *WN]) == 0
        assert sorted(p.name for p in out.iterdir()) == sorted(ARTIFACTS)

    def test_eval(self, tmp_path, capsys):
        write_corpora(tmp_path / "c", count=3)
        assert main(["eval", str(tmp_path / "c"), *WN]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 1 + 15 + 40

    def test_eval_partial_failure(self, tmp_path, capsys):
        write_corpora(tmp_path / "c", count=1)
        (tmp_path / "c" / "zz.dep").write_text("garbage\n")
        assert main(["eval", str(tmp_path / "c"), *WN]) == 3
        assert "zz" in capsys.readouterr().err

    def test_cex_validate_and_convert(self, tmp_path, capsys):
        path = tmp_path / "sample.cex"
        path.write_text(CEX_SAMPLE)
        assert main(["cex", "validate", str(path)]) == 0
        assert "3 objects, 3 attributes, 2 incidences" in capsys.readouterr().out
        assert main(["cex", "convert", str(path)]) == 0
        csv_text = capsys.readouterr().out
        assert csv_text.splitlines()[0] == ",building,reference,allude"
        back = tmp_path / "sample.csv"
        back.write_text(csv_text)
        assert main(["cex", "convert", str(back)]) == 0
        assert capsys.readouterr().out == CEX_SAMPLE

    def test_input_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.dep"
        bad.write_text("ok(a-1, b-2)\nnot a triple\n")
        assert main(["ingest", str(bad)]) == 1
        assert "bad.dep:2" in capsys.readouterr().err

    def test_missing_file_exit(self, tmp_path):
        assert main(["stats", str(tmp_path / "nope.csv")]) == 1

    def test_missing_wordnet_exit(self, pairs_file, tmp_path, capsys):
        assert main(["run", str(pairs_file), "--order", "wn", "--out", str(tmp_path / "x")]) == 2
        assert "configuration error" in capsys.readouterr().err

    def test_bad_threshold_exit(self, pairs_file, tmp_path):
        assert main(["reduce", str(pairs_file), "--order", "freq", "--threshold", "150"]) == 2

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "latticeforge", "--version"],
                              capture_output=True, text=True, check=True)
        assert proc.stdout.startswith("latticeforge ")
