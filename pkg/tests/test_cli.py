import json
import os

from margraph.cli import main
from margraph.model_io import dump_json

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fixture(name):
    return os.path.join(FIXTURE_DIR, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestMarginalizeGraph:
    def test_two_chains(self, capsys):
        doc = run_json(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                       "--keep", "V1,V3,V5")
        assert doc["marginal_graph"]["edges"] == [["V1", "V3"]]
        assert doc["marginal_graph"]["vertices"] == ["V1", "V3", "V5"]

    def test_keep_everything_echoes_input(self, capsys):
        doc = run_json(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                       "--keep", "V1,V2,V3,V4,V5,V6")
        assert doc["marginal_graph"]["edges"] == [
            ["V1", "V2"], ["V2", "V3"], ["V4", "V5"], ["V5", "V6"]]

    def test_damage_subset(self, capsys):
        keep = ",".join(f"X{k}" for k in (1, 2, 3, 4, 6, 8, 9, 10, 11, 12, 18, 19, 20, 21, 24))
        doc = run_json(capsys, "marginalize-graph", fixture("damage_graph.json"),
                       "--keep", keep)
        edges = {tuple(e) for e in doc["marginal_graph"]["edges"]}
        assert ("X2", "X8") in edges
        subgraph_edges = {("X1", "X2"), ("X1", "X9"), ("X1", "X10"), ("X2", "X3"),
                          ("X2", "X4"), ("X2", "X6"), ("X3", "X8"), ("X3", "X11"),
                          ("X3", "X12"), ("X3", "X21"), ("X4", "X8"), ("X4", "X24"),
                          ("X6", "X8"), ("X8", "X18"), ("X8", "X19"), ("X8", "X20")}
        assert edges == subgraph_edges | {("X2", "X8")}

    def test_dot_output(self, capsys):
        code, out, err = run(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                             "--keep", "V1,V3,V5", "--format", "dot")
        assert code == 0
        assert '"V1" -- "V3";' in out
        assert out.startswith("graph marginal {")

    def test_wrong_model_kind(self, capsys):
        code, out, err = run(capsys, "marginalize-graph", fixture("chain_potential.json"),
                             "--keep", "V1")
        assert code == 2 and "graph model" in err

    def test_unknown_label_lists_offender(self, capsys):
        code, out, err = run(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                             "--keep", "V1,NOPE")
        assert code == 2 and "NOPE" in err

    def test_empty_subset_rejected(self, capsys):
        code, out, err = run(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                             "--keep", " , ")
        assert code == 2 and "non-empty" in err


class TestMarginalizeHypergraph:
    def test_base_chain_model(self, capsys):
        doc = run_json(capsys, "marginalize-hypergraph", fixture("chain_potential.json"),
                       "--keep", "V1,V3,V5")
        got = {tuple(e) for e in doc["marginal_hypergraph"]}
        assert got == {("V1",), ("V3",), ("V1", "V3"), ("V5",)}
        assert doc["marginal_graph"]["edges"] == [["V1", "V3"]]
        assert doc["collapsible"] == {"graphical": False, "parametric": False}

    def test_cancelling_family(self, capsys):
        doc = run_json(capsys, "marginalize-hypergraph",
                       fixture("chain_potential_cancelling.json"), "--keep", "V1,V3,V5")
        assert {tuple(e) for e in doc["marginal_hypergraph"]} == {("V1",), ("V3",), ("V5",)}
        assert doc["removed"] == [["V1", "V3"]]
        assert doc["marginal_graph"]["edges"] == []

    def test_dot_output_of_marginal_graph(self, capsys):
        code, out, err = run(capsys, "marginalize-hypergraph", fixture("chain_potential.json"),
                             "--keep", "V1,V3,V5", "--format", "dot")
        assert code == 0
        assert '"V1" -- "V3";' in out

    def test_emit_potential(self, capsys):
        doc = run_json(capsys, "marginalize-hypergraph", fixture("chain_potential.json"),
                       "--keep", "V1,V3,V5", "--emit-potential")
        members = doc["marginal_potential"]["members"]
        assert len(members) == 1
        scopes = [tuple(i["scope"]) for i in members[0]["interactions"]]
        assert ("V1", "V3") in scopes

    def test_tolerance_flag_reaches_the_engine(self, capsys):
        # an absurdly large null tolerance wipes every interaction
        doc = run_json(capsys, "marginalize-hypergraph", fixture("chain_potential.json"),
                       "--keep", "V1,V3,V5", "--tolerance", "10")
        assert doc["marginal_hypergraph"] == []
        assert doc["diagnostics"]["null_tolerance"] == 10.0

    def test_non_normalized_input_notice_and_strict(self, capsys, tmp_path):
        doc = {
            "format_version": 1,
            "variables": [{"label": "A"}, {"label": "B"}],
            "potential": {"interactions": [
                {"scope": ["A", "B"], "table": [0.5, 0.5, 0.5, 1.5]}]},
        }
        path = tmp_path / "raw.json"
        path.write_text(dump_json(doc))
        code, out, err = run(capsys, "marginalize-hypergraph", str(path), "--keep", "A")
        assert code == 0 and "normalizing" in err
        assert json.loads(out)["diagnostics"]["normalized_input"] is True
        code, out, err = run(capsys, "marginalize-hypergraph", str(path),
                             "--keep", "A", "--strict")
        assert code == 2 and "not normalized" in err


class TestMarginalizeGaussian:
    def test_damage_innovation_entry(self, capsys):
        keep = ",".join(f"X{k}" for k in (1, 2, 3, 4, 6, 8, 9, 10, 11, 12, 18, 19, 20, 21, 24))
        doc = run_json(capsys, "marginalize-gaussian", fixture("damage_gaussian.json"),
                       "--keep", keep)
        kept_labels = doc["marginal_graph"]["vertices"]
        i = kept_labels.index("X2")
        j = kept_labels.index("X8")
        assert abs(doc["innovation_matrix"][i][j]) > 1e-9
        assert ["X2", "X8"] in doc["marginal_graph"]["edges"]

    def test_identity_precision(self, capsys, tmp_path):
        doc = {
            "format_version": 1,
            "variables": [{"label": "A"}, {"label": "B"}, {"label": "C"}],
            "gaussian": {"mean": [1.0, 2.0, 3.0],
                         "precision": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]},
        }
        path = tmp_path / "id.json"
        path.write_text(dump_json(doc))
        out = run_json(capsys, "marginalize-gaussian", str(path), "--keep", "A,C")
        assert out["marginal"]["precision"] == [[1.0, 0.0], [0.0, 1.0]]
        assert out["marginal"]["mean"] == [1.0, 3.0]
        assert out["marginal_graph"]["edges"] == []

    def test_tuned_fixture_drops_edge_graph_keeps_it(self, capsys):
        keep = ",".join(f"X{k}" for k in (1, 2, 3, 4, 6, 8, 9, 10, 11, 12, 18, 19, 20, 21, 24))
        doc = run_json(capsys, "marginalize-gaussian", fixture("damage_gaussian_tuned.json"),
                       "--keep", keep)
        assert ["X2", "X4"] not in doc["marginal_graph"]["edges"]
        graph_doc = run_json(capsys, "marginalize-graph", fixture("damage_graph.json"),
                             "--keep", keep)
        assert ["X2", "X4"] in graph_doc["marginal_graph"]["edges"]

    def test_non_spd_input_names_check(self, capsys, tmp_path):
        doc = {
            "format_version": 1,
            "variables": [{"label": "A"}, {"label": "B"}],
            "gaussian": {"mean": [0.0, 0.0], "precision": [[1.0, 3.0], [3.0, 1.0]]},
        }
        path = tmp_path / "bad.json"
        path.write_text(dump_json(doc))
        code, out, err = run(capsys, "marginalize-gaussian", str(path), "--keep", "A")
        assert code == 2 and "positive definite" in err


class TestCheckCollapsibility:
    def test_base_chain_model(self, capsys):
        doc = run_json(capsys, "check-collapsibility", fixture("chain_potential.json"),
                       "--keep", "V1,V3,V5")
        assert doc["collapsible"] == {"graphical": False, "parametric": False}
        assert doc["witnesses"]["graphical"] == ["V1", "V3"]
        assert doc["witnesses"]["parametric"] is not None

    def test_keep_everything_is_collapsible(self, capsys):
        doc = run_json(capsys, "check-collapsibility", fixture("chain_potential.json"),
                       "--keep", "V1,V2,V3,V4,V5,V6")
        assert doc["collapsible"] == {"graphical": True, "parametric": True}
        assert doc["witnesses"] == {"graphical": None, "parametric": None}

    def test_isolated_eliminated_variables_are_parametrically_collapsible(
            self, capsys, tmp_path):
        doc = {
            "format_version": 1,
            "variables": [{"label": "A"}, {"label": "B"}, {"label": "C"}],
            "potential": {"interactions": [
                {"scope": ["A", "B"], "table": [0.0, 0.0, 0.0, 1.0]}]},
        }
        path = tmp_path / "iso.json"
        path.write_text(dump_json(doc))
        out = run_json(capsys, "check-collapsibility", str(path), "--keep", "A,B")
        assert out["collapsible"]["parametric"] is True


class TestOracleVerify:
    def test_fixture_passes(self, capsys):
        doc = run_json(capsys, "oracle-verify", fixture("chain_potential_cancelling.json"),
                       "--keep", "V1,V3,V5")
        assert doc["passed"] is True
        assert all(c["passed"] for c in doc["checks"])

    def test_resource_limit_exits_3(self, capsys, tmp_path):
        doc = {
            "format_version": 1,
            "variables": [{"label": f"A{k}"} for k in range(21)],
            "potential": {"interactions": [
                {"scope": ["A0", "A1"], "table": [0.0, 0.0, 0.0, 1.0]}]},
        }
        path = tmp_path / "big.json"
        path.write_text(dump_json(doc))
        code, out, err = run(capsys, "oracle-verify", str(path), "--keep", "A0")
        assert code == 3 and "state space" in err


class TestOutputContract:
    def test_byte_identical_repeated_runs(self, capsys):
        args = ("marginalize-hypergraph", fixture("chain_potential_cancelling.json"),
                "--keep", "V1,V3,V5", "--emit-potential")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_result_document_round_trips(self, capsys):
        code, out, _ = run(capsys, "marginalize-gaussian", fixture("damage_gaussian.json"),
                           "--keep", "X1,X2,X8")
        assert code == 0
        doc = json.loads(out)
        assert json.dumps(doc, indent=2) + "\n" == out

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "result.json"
        code, out, err = run(capsys, "marginalize-graph", fixture("two_chains_graph.json"),
                             "--keep", "V1,V3,V5", "--output", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["marginal_graph"]["edges"] == [["V1", "V3"]]

    def test_parse_error_exits_2(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, out, err = run(capsys, "marginalize-graph", str(path), "--keep", "A")
        assert code == 2 and "error:" in err
