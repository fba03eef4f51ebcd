import json

from zombieodds.report import (
    TABLE_HEADER,
    save_distribution_figure,
    save_table_figure,
    save_tournament_figure,
    table_csv_lines,
    write_table_csv,
    write_table_json,
    write_tournament_csv,
    write_tournament_json,
)
from zombieodds.model import ColorCounts, FULL_CUP
from zombieodds.rolls import brain_dist, shotgun_dist
from zombieodds.simulate import run_tournament
from zombieodds.strategy import parse_policy


class TestTableExport:
    def test_csv_header_and_shape(self, table, tmp_path):
        out = tmp_path / "table.csv"
        write_table_csv(table, out)
        lines = out.read_text().strip().split("\n")
        assert lines[0] == TABLE_HEADER
        assert len(lines) == len(table) + 1
        first = lines[1].split(",")
        assert len(first) == 9
        # six decimal places in every decision cell
        for cell in first[6:]:
            assert len(cell.split(".")[1]) == 6

    def test_fresh_cup_row_present(self, table, tmp_path):
        out = tmp_path / "table.csv"
        write_table_csv(table, out)
        assert any(
            line.startswith("3,4,6,0,0,0,") for line in out.read_text().split("\n")
        )

    def test_csv_and_json_encode_identical_values(self, table, tmp_path):
        csv_path = tmp_path / "t.csv"
        json_path = tmp_path / "t.json"
        write_table_csv(table, csv_path)
        write_table_json(table, json_path)
        records = json.loads(json_path.read_text())
        lines = csv_path.read_text().strip().split("\n")[1:]
        assert len(records) == len(lines)
        for line, rec in zip(lines, records):
            parts = line.split(",")
            assert [int(x) for x in parts[:6]] == [
                rec["r_cup"], rec["y_cup"], rec["g_cup"],
                rec["r_fp"], rec["y_fp"], rec["g_fp"],
            ]
            for i, col in enumerate(("decision_sg0", "decision_sg1", "decision_sg2")):
                assert float(parts[6 + i]) == rec[col]

    def test_sample_row_greppable(self, table, tmp_path):
        out = tmp_path / "table.csv"
        write_table_csv(table, out)
        matches = [
            line for line in out.read_text().split("\n")
            if line.startswith("2,3,1,1,0,1,")
        ]
        assert len(matches) == 1


class TestFigures:
    def test_distribution_figure(self, tmp_path):
        bd = brain_dist(FULL_CUP, ColorCounts())
        sd = shotgun_dist(FULL_CUP, ColorCounts())
        out = save_distribution_figure(
            bd.probabilities, sd.probabilities, tmp_path / "dist.png"
        )
        assert out.exists() and out.stat().st_size > 1000

    def test_table_figure(self, table, tmp_path):
        out = save_table_figure(table, tmp_path / "table.png")
        assert out.exists() and out.stat().st_size > 1000

    def test_tournament_figure_and_exports(self, solver, tmp_path):
        summary = run_tournament(
            [parse_policy("table"), parse_policy("simple")],
            games=50, seed=5, solver=solver,
        )
        fig = save_tournament_figure(summary, tmp_path / "tourney.png")
        assert fig.exists() and fig.stat().st_size > 1000
        write_tournament_json(summary, tmp_path / "t.json")
        write_tournament_csv(summary, tmp_path / "t.csv")
        data = json.loads((tmp_path / "t.json").read_text())
        assert data["games"] == 50
        lines = (tmp_path / "t.csv").read_text().strip().split("\n")
        assert len(lines) == 3  # header + two policies
