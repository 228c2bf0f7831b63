import csv
import io
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgauss import ParseError
from ellgauss.cli import main, parse_complex
from ellgauss.verify import format_complex


class TestParseComplex:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0.25+0.5i", 0.25 + 0.5j),
            ("1e-3-2.5i", 0.001 - 2.5j),
            ("1i", 1j),
            ("-1.5i", -1.5j),
            ("2", 2 + 0j),
            ("-2.75", -2.75 + 0j),
            ("+3.5e2i", 350j),
            ("0.3-0.4i", 0.3 - 0.4j),
            (".5+.25i", 0.5 + 0.25j),
        ],
    )
    def test_accepts(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize(
        "text,position",
        [
            ("i", 0),  # coefficient required
            ("", 0),
            ("+", 1),
            ("1+", 2),
            ("1+2", 3),
            ("1 + 2i", 1),
            ("2i3", 2),
            ("1+2i4", 4),
            ("abc", 0),
        ],
    )
    def test_rejects_with_position(self, text, position):
        with pytest.raises(ParseError) as err:
            parse_complex(text)
        assert err.value.position == position

    @given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e6))
    @settings(max_examples=100, deadline=None)
    def test_format_parse_round_trip(self, z):
        assert parse_complex(format_complex(z)) == z


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_half_period_z_vanishes(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "Z", "--tau", "1i", "--x", "0.5+0i"
        )
        assert code == 0
        payload = json.loads(out)
        value = complex(payload["value"]["re"], payload["value"]["im"])
        assert abs(value) <= 1e-12
        assert payload["function"] == "Z"
        assert payload["terms_used"] >= 1

    def test_antidiagonal_f_vanishes(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval", "--fn", "F", "--tau", "1.1i",
            "--x", "0.2+0.3i", "--y", "-0.2-0.3i",
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(complex(payload["value"]["re"], payload["value"]["im"])) <= 1e-11

    def test_pole_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--fn", "Z", "--tau", "1i", "--x", "0+0i")
        assert code == 3
        assert "TooCloseToPole" in err

    def test_missing_y_for_f_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--fn", "F", "--tau", "1.1i", "--x", "0.2+0.3i")
        assert code == 2

    def test_conflicting_lattice_inputs(self, capsys):
        code, _, _ = run_cli(
            capsys,
            "eval", "--fn", "Z", "--tau", "1i",
            "--omega1", "1", "--omega2", "1i", "--x", "0.5+0i",
        )
        assert code == 2

    def test_omega_pair_lattice(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval", "--fn", "zeta", "--omega1", "1", "--omega2", "1i", "--x", "0.5+0i",
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(complex(payload["value"]["re"], payload["value"]["im"]) - math.pi / 2) < 1e-11

    def test_theta_eval(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "theta00", "--tau", "1i", "--x", "0"
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["value"]["re"] - 1.086434811213308) < 1e-12
        assert payload["terms_used"] is None

    def test_malformed_complex_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "eval", "--fn", "Z", "--tau", "i", "--x", "0.5+0i")
        assert code == 2

    def test_json_round_trip_within_one_ulp(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "zeta", "--tau", "0.3+1.2i", "--x", "0.23+0.31i"
        )
        payload = json.loads(out)
        from ellgauss import make_lattice, zeta

        direct = zeta(make_lattice(1, 0.3 + 1.2j), 0.23 + 0.31j).value
        assert payload["value"]["re"] == direct.real
        assert payload["value"]["im"] == direct.imag

    def test_byte_identical_reruns(self, capsys):
        args = ("eval", "--fn", "wp", "--tau", "1i", "--x", "0.3+0.2i")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_plain_and_csv_formats(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "Z", "--tau", "1i", "--x", "0.3+0.2i",
            "--format", "plain",
        )
        assert code == 0 and "Z(" in out
        code, out, _ = run_cli(
            capsys, "eval", "--fn", "Z", "--tau", "1i", "--x", "0.3+0.2i",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "function" and rows[1][0] == "Z"


class TestVerify:
    def test_small_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2", "--tau", "1i")
        assert code == 0
        payload = json.loads(out)
        assert payload["overall_pass"] is True
        assert payload["coverage_complete"] is True

    def test_byte_identical_reruns(self, capsys):
        args = ("verify", "--n", "2", "--tau", "1i")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_bad_lattice_fails_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2", "--tau", "-1i")
        assert code == 1
        assert json.loads(out)["overall_pass"] is False


class TestBench:
    def test_csv_structure_and_monotonicity(self, capsys):
        code, out, _ = run_cli(capsys, "bench")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows, "bench produced no rows"
        by_method = {}
        for row in rows:
            key = (row["function"], row["method"])
            by_method.setdefault(key, []).append(row)
        for (fn, method), group in by_method.items():
            tols = [float(r["tol"]) for r in group]
            assert tols == sorted(tols, reverse=True)
            terms = [int(r["terms_used"]) for r in group]
            assert terms == sorted(terms), f"terms not monotone for {fn}/{method}"
        gaussian = [
            r for r in rows if r["function"] == "zeta" and r["method"] == "gaussian"
        ]
        tight = [r for r in gaussian if float(r["tol"]) == 1e-12][0]
        assert float(tight["achieved_error"]) <= 1e-12
        assert int(tight["terms_used"]) <= 300
        classical = [
            r for r in rows if r["function"] == "zeta" and r["method"] == "classical"
        ]
        # the R = 50 disk sum measures ~1e-7: five orders worse than the
        # Gaussian route at two orders more points
        worst = [r for r in classical if float(r["tol"]) == 1e-12][0]
        assert float(worst["achieved_error"]) >= 1e-8
        assert int(worst["terms_used"]) >= 7000


class TestTriple:
    def test_case_a(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "triple", "--case", "A", "--tau", "1.1i",
            "--u", "0.3+0.2i", "--v", "0.1+0.4i",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["residual"] <= 1e-8

    def test_case_b(self, capsys):
        code, out, _ = run_cli(
            capsys, "triple", "--case", "B", "--tau", "1.1i", "--v", "0.25+0.3i"
        )
        assert code == 0
        assert json.loads(out)["residual"] <= 1e-8

    def test_case_a_requires_u(self, capsys):
        code, _, _ = run_cli(capsys, "triple", "--case", "A", "--tau", "1.1i", "--v", "0.1i")
        assert code == 2

    def test_pole_is_numerical_error(self, capsys):
        code, _, err = run_cli(
            capsys, "triple", "--case", "B", "--tau", "1.1i", "--v", "0+0i"
        )
        assert code == 3


class TestUsage:
    def test_no_command(self, capsys):
        assert run_cli(capsys)[0] == 2

    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "eval", "--fn", "Z", "--frobnicate", "1")[0] == 2
