"""Regenerate the golden CLI corpus under tests/golden/.

Run after an intentional change to CLI output, then review the diff.
"""
import json
from pathlib import Path

from click.testing import CliRunner

from hiddensl2.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "verify_difference_half": ["verify", "--rep", "difference", "--delta", "1/2", "--n", "3", "--deg", "40"],
    "verify_differential": ["verify", "--rep", "differential", "--n", "0", "--deg", "10"],
    "verify_plain": ["--format", "plain", "verify", "--delta", "-2/3", "--n", "2", "--deg", "12"],
    "verify_delta_zero": ["verify", "--delta", "0"],
    "verify_deg_too_small": ["verify", "--n", "4", "--deg", "5"],
    "spectrum_hahn": ["spectrum", "--A1", "-1", "--A2", "1", "--A3", "-1", "--A4", "2", "--delta", "1", "--kmax", "3"],
    "spectrum_csv": ["spectrum", "--A1", "3/2", "--A3", "-1", "--A5", "1/3", "--delta", "-2/3", "--kmax", "4", "--format", "csv"],
    "spectrum_malformed": ["spectrum", "--A1", "1/x", "--kmax", "2"],
    "spectrum_float_rejected": ["spectrum", "--A1", "0.5", "--kmax", "2"],
    "eigenpoly_charlier": ["eigenpoly", "--A3", "-1", "--A4", "2", "--kmax", "3"],
    "eigenpoly_differential": ["eigenpoly", "--rep", "differential", "--A3", "-1", "--A4", "2", "--kmax", "2"],
    "eigenpoly_degenerate": ["eigenpoly", "--A1", "1", "--A3", "-3", "--delta", "1", "--kmax", "3"],
    "family_charlier": ["family", "--name", "charlier", "--mu", "2", "--k", "1", "--format", "json"],
    "family_hahn_points": ["family", "--name", "hahn", "--alpha", "0", "--beta", "0", "--N", "3", "--k", "2", "--dump-points", "0:2"],
    "family_meixner": ["family", "--name", "meixner", "--gamma", "1", "--mu", "1/2", "--k", "2"],
    "family_missing_flag": ["family", "--name", "hahn-tilde", "--mu", "0", "--k", "2"],
    "family_degenerate": ["family", "--name", "meixner", "--gamma", "1", "--mu", "1", "--k", "2"],
    "factor_hahn": ["factor", "--name", "hahn", "--alpha", "0", "--beta", "0", "--N", "3", "--k", "3"],
    "factor_hahn_N2": ["factor", "--name", "hahn", "--alpha", "0", "--beta", "0", "--N", "2", "--k", "3"],
    "factor_hahn_tilde": ["factor", "--name", "hahn-tilde", "--mu", "0", "--nu", "0", "--N", "2", "--k", "2"],
    "factor_bad_family": ["factor", "--name", "charlier", "--mu", "2", "--k", "3"],
    "isospectral_hahn": ["isospectral", "--A1", "-1", "--A2", "1", "--A3", "-1", "--A4", "2", "--kmax", "5"],
    "qes_pinned": ["qes", "--Aplus", "1", "--A3", "1", "--n", "1", "--delta", "1"],
    "qes_csv": ["qes", "--Aplus", "1", "--A1", "1/2", "--A3", "1", "--n", "2", "--delta", "1/2", "--format", "csv"],
    "qes_csv_not_for_polys": ["eigenpoly", "--A3", "-1", "--kmax", "1", "--format", "csv"],
}


def run(args, env=None):
    result = CliRunner().invoke(main, args, env=env or {}, prog_name="hiddensl2")
    return {"args": args, "env": env or {}, "exit_code": result.exit_code,
            "stdout": result.stdout, "stderr": result.stderr}


def main_():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    cases = dict(CASES)
    for name, args in cases.items():
        rec = run(args)
        (GOLDEN / f"{name}.json").write_text(json.dumps(rec, indent=2, ensure_ascii=False) + "\n")
    rec = run(["spectrum", "--A3", "-1", "--kmax", "2"], env={"HIDDENSL2_FORMAT": "plain"})
    (GOLDEN / "spectrum_env_plain.json").write_text(json.dumps(rec, indent=2) + "\n")
    print(f"wrote {len(cases) + 1} cases to {GOLDEN}")


if __name__ == "__main__":
    main_()
