"""Rewrite tests/golden/*.txt from the current CLI output.

Run only after checking a behaviour change by hand:

    python scripts/regen_golden.py
"""

import contextlib
import io
import shlex
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402
from orbitcones.cli import main  # noqa: E402


def capture(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue() + err.getvalue()


if __name__ == "__main__":
    golden = ROOT / "tests" / "golden"
    golden.mkdir(exist_ok=True)
    for name, cmd in CASES.items():
        code, text = capture(shlex.split(cmd))
        (golden / f"{name}.txt").write_text(f"exit {code}\n{text}")
        print(f"{name:16s} exit {code}")
