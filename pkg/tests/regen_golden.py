"""Rewrite tests/golden/*.out from the current CLI.

Run from the repository root: ``python3 tests/regen_golden.py``.  Review the
diff before committing; golden files are the reference outputs.
"""
import io
import re
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from cli_cases import CASES  # noqa: E402
from symba.cli import run  # noqa: E402

WALL = re.compile(r'"wall_time": "[0-9.]+"')


def normalize(text: str) -> str:
    return WALL.sub('"wall_time": "<elided>"', text)


def capture(argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def main() -> int:
    out_dir = HERE / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, argv in CASES:
        code, text = capture(argv)
        (out_dir / f"{name}.out").write_text(normalize(text))
        print(f"{code}  {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
