"""Drive the command-line verify battery twice and diff the bytes.

The reports are fully deterministic: exact rationals, no timestamps.  Two
runs with the same seed must agree byte for byte — this script checks that
directly, the same way the acceptance suite does.
"""

import sys
import tempfile
from pathlib import Path

from voalab.cli import main

if __name__ == "__main__":
    seed = sys.argv[1] if len(sys.argv) > 1 else "0"
    with tempfile.TemporaryDirectory() as tmp:
        a = Path(tmp) / "first.txt"
        b = Path(tmp) / "second.txt"
        code1 = main(["verify", "--seed", seed, "--out", str(a)])
        code2 = main(["verify", "--seed", seed, "--out", str(b)])
        text = a.read_text()
        print(text)
        same = a.read_bytes() == b.read_bytes()
        print("exit codes: %d, %d" % (code1, code2))
        print("byte-identical across runs:", same)
        if not same or code1 or code2:
            sys.exit(1)
