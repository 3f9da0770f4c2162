#!/usr/bin/env python3
"""Run the full acceptance matrix and print one line per criterion.

Exit status is 0 only if every criterion passes.  Equivalent to
`toricover selftest`, kept as a plain script for quick iteration.
"""

import sys
import time

from toricover import acceptance


def main() -> int:
    t0 = time.time()
    ok = True
    for fn in acceptance.ALL_CRITERIA:
        t = time.time()
        result = fn()
        ok &= result.ok
        status = "PASS" if result.ok else "FAIL"
        print(f"{status}  {result.name:<22} {time.time() - t:6.2f}s  {result.detail}")
    print(f"{'OK' if ok else 'FAILED'} in {time.time() - t0:.1f}s")
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
