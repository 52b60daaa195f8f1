#!/usr/bin/env python3
"""Recomputes the corpus Avg.Tok from cleaned files with a regex filter and
compares it with `svgx stats`.

usage: avg_tok_oracle.py <svgx> <raw-dir>
"""
import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path


def avg_tok(data: bytes) -> int:
    return len(re.sub(rb"\s", b"", re.sub(rb"<!--.*?-->", b"", data, flags=re.S)))


def main():
    cli, raw = sys.argv[1], sys.argv[2]
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([cli, "clean", "--in", raw, "--out", tmp], check=True, stderr=subprocess.DEVNULL)
        cleaned = sorted(Path(tmp).glob("*.svg"))
        total = sum(avg_tok(p.read_bytes()) for p in cleaned)
        stats = json.loads(subprocess.run([cli, "stats", "--in", raw], check=True,
                                          capture_output=True).stdout)
    ok = stats["documents"] == len(cleaned) and stats["avg_tok_total"] == total
    print(f"oracle total={total} docs={len(cleaned)} mean={total / max(len(cleaned), 1):.6f}; "
          f"svgx total={stats['avg_tok_total']} docs={stats['documents']} mean={stats['avg_tok_mean']:.6f}")
    # Both means are total / documents; equal totals and counts give equal means.
    ok = ok and abs(stats["avg_tok_mean"] - total / len(cleaned)) == 0
    print("PASS" if ok else "FAIL")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
