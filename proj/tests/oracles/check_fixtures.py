"""Recomputes every fixture row with the reference oracle."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))
from ut_oracle import VERSIONS, content_hash_value, encode  # noqa: E402

try:
    import blake3  # noqa: F401
except ImportError:
    print("python blake3 not installed; skipping")
    sys.exit(77)

root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parents[2] / "fixtures")
bad = 0

rows = (root / "digests.tsv").read_text().splitlines()[1:]
for line in rows:
    version, r, digest = line.split("\t")
    p, L = VERSIONS[version]
    if encode(int(r), p, L) != digest:
        print("digest mismatch:", line)
        bad += 1

gen = (root / "gen.tsv").read_text().splitlines()[1:]
for line in gen:
    version, kind, content_hex, digest = line.split("\t")
    p, L = VERSIONS[version]
    h = content_hash_value(bytes.fromhex(content_hex), p)
    if kind == "value":
        r = h % p**4
    else:
        r = h + p**4 if h < p**4 else h
    if encode(r, p, L) != digest:
        print("gen mismatch:", version, kind, content_hex[:16])
        bad += 1

print(f"{len(rows)} digest rows, {len(gen)} gen rows, {bad} mismatches")
sys.exit(1 if bad else 0)
