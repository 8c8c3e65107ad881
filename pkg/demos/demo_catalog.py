"""Sweep every small topology: enumeration, fingerprints, and the law suite."""

from collections import Counter

from topoforge import enumerate_topologies, fingerprint, run_suite
from topoforge.catalog import SuiteConfig, canonical_hash

# Backtracking enumeration with closure propagation; the counts match the
# brute-force filter and, for labeled spaces, the preorder counts.
for n in range(1, 5):
    labeled = sum(1 for _ in enumerate_topologies(n))
    unlabeled = sum(1 for _ in enumerate_topologies(n, "unlabeled"))
    print(f"n = {n}: {labeled} labeled topologies, {unlabeled} up to homeomorphism")

# Fingerprints bundle every invariant; relabeling-stable hashes make
# homeomorphism a string comparison.
records = [fingerprint(sp) for sp in enumerate_topologies(3)]
print("\ndistinct hashes among 29 labeled spaces on 3 points:",
      len({r.canonical_hash for r in records}))

print("D verdicts:", Counter(r.fingerprint.is_d for r in records))
print("aD everywhere:", all(r.fingerprint.is_ad for r in records))
separations = [r for r in records if r.fingerprint.is_ad and r.fingerprint.is_d == "no"]
print("aD but not D:", len(separations), "spaces, e.g. opens =",
      [tuple(sorted(m for m in r.space.opens)) for r in separations[:1]])

# One record per line is the catalog file format; here is one in full.
print("\nsample record:", records[0].to_json())

# Relabeled copies of the same space hash identically.
from topoforge.space import FiniteSpace, sierpinski

flipped = FiniteSpace.from_opens(2, [0b00, 0b10, 0b11])
print("\nSierpinski and its relabeling share a hash:",
      canonical_hash(sierpinski()) == canonical_hash(flipped))

# The suite replays every law over the catalog and prints a table; a
# violation anywhere flips the exit code.
report = run_suite(SuiteConfig(max_n=2))
print("\nsuite over n <= 2:")
print(report.table())
assert report.ok
