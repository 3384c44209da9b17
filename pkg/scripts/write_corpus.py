"""Write the named corpus as MatroidExpr JSON files (default: corpus/v1)."""
import argparse
from pathlib import Path

from tanglekit import corpus

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("out", nargs="?", default=str(Path(__file__).resolve().parent.parent / "corpus" / "v1"))
args = ap.parse_args()
for path in corpus.write_corpus(args.out):
    print(path)
