#!/usr/bin/env python3
"""Download the freely available corpora the integration tests query.

Usage: python3 scripts/fetch_corpora.py [target-dir]   (default: ./corpora)

Downloads go to:
    corpora/amr-bank-struct-v3.0.txt      The Little Prince AMR v3.0
    corpora/amr-release-bio-v3.0.txt      BioAMR v3.0
    corpora/pmb-4.0.0/                    PMB 4.0.0 gold (unzipped)

The corpus-dependent tests skip with a pointer here when these are absent;
nothing else in the package fetches from the network.
"""

import io
import sys
import urllib.request
import zipfile
from pathlib import Path

DOWNLOADS = {
    "amr-bank-struct-v3.0.txt":
        "https://amr.isi.edu/download/amr-bank-struct-v3.0.txt",
    "amr-release-bio-v3.0.txt":
        "https://amr.isi.edu/download/2018-01-25/amr-release-bio-v3.0.txt",
}

# unzips to pmb-4.0.0/data/{en,de,it,nl}/gold/...
PMB_ZIP = "https://pmb.let.rug.nl/releases/pmb-4.0.0.zip"


def fetch(url: str, target: Path) -> None:
    if target.exists():
        print(f"already present: {target}")
        return
    print(f"downloading {url}")
    with urllib.request.urlopen(url) as resp:
        target.write_bytes(resp.read())
    print(f"wrote {target}")


def main() -> int:
    root = Path(sys.argv[1] if len(sys.argv) > 1 else "corpora")
    root.mkdir(parents=True, exist_ok=True)
    for name, url in DOWNLOADS.items():
        fetch(url, root / name)
    pmb_root = root / "pmb-4.0.0"
    if pmb_root.exists():
        print(f"already present: {pmb_root}")
    else:
        print(f"downloading {PMB_ZIP} (large, be patient)")
        with urllib.request.urlopen(PMB_ZIP) as resp:
            data = resp.read()
        with zipfile.ZipFile(io.BytesIO(data)) as zf:
            zf.extractall(root)
        print(f"unpacked into {pmb_root}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
