"""Regenerate the shipped subgroup catalogs under src/subext/data/v1."""

from __future__ import annotations

import json
from pathlib import Path

from subext.casework import CATALOG_VERSION, build_candidates, build_catalogs, catalog_json

OUT = Path(__file__).resolve().parents[1] / "src" / "subext" / "data" / CATALOG_VERSION


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in (("maximal", build_catalogs()), ("candidates", build_candidates())):
        payload = {str(n): catalog_json(entries) for n, entries in sorted(data.items())}
        (OUT / f"{name}.json").write_text(json.dumps(payload, indent=1) + "\n")
        for n, entries in sorted(data.items()):
            print(name, n, [(e.name, e.order, e.index) for e in entries])


if __name__ == "__main__":
    main()
