"""Series input and the coefficient-sum criterion.

Writes G and H as JSON series files, then asks the command-line tool for the
largest radius where the weighted coefficient sum stays below one.
"""

import json
import tempfile
from pathlib import Path

from landau_kit import SeriesFunction, lemma4_radius
from landau_kit.cli import main

with tempfile.TemporaryDirectory() as tmp:
    g = SeriesFunction([0, 0.4, 0.1j])
    h = SeriesFunction([0, 1, -0.25, 0.05])
    gp, hp, out = Path(tmp, "g.json"), Path(tmp, "h.json"), Path(tmp, "report.json")
    gp.write_text(g.to_json())
    hp.write_text(h.to_json())

    code = main(["certify", "--series", str(gp), str(hp), "--checks", "lemma4", "-o", str(out)])
    rep = json.loads(out.read_text())["reports"][0]
    print(f"exit {code}: verified radius {rep['measured']:.12f}")
    print(f"library call gives {lemma4_radius(g, h):.12f}")

    code = main(["certify", "--series", str(gp), str(hp), "--at-theorem-radius",
                 "--checks", "inj,jac,star", "-o", str(out)])
    for r in json.loads(out.read_text())["reports"]:
        print(f"  {r['kind']:<11} {r['verdict']}  measured={r['measured']:.4g}")
