"""Writes fixtures/torus_z2.json: orbifold cohomology of a 2-torus mod the
involution (z, w) -> (-z, -w), with metric eta(phi_k, phi_{k^c}) = 1/2."""
import json
import pathlib

N = 24
comp = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5, 7: 8, 8: 7}
comp.update({k: k for k in range(9, N + 1)})
lab = lambda k: f"phi{k}"
deg = lambda k: "0" if k == 1 else "4" if k == 2 else "2"

structure = {}
for k in range(1, N + 1):
    structure[(1, k)] = k
    structure[(k, 1)] = k
    structure[(k, comp[k])] = 2

doc = {
    "name": "torus_z2",
    "d": "2",
    "basis": [{"label": lab(k), "degree": deg(k)} for k in range(1, N + 1)],
    "unit": [[lab(1), "1"]],
    "metric": [[lab(k), lab(comp[k]), "1/2"] for k in range(1, N + 1)],
    "structure": [[lab(a), lab(b), lab(c), "1"] for (a, b), c in sorted(structure.items())],
}
out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "torus_z2.json"
out.write_text(json.dumps(doc, indent=1) + "\n")
print(out)
