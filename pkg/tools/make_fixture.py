"""Regenerate src/flatiso/fixtures/heisenberg_r14_7.json from its block data."""

import json
from pathlib import Path

from flatiso.exactlin import Matrix

Z = Matrix.zeros
I = Matrix.identity
Itilde = Matrix.diagonal([1, 1, -1, -1])
B1 = Matrix([[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, -1, 0, 0, 0], [-1, 0, 0, 0, 0]])
C1 = Matrix([[0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, -1], [0, 0, 0, 0, 0], [0, 0, 1, 0, 0]])
u1 = [0, 0, 0, -1, 0]
B2 = Matrix([[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [-1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
C2 = Matrix([[0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, -1], [0, 0, 0, 1, 0]])
u2 = [0, 0, 1, 0, 0]


def linear(B, C):
    return Matrix.block([[I(5), -(B.T @ Itilde), C], [Z(4, 5), I(4), B], [Z(5, 5), Z(5, 4), I(5)]])


gram = Matrix.block([[Z(5, 5), Z(5, 4), I(5)], [Z(4, 5), Itilde, Z(4, 5)], [I(5), Z(5, 4), Z(5, 5)]])
doc = {
    "format": "flatiso-group",
    "version": 1,
    "description": "Two-generator discrete Heisenberg group in R^14_7 with non-abelian linear holonomy, "
    "written in a Witt basis U0 (5) + W (4) + U0* (5).",
    "gram": gram.to_strings(),
    "linear": "full",
    "generators": [
        {"name": "gamma1", "linear": linear(B1, C1).to_strings(), "translation": [str(x) for x in [0] * 9 + u1]},
        {"name": "gamma2", "linear": linear(B2, C2).to_strings(), "translation": [str(x) for x in [0] * 9 + u2]},
    ],
}
out = Path(__file__).resolve().parents[1] / "src" / "flatiso" / "fixtures" / "heisenberg_r14_7.json"
out.write_text(json.dumps(doc, indent=1) + "\n")
print(out)
