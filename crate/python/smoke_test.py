"""Smoke test for the `fzkit` Python module.

Builds the extension with cargo (unless FZKIT_SO points at a built one),
imports it and checks a handful of exact values.

    python3 python/smoke_test.py
"""

import importlib.util
import os
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "fzkit-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = Path(os.environ.get("CARGO_TARGET_DIR", ROOT / "target"))
    for name in ("libfzkit_py.so", "libfzkit_py.dylib", "fzkit_py.dll"):
        p = target / "release" / name
        if p.exists():
            return p
    sys.exit("built library not found under " + str(target / "release"))


def load(lib: Path):
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    staged = Path(tempfile.mkdtemp()) / ("fzkit" + suffix)
    shutil.copy(lib, staged)
    spec = importlib.util.spec_from_file_location("fzkit", staged)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> None:
    lib = Path(os.environ["FZKIT_SO"]) if "FZKIT_SO" in os.environ else build()
    fz = load(lib)
    assert fz.FAMILIES == ["cxp2", "ccc", "cxjac"], fz.FAMILIES

    jac = fz.Family("cxjac", s=Fraction(1, 2))
    assert jac.mu() == "5/4"
    assert jac.volume(0) == "3/4"
    assert jac.seshadri() == "1/2"
    assert jac.area_check() == ("strict", "1/2", "59/126")
    assert Fraction(jac.body_volume()) * 6 == Fraction(3, 4)

    ccc = fz.Family("ccc", d1=1, d2=1, d3=1)
    assert len(ccc.body_vertices()) == 4
    assert [ccc.volume(t) for t in range(4)] == ["6", "5", "1", "0"]

    cxp2 = fz.Family("cxp2", a=3, b=2)
    pieces = cxp2.volume_pieces()
    assert pieces[0][:2] == ("0", "2") and pieces[0][2] == ["36", "0", "0", "-1"], pieces
    pos, neg = cxp2.psigma("5/2")
    assert all(Fraction(c) > 0 for c in neg.values())
    assert len(cxp2.slice("1")) >= 3

    p, n = fz.zariski("genus2_jacobian", ["1", "-7/5"])
    assert p == ["3/5", "-4/5"] and n == {"Rbar": "1/10"}
    assert len(fz.glue_vertices("cxjac")) == 7

    for bad in (lambda: fz.Family("cxjac", s="0.5"), lambda: fz.Family("ccc", d1=1, d2=2, d3=3),
                lambda: jac.volume(2), lambda: fz.glue_vertices("ccc")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    rows = fz.check("surfaces")
    assert [r[0] for r in rows] == [1, 2, 3] and all(r[2] for r in rows), rows
    print("python smoke test passed")


if __name__ == "__main__":
    main()
