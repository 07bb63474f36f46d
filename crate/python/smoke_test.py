"""Smoke test for the Python bindings.

Builds the extension in-place if needed, then exercises each exposed entry
point against values the Rust test suite pins down independently.

Run from the repository root (or anywhere):  python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def ensure_extension():
    target = HERE / "chebtrot_py.so"
    if target.exists():
        return
    subprocess.run(
        ["cargo", "build", "-p", "chebtrot-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "debug" / "libchebtrot_py.so"
    shutil.copy2(built, target)


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    ensure_extension()
    sys.path.insert(0, str(HERE))
    import chebtrot_py as ct

    # Two-spin transverse-field Ising chain: spectrum is ±1, ±sqrt(5).
    model = ct.Model.tfim(2, 1.0, 1.0)
    assert model.dim == 4
    assert model.num_terms == 3
    approx(model.norm_sum, 3.0)
    s5 = math.sqrt(5.0)
    for got, want in zip(model.spectrum(), [-s5, -1.0, 1.0, s5]):
        approx(got, want, 1e-10)
    approx(model.ground_energy(), -s5, 1e-10)

    # The same model through the other two constructors.
    terms = [(-1.0, "ZZ"), (-1.0, "XI"), (-1.0, "IX")]
    alt = ct.Model.from_terms(terms)
    approx(alt.ground_energy(), -s5, 1e-10)
    text = """{"num_qubits": 2, "terms": [
        {"coeff": -1.0, "pauli": "ZZ"},
        {"coeff": -1.0, "pauli": "XI"},
        {"coeff": -1.0, "pauli": "IX"}]}"""
    approx(ct.Model.from_json(text).ground_energy(), -s5, 1e-10)

    # Energy extrapolation sharpens geometrically and respects its bound.
    last = float("inf")
    for n in (2, 4, 6, 8):
        result = model.extrapolate_energy(2, 0.1, n)
        assert result.systematic_error < 0.5 * last
        assert len(result.node_values) == n // 2
        bound = model.truncation_bound(2, 0.1, n)
        if bound is not None:
            assert result.systematic_error <= bound
        last = result.systematic_error
    assert result.exponentials_total > 0

    # Expectation pipeline agrees with the exact Heisenberg evolution.
    exp = model.expectation(2, 0.1, 6, "ZI")
    assert exp.systematic_error < 1e-8

    # Distance estimate vs its direct computation.
    estimate, direct = model.trotter_error(2, 0.5, 6)
    assert abs(estimate - direct) <= 1e-3 * direct

    # Grid helpers: weights reproduce an even polynomial exactly and stay
    # below the stability factor.
    nodes = ct.chebyshev_nodes(4)
    weights = ct.extrapolation_weights(4)
    approx(sum(weights), 1.0, 1e-12)
    assert sum(abs(w) for w in weights) < ct.stability_factor(4)
    values = [3.0 + 2.0 * s * s for s in nodes]
    approx(ct.extrapolate_to_zero(values), 3.0, 1e-12)

    assert ct.step_count_bound(2) > 2.0
    assert ct.remainder_bound(4, 1.0, math.e) < ct.remainder_bound(2, 1.0, math.e)

    trunc, alias, renorm, total = ct.window_budget(6, 8, 8.0)
    assert 0.0 <= alias <= trunc
    approx(total, trunc + alias + renorm, 1e-15)
    assert total < 1.0

    print("PASS")


if __name__ == "__main__":
    main()
