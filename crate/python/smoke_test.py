"""Smoke test for the `detfglm` extension module.

Build and run from the repository root:

    cargo build -p detfglm-py --release
    cp target/release/libdetfglm.so python/detfglm.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import detfglm


def main():
    h = detfglm.hilbert_series(3, 2, 3)
    assert h == [1, 3, 6, 8, 8, 6, 3, 1], h
    assert detfglm.hilbert_determinant(3, 2, 3) == h
    assert detfglm.ideal_degree(3, 2, 3) == sum(h) == 36
    assert detfglm.m_exact(3, 2, 3) == 8
    assert detfglm.is_unimodal(h) == 3
    assert detfglm.is_unimodal([1, 0, 1]) is None

    big = detfglm.ideal_degree(8, 4, 20)
    assert big == 131902299021080039424 and isinstance(big, int)

    assert detfglm.m_closed_d2(4, 10) == detfglm.m_exact(2, 4, 10) == 426
    real, ceiling = detfglm.m_asymptotic(4, 2, 5)
    assert ceiling == 366 and math.ceil(real) == ceiling

    assert detfglm.hq(2, 2, 4, 1) == [1, 3, 1]
    assert detfglm.section(2, 2, 4, 0) == detfglm.hq(2, 2, 4, 1)

    params = detfglm.SystemParams(3, 2, 3)
    assert params.ideal_degree() == 36 and params.hilbert_series() == h
    assert params == detfglm.SystemParams(3, 2, 3)

    pred = detfglm.predict(4, 2, 5)
    assert pred["m_exact"] == 266 and pred["m_asymptotic_int"] == 366

    rows = detfglm.table()
    assert len(rows) == 10 and all(r["degree_match"] for r in rows)

    fig = detfglm.figure(4, 2, 6, 6)
    assert abs(fig[0]["ln_m_exact"] - math.log(detfglm.m_exact(4, 2, 6))) < 1e-9

    reports = detfglm.verify(2, 2, 4, [1, 2])
    assert [r["passed"] for r in reports] == [True, True]
    assert reports[0]["nontrivial_columns"] == 5
    ext = detfglm.verify(3, 2, 3, [4], extend=True)
    assert ext[0]["passed"] and ext[0]["min_poly_degree"] == 36

    for call, exc in [
        (lambda: detfglm.hilbert_series(1, 1, 2), ValueError),
        (lambda: detfglm.m_closed_d2(2, 2) and detfglm.m_asymptotic(2, 2, 4), ValueError),
        (lambda: detfglm.verify(3, 2, 4, [1], max_degree_guard=50), ValueError),
        (lambda: detfglm.verify(3, 2, 3, [1], prime=91), ValueError),
    ]:
        try:
            call()
        except exc:
            pass
        else:
            raise AssertionError("expected " + exc.__name__)

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
