import numpy as np
import pytest

from brnr.catalog import (
    abelian,
    alternating,
    cyclic,
    dihedral,
    quaternion,
    symmetric,
)
from brnr.cohomology import QMODZ, Zmod, h2
from brnr.errors import OrderCapExceeded
from brnr.oracle import (
    _Howell,
    certify,
    h2_dense,
    h2_dense_qmodz,
    sweep,
    sweep_to_json,
)


class TestHowell:
    def test_span_size_plain(self):
        ech = _Howell(3, 2, 2)  # Z/4
        ech.insert(np.array([1, 2, 3]))
        assert ech.span_size() == 4

    def test_annihilator_closure(self):
        # row (2, 1) over Z/4: 2*(2,1) = (0,2) must be in the span
        ech = _Howell(2, 2, 2)
        ech.insert(np.array([2, 1]))
        assert not np.any(ech.reduce(np.array([0, 2])))
        assert np.any(ech.reduce(np.array([0, 1])))

    def test_membership(self):
        ech = _Howell(3, 3, 2)  # Z/9
        ech.insert(np.array([3, 1, 0]))
        ech.insert(np.array([0, 3, 1]))
        assert not np.any(ech.reduce(np.array([3, 1, 0])))
        assert not np.any(ech.reduce(np.array([3, 4, 1])))
        assert np.any(ech.reduce(np.array([1, 0, 0])))


class TestDensePath:
    def test_cyclic_gcd(self):
        assert h2_dense(cyclic(4), 2).invariant_factors == [2]
        assert h2_dense(cyclic(6), 4).invariant_factors == [2]
        assert h2_dense(cyclic(5), 3).is_trivial()

    def test_klein_four_pin(self):
        # this IS the oracle: the value is then pinned as a regression
        assert h2_dense(abelian([2, 2]), 2).invariant_factors == [2, 2, 2]

    def test_composite_modulus_crt(self):
        assert h2_dense(abelian([2, 2]), 12).invariant_factors == [2, 2, 2]
        assert h2_dense(cyclic(6), 6).invariant_factors == [6]

    def test_qmodz_examples(self):
        assert h2_dense_qmodz(abelian([2, 2])).invariant_factors == [2]
        assert h2_dense_qmodz(quaternion(2)).is_trivial()
        assert h2_dense_qmodz(cyclic(12)).is_trivial()

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            h2_dense(alternating(5), 2)

    def test_cross_path_s3(self):
        # no pinned value: computed on both paths and compared only
        main = h2(symmetric(3), Zmod(6)).group.fingerprint()
        dense = h2_dense(symmetric(3), 6).fingerprint()
        assert main == dense


class TestCertify:
    def test_trivial_group(self):
        from brnr.catalog import trivial_group

        res = h2(trivial_group(), Zmod(4))
        report = certify(res)
        assert report.match

    def test_d4_mod2(self):
        res = h2(dihedral(4), Zmod(2))
        report = certify(res)
        assert report.match
        assert "fingerprint" in report.checks
        assert "counting-identity" in report.checks

    def test_qmodz_certification(self):
        res = h2(abelian([2, 2]), QMODZ)
        report = certify(res)
        assert report.match

    def test_mutation_is_caught(self):
        res = h2(dihedral(4), Zmod(2))
        res.reps[0][0] ^= 1
        report = certify(res)
        assert not report.match
        assert report.witness is not None

    def test_corrupted_group_is_caught(self):
        from brnr.zlattice import AbelianGroup

        res = h2(dihedral(4), Zmod(2))
        res.group = AbelianGroup.from_factors([2])  # drop two generators...
        res.reps = res.reps[:1]
        report = certify(res)
        assert not report.match


class TestSweep:
    def test_empty_grid(self):
        assert sweep([]) == []

    def test_small_grid_matches(self):
        cells = []
        for g in (cyclic(4), abelian([2, 2]), symmetric(3), quaternion(2)):
            for coeff in (Zmod(2), Zmod(6), QMODZ):
                cells.append((g.name, g, coeff))
        reports = sweep(cells)
        assert all(r.match for r in reports)
        text = sweep_to_json(reports)
        assert '"match": true' in text

    def test_parallel_matches_serial(self):
        cells = []
        for g in (cyclic(6), dihedral(4)):
            for coeff in (Zmod(2), Zmod(4)):
                cells.append((g.name, g, coeff))
        serial = sweep_to_json(sweep(cells, par=1))
        threaded = sweep_to_json(sweep(cells, par=4))
        assert serial == threaded
