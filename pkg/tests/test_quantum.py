"""Operator component: decompositions, probabilities, context operators.

Independent oracles: numpy.linalg.eigh for the Jacobi eigensolver and
scipy.linalg.polar for the polar factors.
"""

import math

import numpy as np
import pytest
import scipy.linalg

from qlpoly.quantum import (
    DensityOperator,
    InvalidDensityOperatorError,
    NotCommutingError,
    NotInvertibleError,
    NotSelfAdjointError,
    apply_table,
    cartesian,
    context_operator,
    eigh_jacobi,
    gen_prob,
    interpolating_polynomial,
    is_normal,
    matrix_from_json,
    matrix_to_json,
    polar,
    sup_norm,
)

SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_3 = np.diag([1.0, -1.0]).astype(complex)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_density(rng, n):
    m = random_complex(rng, n)
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_normal(rng, n):
    h = random_complex(rng, n)
    h = (h + h.conj().T) / 2
    _, u = eigh_jacobi(h)
    lam = rng.normal(size=n) + 1j * rng.normal(size=n)
    return u @ np.diag(lam) @ u.conj().T


class TestJacobiEigensolver:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
    def test_against_numpy(self, n):
        rng = np.random.default_rng(n)
        m = random_complex(rng, n)
        h = (m + m.conj().T) / 2
        w, v = eigh_jacobi(h)
        w_ref = np.linalg.eigvalsh(h)
        assert np.abs(w - w_ref).max() <= 1e-10 * max(1.0, sup_norm(h))
        assert sup_norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-10 * max(1.0, sup_norm(h))
        assert sup_norm(v.conj().T @ v - np.eye(n)) <= 1e-12

    def test_eigenvalues_sorted(self):
        w, _ = eigh_jacobi(np.diag([3.0, -1.0, 2.0]))
        assert list(w) == sorted(w)


class TestIsNormal:
    def test_diag_2_i(self):
        assert is_normal(np.diag([2.0, 1.0j]))

    def test_nilpotent_not_normal(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        # AA+ = diag(1,0) differs from A+A = diag(0,1)
        assert not is_normal(a)

    def test_hermitian_always_normal(self):
        rng = np.random.default_rng(3)
        m = random_complex(rng, 4)
        h = (m + m.conj().T) / 2
        assert is_normal(h)

    def test_zero_matrix(self):
        assert is_normal(np.zeros((3, 3)))


class TestCartesian:
    def test_eq2_values(self):
        b, c = cartesian(np.diag([2.0, 1.0j]))
        assert sup_norm(b - np.diag([2.0, 0.0])) <= 1e-12
        assert sup_norm(c - np.diag([0.0, 1.0])) <= 1e-12

    def test_hermitian_has_zero_imaginary_part(self):
        rng = np.random.default_rng(5)
        m = random_complex(rng, 3)
        h = (m + m.conj().T) / 2
        _, c = cartesian(h)
        assert sup_norm(c) <= 1e-12

    def test_nilpotent_hand_computation(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        b, c = cartesian(a)
        assert sup_norm(b - np.array([[0, 0.5], [0.5, 0]])) <= 1e-15
        assert sup_norm(c - np.array([[0, 0.5j], [-0.5j, 0]]).conj().T.conj()) <= 1e-15
        comm = b @ c - c @ b
        assert sup_norm(comm - np.diag([0.5j, -0.5j])) <= 1e-15


class TestPolar:
    def test_eq2_values(self):
        d, e = polar(np.diag([2.0, 1.0j]))
        assert sup_norm(d - np.diag([1.0, 1.0j])) <= 1e-12
        assert sup_norm(e - np.diag([2.0, 1.0])) <= 1e-12

    def test_unitary_input(self):
        theta = 0.7
        u = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]],
            dtype=complex,
        )
        d, e = polar(u)
        assert sup_norm(d - u) <= 1e-12
        assert sup_norm(e - np.eye(2)) <= 1e-12

    def test_singular_rejected(self):
        with pytest.raises(NotInvertibleError):
            polar(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize("seed", range(8))
    def test_against_scipy(self, seed):
        rng = np.random.default_rng(seed)
        n = 2 + seed % 4
        a = random_complex(rng, n)
        d, e = polar(a)
        d_ref, e_ref = scipy.linalg.polar(a, side="right")
        assert sup_norm(d - d_ref) <= 1e-8
        assert sup_norm(e - e_ref) <= 1e-8


class TestRandomizedSuite:
    """100 seeds over dimensions 2..6."""

    def test_full_sweep(self):
        for seed in range(100):
            rng = np.random.default_rng(seed)
            n = 2 + seed % 5
            a = random_complex(rng, n)
            scale = max(1.0, sup_norm(a))

            b, c = cartesian(a)
            assert sup_norm(b - b.conj().T) <= 1e-12 * scale
            assert sup_norm(c - c.conj().T) <= 1e-12 * scale
            assert sup_norm(a - (b + 1j * c)) <= 1e-10 * scale

            d, e = polar(a)
            assert sup_norm(a - d @ e) <= 1e-10 * scale
            assert sup_norm(d @ d.conj().T - np.eye(n)) <= 1e-10
            w, _ = eigh_jacobi(e)
            assert float(w.min()) >= -1e-10

            m = random_normal(rng, n)
            assert is_normal(m)
            bn, cn = cartesian(m)
            assert sup_norm(bn @ cn - cn @ bn) <= 1e-10 * sup_norm(m) ** 2
            try:
                dn, en = polar(m)
                assert sup_norm(dn @ en - en @ dn) <= 1e-10 * sup_norm(m) ** 2
            except NotInvertibleError:
                pass  # a random normal matrix may be near-singular

    def test_gen_prob_properties(self):
        for seed in range(100):
            rng = np.random.default_rng(1000 + seed)
            n = 2 + seed % 5
            rho = DensityOperator(random_density(rng, n))
            tau = DensityOperator(random_density(rng, n))
            p = gen_prob(rho, tau)
            q = gen_prob(tau, rho)
            assert 0.0 <= p <= 1.0
            assert abs(p - q) <= 1e-12
            # pure second argument reduces to the expectation value
            vec = rng.normal(size=n) + 1j * rng.normal(size=n)
            vec = vec / np.linalg.norm(vec)
            proj = DensityOperator(np.outer(vec, vec.conj()))
            expect = float((vec.conj() @ rho.matrix @ vec).real)
            assert abs(gen_prob(rho, proj) - expect) <= 1e-10


class TestDensityOperator:
    def test_identical_pure_states(self):
        rho = DensityOperator(np.diag([1.0, 0.0]))
        assert gen_prob(rho, rho) == 1.0

    def test_orthogonal_pure_states(self):
        a = DensityOperator(np.diag([1.0, 0.0]))
        b = DensityOperator(np.diag([0.0, 1.0]))
        assert gen_prob(a, b) == 0.0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_total_ignorance_gives_1_over_n(self, n):
        rho = DensityOperator(np.eye(n) / n)
        assert abs(gen_prob(rho, rho) - 1.0 / n) <= 1e-12

    def test_not_self_adjoint_rejected(self):
        with pytest.raises(InvalidDensityOperatorError, match="self-adjoint"):
            DensityOperator(np.array([[0.5, 1.0], [0.0, 0.5]]))

    def test_wrong_trace_rejected(self):
        with pytest.raises(InvalidDensityOperatorError, match="trace"):
            DensityOperator(np.eye(2))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(InvalidDensityOperatorError, match="positive"):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_dimension_mismatch(self):
        a = DensityOperator(np.eye(2) / 2)
        b = DensityOperator(np.eye(3) / 3)
        with pytest.raises(ValueError, match="dimension"):
            gen_prob(a, b)


class TestContextOperator:
    def test_two_diagonal_operators(self):
        r = context_operator([np.diag([1.0, 1.0, 2.0]), np.diag([3.0, 4.0, 4.0])])
        assert sup_norm(r.context - np.diag([0.0, 1.0, 2.0])) <= 1e-12
        assert r.tables[0] == {0: 1.0, 1: 1.0, 2: 2.0}
        assert r.tables[1] == {0: 3.0, 1: 4.0, 2: 4.0}

    def test_single_degenerate_operator(self):
        r = context_operator([np.diag([5.0, 5.0])])
        assert sup_norm(r.context) <= 1e-12
        assert r.tables[0] == {0: 5.0}

    def test_noncommuting_rejected(self):
        with pytest.raises(NotCommutingError) as exc:
            context_operator([SIGMA_1, SIGMA_3])
        assert exc.value.pair == (0, 1)

    def test_not_self_adjoint_rejected(self):
        with pytest.raises(NotSelfAdjointError):
            context_operator([np.array([[0.0, 1.0], [0.0, 0.0]])])

    def test_reconstruction_invariant(self):
        rng = np.random.default_rng(11)
        h = random_complex(rng, 4)
        h = (h + h.conj().T) / 2
        _, u = eigh_jacobi(h)
        a1 = u @ np.diag([1.0, 1.0, 2.0, 3.0]) @ u.conj().T
        a2 = u @ np.diag([7.0, 5.0, 5.0, 5.0]) @ u.conj().T
        r = context_operator([a1, a2])
        for m, table in zip((a1, a2), r.tables):
            assert sup_norm(m - apply_table(table, r)) <= 1e-8

    def test_relabeling_is_another_context_operator(self):
        rng = np.random.default_rng(23)
        r = context_operator([np.diag([1.0, 2.0, 2.0, 5.0])])
        k = len(r.eigenvalues)
        perm = rng.permutation(k)
        relabeled = sum(
            (int(perm[j]) * proj for j, proj in zip(r.eigenvalues, r.projectors)),
            start=np.zeros_like(r.context),
        )
        # the relabeled operator still separates the joint eigenspaces, so the
        # original tables transported through the relabeling still reconstruct
        table = {int(perm[j]): r.tables[0][j] for j in r.eigenvalues}
        rebuilt = sum(
            (table[int(perm[j])] * proj for j, proj in zip(r.eigenvalues, r.projectors)),
            start=np.zeros_like(r.context),
        )
        assert sup_norm(rebuilt - np.diag([1.0, 2.0, 2.0, 5.0])) <= 1e-8
        w, _ = eigh_jacobi(relabeled)
        assert len({round(x, 6) for x in w}) == k

    def test_interpolating_polynomial(self):
        table = {0: 1.0, 1: 1.0, 2: 2.0}
        coeffs = interpolating_polynomial(table)
        for x, y in table.items():
            val = sum(c * x**i for i, c in enumerate(coeffs))
            assert abs(val - y) <= 1e-10


class TestMatrixJson:
    def test_round_trip(self):
        a = np.array([[1.0 + 2.0j, 0.0], [3.0, -1.0j]])
        b = matrix_from_json(matrix_to_json(a))
        assert sup_norm(a - b) == 0.0

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError):
            matrix_from_json('{"dim": 1, "entries": [[[0, 0]]], "oops": true}')

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            matrix_from_json('{"dim": 2, "entries": [[[0, 0]]]}')
