import numpy as np
import pytest

from gkl.errors import InvalidShape, InvalidSpec, NumericalError
from gkl.pipeline import (
    OneVsOneModel,
    PairProblem,
    SvmModel,
    accuracy,
    one_vs_one,
    one_vs_one_predict,
    svm_predict,
    svm_train,
    train_test_split,
)
from oracles import projected_gradient_dual


def random_psd_problem(rng, n=20):
    b = rng.normal(size=(n, n))
    k = b @ b.T
    y = rng.choice([-1.0, 1.0], size=n)
    while len(set(y.tolist())) < 2:
        y = rng.choice([-1.0, 1.0], size=n)
    return k, y


class TestSplit:
    def test_small_fraction(self):
        train, test = train_test_split(10, 0.1, seed=0)
        assert len(test) == 1 and len(train) == 9

    def test_deterministic(self):
        a = train_test_split(50, 0.3, seed=7)
        b = train_test_split(50, 0.3, seed=7)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_rounding(self):
        _, test = train_test_split(188, 0.1, seed=0)
        assert len(test) == 19

    def test_disjoint_covering(self):
        train, test = train_test_split(23, 0.25, seed=3)
        combined = sorted(np.concatenate([train, test]).tolist())
        assert combined == list(range(23))

    def test_clamped_to_at_least_one(self):
        train, test = train_test_split(5, 0.01, seed=0)
        assert len(test) == 1

    def test_clamped_below_n(self):
        train, test = train_test_split(5, 0.99, seed=0)
        assert len(train) == 1

    def test_too_small(self):
        with pytest.raises(InvalidSpec):
            train_test_split(1, 0.5)

    def test_fraction_bounds(self):
        with pytest.raises(InvalidSpec):
            train_test_split(10, 0.0)
        with pytest.raises(InvalidSpec):
            train_test_split(10, 1.0)


class TestSvmTrain:
    def test_two_point_analytic(self):
        k = np.array([[2.0, 0.0], [0.0, 2.0]])
        y = np.array([1.0, -1.0])
        model = svm_train(k, y, c=1.0)
        assert model.alpha == pytest.approx([0.5, 0.5], abs=1e-6)
        assert model.bias == pytest.approx(0.0, abs=1e-6)
        assert svm_predict(model, k).tolist() == [1, -1]

    def test_conflicting_duplicate_points(self):
        k = np.array([[1.0, 1.0], [1.0, 1.0]])
        y = np.array([1.0, -1.0])
        model = svm_train(k, y, c=1.0)
        assert model.alpha == pytest.approx([1.0, 1.0])
        assert np.isfinite(model.dual_objective(k))
        expected = 1 if model.bias >= 0 else -1
        assert svm_predict(model, k).tolist() == [expected, expected]

    def test_kernel_scaling_leaves_predictions_when_separable(self):
        # scaling K by c rescales the dual by 1/c; with the box inactive
        # (separable data, alphas well below C) the decision rule is unchanged
        rng = np.random.default_rng(80)
        x = np.vstack([rng.normal(5.0, 0.3, size=(8, 2)), rng.normal(-5.0, 0.3, size=(8, 2))])
        y = np.array([1.0] * 8 + [-1.0] * 8)
        k = x @ x.T
        base = svm_train(k, y, c=1.0)
        scaled = svm_train(4.0 * k, y, c=1.0)
        assert (base.alpha < 0.5).all() and (scaled.alpha < 0.5).all()
        assert np.array_equal(svm_predict(base, k), svm_predict(scaled, 4.0 * k))
        assert np.allclose(scaled.alpha, base.alpha / 4.0, atol=1e-3)

    def test_single_class_rejected(self):
        with pytest.raises(InvalidSpec):
            svm_train(np.eye(3), np.ones(3), 1.0)

    def test_non_psd_rejected(self):
        k = np.array([[0.0, 2.0], [2.0, 0.0]])  # eigenvalues +-2
        with pytest.raises(NumericalError):
            svm_train(k, np.array([1.0, -1.0]), 1.0)

    def test_asymmetric_rejected(self):
        k = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(NumericalError):
            svm_train(k, np.array([1.0, -1.0]), 1.0)

    def test_dual_feasibility(self):
        rng = np.random.default_rng(81)
        for _ in range(10):
            k, y = random_psd_problem(rng)
            model = svm_train(k, y, c=1.0)
            assert abs(float(model.alpha @ y)) <= 1e-8
            assert (model.alpha >= 0).all() and (model.alpha <= 1.0).all()

    def test_kkt_conditions(self):
        rng = np.random.default_rng(82)
        tau = 1e-3
        for _ in range(10):
            k, y = random_psd_problem(rng)
            c = float(rng.choice([0.5, 1.0, 2.0]))
            model = svm_train(k, y, c=c)
            f = k @ (model.alpha * model.y) + model.bias
            margins = y * f
            at_zero = model.alpha <= 1e-12
            at_c = model.alpha >= c - 1e-12
            free = ~at_zero & ~at_c
            assert (margins[at_zero] >= 1 - tau).all()
            assert (np.abs(margins[free] - 1) <= tau).all()
            assert (margins[at_c] <= 1 + tau).all()

    def test_dual_objective_matches_projected_gradient(self):
        rng = np.random.default_rng(83)
        for _ in range(50):
            k, y = random_psd_problem(rng, 20)
            model = svm_train(k, y, c=1.0)
            _, reference = projected_gradient_dual(k, y, c=1.0, steps=4000)
            ours = model.dual_objective(k)
            scale = max(abs(reference), 1e-9)
            assert abs(ours - reference) / scale < 1e-4


class TestSvmPredict:
    def test_training_labels_reproduced_when_separable(self):
        k = np.diag([3.0, 3.0, 3.0, 3.0])
        y = np.array([1.0, 1.0, -1.0, -1.0])
        model = svm_train(k, y, c=10.0)
        assert np.array_equal(svm_predict(model, k), y)

    def test_zero_row_ties_to_plus_one(self):
        k = np.array([[2.0, 0.0], [0.0, 2.0]])
        model = svm_train(k, np.array([1.0, -1.0]), 1.0)
        assert svm_predict(model, np.zeros((1, 2)))[0] == 1

    def test_shape_mismatch(self):
        model = svm_train(np.eye(2) * 2, np.array([1.0, -1.0]), 1.0)
        with pytest.raises(InvalidShape):
            svm_predict(model, np.zeros((1, 3)))


class TestOneVsOne:
    def test_binary_matches_single_svm(self):
        rng = np.random.default_rng(84)
        k, y = random_psd_problem(rng, 14)
        classes = np.where(y < 0, 3, 7)  # literal class ids 3 and 7
        ensemble = one_vs_one(k, classes, c=1.0)
        direct = svm_train(k, y, c=1.0)
        assert np.array_equal(
            one_vs_one_predict(ensemble, k),
            np.where(svm_predict(direct, k) < 0, 3, 7),
        )

    def test_block_diagonal_three_classes(self):
        blocks = [np.full((4, 4), 5.0) + np.eye(4) for _ in range(3)]
        k = np.zeros((12, 12))
        for b, block in enumerate(blocks):
            k[b * 4 : (b + 1) * 4, b * 4 : (b + 1) * 4] = block
        y = np.repeat([0, 1, 2], 4)
        ensemble = one_vs_one(k, y, c=10.0)
        assert accuracy(y, one_vs_one_predict(ensemble, k)) == 1.0

    def test_all_tie_vote_breaks_to_lowest(self):
        # hand-built ensemble: every pair votes for a different class so each
        # class gets exactly one vote
        def constant_model(sign):
            return SvmModel(
                alpha=np.zeros(2), y=np.array([1.0, -1.0]), bias=float(sign), c=1.0
            )

        problems = (
            PairProblem(0, 1, np.array([0, 1]), constant_model(-1)),  # votes 0
            PairProblem(0, 2, np.array([0, 1]), constant_model(+1)),  # votes 2
            PairProblem(1, 2, np.array([0, 1]), constant_model(-1)),  # votes 1
        )
        ensemble = OneVsOneModel(classes=(0, 1, 2), problems=problems)
        pred = one_vs_one_predict(ensemble, np.zeros((1, 2)))
        assert pred.tolist() == [0]

    def test_single_class_rejected(self):
        with pytest.raises(InvalidSpec):
            one_vs_one(np.eye(3), np.array([1, 1, 1]), 1.0)


class TestAccuracy:
    def test_identical(self):
        assert accuracy([1, 2, 3], [1, 2, 3]) == 1.0

    def test_complement(self):
        assert accuracy([1, -1], [-1, 1]) == 0.0

    def test_sixteen_of_nineteen(self):
        y = [1] * 19
        pred = [1] * 16 + [-1] * 3
        assert accuracy(y, pred) == pytest.approx(16 / 19)
        assert f"{accuracy(y, pred) * 100:.2f} %" == "84.21 %"

    def test_length_mismatch(self):
        with pytest.raises(InvalidShape):
            accuracy([1, 2], [1])
