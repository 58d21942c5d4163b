import numpy as np
import pytest

from gitbot.baselines import (
    Standardizer,
    train_knn,
    train_linear_svm,
    train_logistic,
    train_single_tree,
)
from gitbot.errors import SingleClassData
from gitbot.features import FeatureVector
from gitbot.forest import BOT, HUMAN, UNKNOWN, LabeledExample, tree_depth

from .test_forest import example, random_examples


def accuracy(model, data):
    X = np.array([ex.features.as_array() for ex in data])
    y = np.array([1 if ex.label == BOT else 0 for ex in data])
    return (model.predict_labels(X) == y).mean()


SEPARABLE = [example(10, 0, p, 0.0, BOT) for p in (1, 2, 3, 2, 1)] + [
    example(10, 0, p, 0.0, HUMAN) for p in (40, 50, 60, 55, 45)
]


class TestKnn:
    def test_k1_returns_own_label_on_training_points(self):
        rng = np.random.default_rng(0)
        data = random_examples(rng, 30)
        model = train_knn(data, k=1)
        assert accuracy(model, data) == 1.0

    def test_majority_of_neighbours(self):
        model = train_knn(SEPARABLE, k=3)
        assert model.predict(FeatureVector(10, 0, 2, 0.0)).label == BOT
        assert model.predict(FeatureVector(10, 0, 52, 0.0)).label == HUMAN

    def test_standardization_scale_invariance(self):
        rng = np.random.default_rng(1)
        data = random_examples(rng, 50)
        scaled = [
            LabeledExample(
                FeatureVector(
                    ex.features.n_messages * 1000,
                    ex.features.n_empty,
                    ex.features.n_patterns,
                    ex.features.gini,
                ),
                ex.label,
            )
            for ex in data
        ]
        model = train_knn(data, k=5)
        model_scaled = train_knn(scaled, k=5)
        queries = random_examples(rng, 30)
        for q in queries:
            fv = q.features
            fv_scaled = FeatureVector(fv.n_messages * 1000, fv.n_empty, fv.n_patterns, fv.gini)
            assert model.predict(fv).label == model_scaled.predict(fv_scaled).label

    def test_k_bounds(self):
        with pytest.raises(ValueError):
            train_knn(SEPARABLE, k=0)
        with pytest.raises(ValueError):
            train_knn(SEPARABLE, k=len(SEPARABLE) + 1)

    def test_unknown_for_insufficient(self):
        model = train_knn(SEPARABLE, k=1)
        assert model.predict(None).label == UNKNOWN


class TestLogistic:
    def test_separable_training_accuracy(self):
        model = train_logistic(SEPARABLE)
        assert model.converged
        assert accuracy(model, SEPARABLE) == 1.0

    def test_iteration_cap_flags_nonconvergence(self):
        with pytest.warns(UserWarning):
            model = train_logistic(SEPARABLE, max_iter=3)
        assert not model.converged
        assert model.n_iter == 3

    def test_confidence_is_probability_of_winner(self):
        model = train_logistic(SEPARABLE)
        prediction = model.predict(FeatureVector(10, 0, 1, 0.0))
        assert prediction.label == BOT
        assert 0.5 < prediction.confidence <= 1.0

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassData):
            train_logistic([example(10, 0, 1, 0.0, BOT)] * 5)


class TestLinearSvm:
    def test_separates_training_data(self):
        model = train_linear_svm(SEPARABLE)
        assert accuracy(model, SEPARABLE) == 1.0

    def test_iteration_cap_flags_nonconvergence(self):
        with pytest.warns(UserWarning):
            model = train_linear_svm(SEPARABLE, max_iter=2, tol=0.0)
        assert not model.converged

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassData):
            train_linear_svm([example(10, 0, 1, 0.0, HUMAN)] * 5)


class TestSingleTree:
    def test_uses_all_features_and_depth_bound(self):
        rng = np.random.default_rng(2)
        data = random_examples(rng, 120, separable=False)
        model = train_single_tree(data, max_depth=4)
        assert tree_depth(model.tree) <= 4

    def test_separable_data(self):
        model = train_single_tree(SEPARABLE)
        assert accuracy(model, SEPARABLE) == 1.0

    def test_confidence_from_leaf_purity(self):
        model = train_single_tree(SEPARABLE)
        prediction = model.predict(FeatureVector(10, 0, 1, 0.0))
        assert prediction.confidence == 1.0


class TestStandardizer:
    def test_zero_variance_features_pass_through(self):
        X = np.array([[1.0, 5.0], [1.0, 7.0], [1.0, 9.0]])
        scaler = Standardizer.fit(X)
        Z = scaler.transform(X)
        assert np.all(Z[:, 0] == 0.0)
        assert Z[:, 1].std() == pytest.approx(1.0)
