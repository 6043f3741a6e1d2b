import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from chainsemi import maps
from chainsemi.estimators import GreenPartition, PropertyEncoder, RegularityClassifier
from chainsemi.exceptions import SizeMismatch
from chainsemi.validation import check_element_set, check_partial_map
from conftest import family, m


class TestGreenPartition:
    def test_params_and_clone(self):
        est = GreenPartition(relation="dstar", method="characterization", n=3)
        assert est.get_params() == {"relation": "dstar", "method": "characterization", "n": 3, "max_oracle_n": 4}
        c = clone(est)
        assert c.get_params() == est.get_params() and not hasattr(c, "labels_")
        est.set_params(relation="rstar")
        assert est.relation == "rstar"

    def test_fit_from_tag(self):
        est = GreenPartition(relation="dstar", n=3).fit("cp")
        assert est.n_classes_ == 4
        assert len(est.labels_) == 50

    def test_predict(self):
        est = GreenPartition(relation="lstar", n=3).fit("ocp")
        a, b = m(3, (1, 1), (2, 2)), m(3, (2, 1), (3, 2))
        la, lb, lc = est.predict([a, b, maps.identity(3)])
        assert la == lb != lc
        assert est.fit_predict(family("ocp", 3)).tolist() == est.labels_.tolist()

    def test_predict_accepts_ids_and_slots(self):
        est = GreenPartition(relation="hstar", method="characterization", n=2).fit("cp")
        ident = maps.identity(2)
        got = est.predict([ident.canonical_id, [1, 2], {1: 1, 2: 2}])
        assert len(set(got.tolist())) == 1

    def test_methods_agree(self):
        a = GreenPartition(relation="rstar", method="oracle").fit(family("orcp", 4))
        b = GreenPartition(relation="rstar", method="characterization").fit(family("orcp", 4))
        assert a.classes_.same_partition(b.classes_)

    def test_jstar(self):
        est = GreenPartition(relation="jstar", n=3).fit("cp")
        assert est.n_classes_ == 4

    def test_custom_batch(self):
        # {identity, empty} is a closed monoid
        est = GreenPartition(relation="lstar").fit([maps.identity(2), maps.empty(2)])
        assert est.n_classes_ == 2
        assert est.class_ids() == [[0], [7]]

    def test_errors(self):
        with pytest.raises(NotFittedError):
            GreenPartition().predict([maps.identity(2)])
        est = GreenPartition(n=3).fit("ocp")
        with pytest.raises(ValueError):
            est.predict([m(3, (1, 3), (3, 1))])  # not in OCP_3
        with pytest.raises(SizeMismatch):
            est.predict([maps.identity(2)])
        with pytest.raises(ValueError):
            GreenPartition(relation="lstar").fit([maps.identity(3), m(3, (1, 2))])


class TestRegularityClassifier:
    def test_predict(self):
        clf = RegularityClassifier(n=3).fit("orcp")
        X = [m(3, (1, 1), (3, 3)), m(3, (1, 1), (3, 2)), m(3, (1, 3), (3, 1))]
        assert clf.predict(X).tolist() == [1, 0, 1]
        w = clf.inverse_witness(X)
        assert w[1] == -1
        a, b = X[2], maps.decode(3, int(w[2]))
        assert a * b * a == a

    def test_strong(self):
        clf = RegularityClassifier(strong=True, n=3).fit("orcp")
        assert clf.predict([m(3, (1, 3), (3, 1)), maps.identity(3)]).tolist() == [0, 1]
        assert clf.get_params() == {"strong": True, "n": 3}

    def test_score_against_brute_force(self):
        S = family("cp", 3)
        y = [int(any(a * b * a == a for b in S.elements)) for a in S.elements]
        assert RegularityClassifier().fit(S).score(S.elements, y) == 1.0


class TestPropertyEncoder:
    def test_transform(self):
        enc = PropertyEncoder()
        X = enc.fit_transform([m(3, (1, 3), (3, 1)), maps.empty(3)])
        names = enc.get_feature_names_out().tolist()
        row = dict(zip(names, X[0]))
        assert row["isometry"] == 1 and row["order_preserving"] == 0
        assert row["in_orcp"] == 1 and row["in_ocp"] == 0
        assert row["height"] == 2 and row["domain_size"] == 2
        assert X.shape == (2, len(names))

    def test_pipeline_clone(self):
        pipe = make_pipeline(PropertyEncoder(n=2, families=("ct",)))
        out = clone(pipe).fit_transform(np.array([[1, 2], [0, 0]]))
        assert out[:, -1].tolist() == [1, 0]

    def test_mixed_sizes(self):
        with pytest.raises(SizeMismatch):
            PropertyEncoder().fit([maps.identity(2), maps.identity(3)])


class TestValidation:
    def test_id_needs_n(self):
        with pytest.raises(ValueError):
            check_partial_map(5)
        assert check_partial_map(5, 2) == maps.decode(2, 5)

    def test_bad_n(self):
        for bad in (0, -1, 2.5, True):
            with pytest.raises(ValueError):
                check_element_set("cp", bad)

    def test_slot_length(self):
        with pytest.raises(SizeMismatch):
            check_partial_map([1, 2], 3)
