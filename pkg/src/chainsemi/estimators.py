"""scikit-learn style wrappers.

``fit`` takes the ambient semigroup (an :class:`ElementSet`, a family tag
with ``n``, or a closed batch of maps); ``predict``/``transform`` take maps.
Fitted attributes end in an underscore, parameters are plain constructor
arguments, so ``get_params``/``set_params``/``clone`` work unchanged.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import green, maps, regularity
from .exceptions import NotMember
from .families import FamilyTag, member
from .validation import check_element_set, check_maps


class GreenPartition(ClusterMixin, BaseEstimator):
    """Partition a semigroup by one of Green's relations, starred or not.

    Parameters
    ----------
    relation : {"l", "r", "h", "d", "lstar", "rstar", "hstar", "dstar", "jstar"}
    method : {"oracle", "characterization"}
        Route for the starred relations; ignored for the others.
    n : int, optional
        Chain size, needed when ``fit`` gets a family tag or canonical ids.
    max_oracle_n : int or None
        Budget for the multiplication-table oracle.
    """

    def __init__(self, relation="lstar", method="oracle", n=None, max_oracle_n=green.DEFAULT_ORACLE_MAX_N):
        self.relation = relation
        self.method = method
        self.n = n
        self.max_oracle_n = max_oracle_n

    def fit(self, X, y=None):
        S = check_element_set(X, self.n)
        relation = green.Relation.parse(self.relation)
        if relation is green.Relation.JSTAR:
            rc = green.jstar_classes(S, max_n=self.max_oracle_n)
        elif relation.starred and green.Method.parse(self.method) is green.Method.ORACLE:
            rc = green.star_classes_oracle(S, relation, max_n=self.max_oracle_n)
        else:
            rc = green.star_classes(S, relation, self.method)
        self.element_set_ = S
        self.classes_ = rc
        self.labels_ = rc.labels
        self.n_classes_ = len(rc)
        return self

    def predict(self, X):
        check_is_fitted(self, "labels_")
        S = self.element_set_
        try:
            pos = [S.position(a) for a in check_maps(X, S.n)]
        except NotMember as exc:
            raise ValueError(str(exc)) from None
        return self.labels_[pos]

    def class_ids(self) -> list[list[int]]:
        check_is_fitted(self, "classes_")
        return self.classes_.id_classes()


class RegularityClassifier(ClassifierMixin, BaseEstimator):
    """Label maps regular (1) or not (0) within the fitted semigroup.

    With ``strong=True`` the label is strong regularity instead, which needs
    an ORCP ambient semigroup.
    """

    def __init__(self, strong=False, n=None):
        self.strong = strong
        self.n = n

    def fit(self, X, y=None):
        S = check_element_set(X, self.n)
        self.element_set_ = S
        self.witness_ = regularity.regular_witnesses(S)
        if self.strong:
            self.mask_ = regularity.sreg_mask(S)
        else:
            self.mask_ = self.witness_ >= 0
        self.classes_ = np.array([0, 1])
        return self

    def _positions(self, X):
        check_is_fitted(self, "mask_")
        S = self.element_set_
        try:
            return [S.position(a) for a in check_maps(X, S.n)]
        except NotMember as exc:
            raise ValueError(str(exc)) from None

    def predict(self, X):
        return self.mask_[self._positions(X)].astype(np.int64)

    def inverse_witness(self, X):
        """Canonical id of the least ``b`` with ``aba = a``, or -1."""
        w = self.witness_[self._positions(X)]
        return np.where(w >= 0, self.element_set_.ids[np.maximum(w, 0)], -1)


class PropertyEncoder(TransformerMixin, BaseEstimator):
    """Encode maps as a numeric feature matrix.

    Columns: the elementary predicates, height, domain size, and one
    membership flag per family in ``families``.
    """

    PREDICATES = ("contraction", "order_preserving", "order_reversing", "isometry",
                  "order_decreasing", "idempotent", "full")

    def __init__(self, n=None, families=("cp", "ocp", "orcp")):
        self.n = n
        self.families = families

    def fit(self, X, y=None):
        first = check_maps(X, self.n)
        self.n_ = first[0].n
        self.families_ = tuple(FamilyTag.parse(f) for f in self.families)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_")
        rows = []
        for a in check_maps(X, self.n_):
            props = maps.classify(a)
            row = [int(getattr(props, p)) for p in self.PREDICATES]
            row += [a.height, len(a.domain)]
            row += [int(member(t, a)) for t in self.families_]
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_")
        names = list(self.PREDICATES) + ["height", "domain_size"]
        names += [f"in_{t.value}" for t in self.families_]
        return np.array(names, dtype=object)
