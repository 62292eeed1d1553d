"""Entropy and information measures of a classification channel.

Every quantity is in bits (base-2 logarithms) and follows the 0 * log 0 = 0
convention, so distributions containing zeros never produce non-finite values.

Two independent routes are computed for each channel:

* the matrix route: H(X) = p_x . l_x, the per-classification conditional
  entropy vector as the diagonal of posterior^T . l_xy, its p_y-weighted
  average H(X/Y), then I(X,Y) = H(X) - H(X/Y);
* the direct route: plain double sums over the joint table.

``measure_channel`` runs both, cross-checks them within 1e-9 and reports the
matrix-route values.
"""

from dataclasses import dataclass

import numpy as np

from .channel import (
    ClassificationChannel,
    ClassificationLabel,
    Distribution,
    JointDistribution,
    _neg_log2,
    drop_zero_mass,
    joint_distribution,
    log_matrix,
    log_vector,
    max_classifications,
    output_distribution,
    posterior_matrix,
)
from .errors import CrossCheckFailure, DimensionMismatch, NegativeBeyondTolerance

# Two routes computing the same measure must agree this closely.
CROSS_CHECK_ATOL = 1e-9
# Rounding slack below zero tolerated before declaring a computation bug.
NEGATIVE_ATOL = 1e-12


@dataclass(frozen=True)
class MeasureSet:
    """All information measures of one channel, in bits.

    ``s_max`` is the theoretical classification count n_a * (n_a - 1) when the
    account count is known, else None. ``degenerate_u`` marks the convention
    U = 1 for a channel with H(X) = H(Y) = 0, which transmits everything
    there is to transmit.
    """

    h_x: float
    h_y: float
    h_xy: float
    h_x_given_y: float
    i_xy: float
    u_xy: float
    r: int
    s: int
    s_max: int | None = None
    degenerate_u: bool = False


def entropy(dist: Distribution) -> float:
    """Average information of a distribution: -sum p log2 p."""
    return float(dist.p @ _neg_log2(dist.p))


def joint_entropy(joint: JointDistribution) -> float:
    """Entropy of the joint event/classification table."""
    m = joint.matrix
    return float(np.sum(m * _neg_log2(m)))


def conditional_entropy_vector(
    ch: ClassificationChannel, posterior: np.ndarray, l_xy: np.ndarray
) -> np.ndarray:
    """Residual event entropy for each classification.

    Entry j is sum_i posterior[i, j] * l_xy[j, i], the diagonal of
    posterior^T . l_xy computed without forming the full S x S product.
    """
    posterior = np.asarray(posterior, dtype=float)
    l_xy = np.asarray(l_xy, dtype=float)
    if posterior.shape != (ch.r, ch.s) or l_xy.shape != (ch.s, ch.r):
        raise DimensionMismatch(
            f"posterior {posterior.shape} / log matrix {l_xy.shape} do not match "
            f"a {ch.r} x {ch.s} channel"
        )
    return np.einsum("ij,ji->j", posterior, l_xy)


def conditional_entropy(p_y: Distribution, h_vec: np.ndarray) -> float:
    """Average residual uncertainty about events after seeing a classification."""
    h_vec = np.asarray(h_vec, dtype=float)
    if h_vec.shape != (len(p_y),):
        raise DimensionMismatch(
            f"{len(p_y)} classification probabilities for {h_vec.shape} entropies"
        )
    return float(p_y.p @ h_vec)


def mutual_information(h_x: float, h_x_given_y: float) -> float:
    """Information conveyed by the classification: H(X) - H(X/Y).

    A difference within rounding slack below zero is clamped to 0; anything
    more negative signals an upstream computation bug.
    """
    i_xy = h_x - h_x_given_y
    if i_xy < 0:
        if i_xy < -NEGATIVE_ATOL:
            raise NegativeBeyondTolerance(
                f"I(X,Y) = {i_xy!r} from H(X) = {h_x!r}, H(X/Y) = {h_x_given_y!r}"
            )
        return 0.0
    return i_xy


def symmetric_uncertainty(i_xy: float, h_x: float, h_y: float) -> float:
    """Normalized shared information 2 I / (H(X) + H(Y)), in [0, 1].

    Defined as 1 when both entropies vanish: a single-event, single-class
    channel transmits all the (zero) information there is.
    """
    total = h_x + h_y
    if total == 0.0:
        return 1.0
    u = 2.0 * i_xy / total
    if u < -NEGATIVE_ATOL or u > 1.0 + CROSS_CHECK_ATOL:
        raise NegativeBeyondTolerance(f"U(X,Y) = {u!r} outside [0, 1]")
    return min(max(u, 0.0), 1.0)


def mutual_information_direct(joint: JointDistribution) -> float:
    """Mutual information by direct summation over the joint table.

    sum_ij p(x_i, y_j) log2[ p(x_i, y_j) / (p(x_i) p(y_j)) ] with zero cells
    skipped.
    """
    m = joint.matrix
    outer = np.outer(joint.p_x(), joint.p_y())
    nz = m > 0
    return float(np.sum(m[nz] * np.log2(m[nz] / outer[nz])))


def conditional_entropy_direct(joint: JointDistribution) -> float:
    """Conditional entropy by direct summation: -sum_ij p(x,y) log2 p(x/y)."""
    m = joint.matrix
    p_y = joint.p_y()
    nz = m > 0
    cond = m[nz] / np.broadcast_to(p_y, m.shape)[nz]
    return float(-np.sum(m[nz] * np.log2(cond)))


def measure_channel(ch: ClassificationChannel) -> MeasureSet:
    """Compute the full measure set, cross-checking matrix and direct routes."""
    ch = drop_zero_mass(ch)

    p_y = output_distribution(ch)
    posterior = posterior_matrix(ch, p_y)
    l_xy = log_matrix(posterior)
    h_x = float(ch.input.p @ log_vector(ch.input))
    h_y = float(p_y.p @ log_vector(p_y))
    h_vec = conditional_entropy_vector(ch, posterior, l_xy)
    h_x_given_y = conditional_entropy(p_y, h_vec)
    i_xy = mutual_information(h_x, h_x_given_y)
    u_xy = symmetric_uncertainty(i_xy, h_x, h_y)

    joint = joint_distribution(ch)
    h_xy = joint_entropy(joint)
    direct = {
        "H(X)": (h_x, entropy(Distribution(joint.row_labels, joint.p_x()))),
        "H(X/Y)": (h_x_given_y, conditional_entropy_direct(joint)),
        "I(X,Y)": (i_xy, mutual_information_direct(joint)),
        "H(X,Y) chain rule": (h_xy, h_x_given_y + h_y),
    }
    for name, (matrix_value, direct_value) in direct.items():
        if abs(matrix_value - direct_value) > CROSS_CHECK_ATOL:
            raise CrossCheckFailure(
                f"{name}: matrix route {matrix_value!r} vs direct route {direct_value!r}"
            )

    return MeasureSet(
        h_x=h_x,
        h_y=h_y,
        h_xy=h_xy,
        h_x_given_y=h_x_given_y,
        i_xy=i_xy,
        u_xy=u_xy,
        r=ch.r,
        s=ch.s,
        s_max=(
            max_classifications(ch.n_accounts)
            if ch.n_accounts is not None and ch.n_accounts >= 2
            else None
        ),
        degenerate_u=(h_x == 0.0 and h_y == 0.0),
    )


def collapsed_label_count(ch: ClassificationChannel) -> int:
    """Classifications whose debit and credit prefixes coincide after truncation."""
    return sum(
        1
        for label in ch.output_labels
        if isinstance(label, ClassificationLabel) and label.collapsed
    )
