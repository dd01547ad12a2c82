"""Classical (hidden-state) models of temporal correlations.

A model is a finite ensemble of members ``(p_lam, P_lam(x0), P_lam(z0), rho_lam)``.
Prior outcomes are drawn from the member's response distributions; the later
outcome follows the Born rule on the member's hidden state, so
``P(x0, x) = sum_lam p_lam P_lam(x0) Tr[rho_lam Pi_x]``. Every such model obeys
the temporal entropic steering inequality; :func:`theorem_sweep` checks it.
"""

from dataclasses import dataclass

import numpy as np

from .bounds import max_overlap_c, steering_witness
from .constants import TOL
from .errors import ContractViolation
from .infotheory import conditional_entropy, shannon
from .quantum import DensityMatrix, JointDistribution, measure_distribution, random_density_matrix

__all__ = [
    "LhsMember",
    "LhsEnsemble",
    "lhs_joint",
    "lhs_conditional_decomposition",
    "random_lhs_ensemble",
    "member_mu_slacks",
    "averaging_slack",
    "SweepSummary",
    "theorem_sweep",
]


def _check_distribution(p, name):
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0 or np.any(p < 0) or abs(p.sum() - 1.0) > TOL["normalization"]:
        raise ContractViolation(f"{name} is not a valid distribution: {p}")
    return p


@dataclass(frozen=True, eq=False)
class LhsMember:
    weight: float
    prior_x: np.ndarray
    prior_z: np.ndarray
    hidden_state: DensityMatrix

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ContractViolation(f"member weight {self.weight!r} outside [0, 1]")
        object.__setattr__(self, "prior_x", _check_distribution(self.prior_x, "prior_x"))
        object.__setattr__(self, "prior_z", _check_distribution(self.prior_z, "prior_z"))

    def prior(self, context):
        if context == "x":
            return self.prior_x
        if context == "z":
            return self.prior_z
        raise ContractViolation(f"context must be 'x' or 'z', got {context!r}")


@dataclass(frozen=True, eq=False)
class LhsEnsemble:
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ContractViolation("ensemble needs at least one member")
        total = sum(m.weight for m in members)
        if abs(total - 1.0) > 1e-12:
            raise ContractViolation(f"member weights sum to {total!r}")
        for ctx in ("x", "z"):
            if len({m.prior(ctx).size for m in members}) != 1:
                raise ContractViolation(f"members disagree on the number of {ctx}0 outcomes")
        if len({m.hidden_state.dim for m in members}) != 1:
            raise ContractViolation("hidden states have different dimensions")
        object.__setattr__(self, "members", members)

    @property
    def weights(self):
        return np.array([m.weight for m in self.members])

    @property
    def dim(self):
        return self.members[0].hidden_state.dim

    def __len__(self):
        return len(self.members)


def lhs_joint(ensemble, context, later):
    """Joint table of prior outcome (index) and later outcome of ``later`` in one context."""
    if later.dim != ensemble.dim:
        raise ContractViolation(f"observable dimension {later.dim} != hidden-state dimension {ensemble.dim}")
    table = sum(
        m.weight * np.outer(m.prior(context), measure_distribution(m.hidden_state, later))
        for m in ensemble.members
    )
    n_prior = ensemble.members[0].prior(context).size
    return JointDistribution(tuple(range(n_prior)), later.labels, table)


def lhs_conditional_decomposition(ensemble, outcome, context="x"):
    """Posterior weights ``p_lam P_lam(a) / sum_lam' p_lam' P_lam'(a)`` over members.

    These mix the members' Born distributions into ``P(later | a)``.
    """
    likelihood = np.array([m.prior(context)[outcome] for m in ensemble.members])
    joint = ensemble.weights * likelihood
    marginal = joint.sum()
    if marginal <= TOL["clamp"]:
        raise ContractViolation(f"prior outcome {outcome} has zero probability")
    return joint / marginal


def random_lhs_ensemble(dim, n_members, seed, n_prior=None):
    """Reproducible random ensemble.

    ``seed`` may be an int or a ``numpy.random.SeedSequence``; draws use numpy's
    default PCG64 generator. Weights and priors are normalised uniform draws,
    hidden states random mixtures of pure states. ``n_prior`` (number of prior
    outcomes) defaults to ``dim``.
    """
    if dim < 2 or n_members < 1:
        raise ContractViolation("need dim >= 2 and n_members >= 1")
    rng = np.random.default_rng(seed)
    n_prior = dim if n_prior is None else n_prior
    w = rng.uniform(size=n_members)
    w /= w.sum()
    members = []
    for k in range(n_members):
        px = rng.uniform(size=n_prior)
        pz = rng.uniform(size=n_prior)
        members.append(
            LhsMember(
                weight=float(w[k]),
                prior_x=px / px.sum(),
                prior_z=pz / pz.sum(),
                hidden_state=random_density_matrix(dim, rng),
            )
        )
    # absorb rounding so weights sum to 1 as tightly as the invariant wants
    resid = 1.0 - sum(m.weight for m in members)
    last = members[-1]
    members[-1] = LhsMember(last.weight + resid, last.prior_x, last.prior_z, last.hidden_state)
    return LhsEnsemble(tuple(members))


def member_mu_slacks(ensemble, x, z):
    """Maassen-Uffink slack ``H(X) + H(Z) + 2 log2 c`` on each hidden state."""
    bound = -2.0 * np.log2(max_overlap_c(x, z))
    return np.array(
        [
            shannon(measure_distribution(m.hidden_state, x))
            + shannon(measure_distribution(m.hidden_state, z))
            - bound
            for m in ensemble.members
        ]
    )


def averaging_slack(ensemble, context, later):
    """``H(later | prior) - sum_lam p_lam H_lam(later)``; nonnegative for any ensemble."""
    h_cond = conditional_entropy(lhs_joint(ensemble, context, later))
    avg = sum(m.weight * shannon(measure_distribution(m.hidden_state, later)) for m in ensemble.members)
    return h_cond - avg


@dataclass(frozen=True)
class SweepSummary:
    trials: int
    min_slack: float
    violations: int
    min_member_mu_slack: float
    min_averaging_slack: float


def theorem_sweep(dim, trials, x, z, seed, n_members=None, max_members=8):
    """Evaluate the steering witness on ``trials`` random hidden-state ensembles.

    Each trial gets its own child seed, so results do not depend on how trials
    are scheduled. ``n_members=None`` draws the size uniformly from
    ``1..max_members`` per trial.
    """
    if x.dim != dim or z.dim != dim:
        raise ContractViolation("observables do not match dim")
    c = max_overlap_c(x, z)
    min_slack = np.inf
    min_mu = np.inf
    min_avg = np.inf
    violations = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        size_rng = np.random.default_rng(child.spawn(1)[0])
        k = n_members if n_members is not None else int(size_rng.integers(1, max_members + 1))
        ens = random_lhs_ensemble(dim, k, child)
        report = steering_witness(lhs_joint(ens, "x", x), lhs_joint(ens, "z", z), c)
        if not report.satisfied:
            violations += 1
        min_slack = min(min_slack, report.slack)
        min_mu = min(min_mu, float(member_mu_slacks(ens, x, z).min()))
        min_avg = min(min_avg, averaging_slack(ens, "x", x), averaging_slack(ens, "z", z))
    return SweepSummary(
        trials=trials,
        min_slack=float(min_slack),
        violations=violations,
        min_member_mu_slack=float(min_mu),
        min_averaging_slack=float(min_avg),
    )
