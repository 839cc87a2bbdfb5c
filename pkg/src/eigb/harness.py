"""Deterministic instance generation and bound-verification campaigns.

Matrices are built by conjugating prescribed eigenvalues with a
Haar-like random unitary, so every instance has a known target spectrum
and inertia.  A campaign cycles instances through five inertia/selection
families (both-signed spectra with selections inside, beyond, and
straddling the nonnegative block, plus the two one-signed extremes),
checks every applicable inequality on each index sequence, and aggregates
machine-readable results.  Identical seeds give identical reports.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .bounds import (
    IndexSequence,
    TOL_CLASS,
    TOL_VERIFY_BASE,
    classification_scale,
    compare_split_vs_main,
    count_selected_nonnegative,
    gap_bound,
    inertia_of,
    main_bounds,
    ostrowski_ratios,
    psd_product_bounds,
    selected_sum,
    splitting_upper_bound,
    stable_bounds,
    trace_bounds,
    wielandt_sum_bounds,
)
from .errors import (
    EigbError,
    InvalidCount,
    InvalidRange,
    InvalidSpec,
    NoSignChange,
    NotPositiveDefinite,
)
from .linalg import (
    HermitianMatrix,
    PSDMatrix,
    Spectrum,
    frobenius_norm,
    hermitian_eig,
    product_spectrum,
    validate_hermitian,
    validate_psd,
)

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, index: int) -> int:
    """Stable splittable hash (splitmix64 finalizer) for per-instance seeds."""
    x = (int(master_seed) + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one random matrix: dimension, spectrum shape, and seed."""

    n: int
    seed: int
    eigenvalue_range: tuple[float, float] = (0.1, 10.0)
    inertia_target: tuple[int, int, int] | None = None
    condition_cap: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"dimension must be >= 1, got {self.n}")
        lo, hi = self.eigenvalue_range
        if not (0.0 <= lo <= hi):
            raise InvalidSpec(f"need 0 <= lo <= hi magnitudes, got [{lo}, {hi}]")
        if self.inertia_target is not None:
            p, m, z = self.inertia_target
            if min(p, m, z) < 0 or p + m + z != self.n:
                raise InvalidSpec(
                    f"inertia target {self.inertia_target} does not sum to n={self.n}"
                )
        if self.condition_cap is not None and self.condition_cap < 1.0:
            raise InvalidSpec(f"condition cap must be >= 1, got {self.condition_cap}")


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Orthonormalize an iid complex Gaussian matrix; fix QR phase ambiguity."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(np.where(np.abs(d) > 0, d, 1.0)), 1.0)
    return q * phases


def _target_values(rng: np.random.Generator, spec: GeneratorSpec, nonnegative: bool) -> np.ndarray:
    lo, hi = spec.eigenvalue_range
    if spec.inertia_target is not None:
        pos, neg, zero = spec.inertia_target
    elif nonnegative:
        pos, neg, zero = spec.n, 0, 0
    else:
        # Unconstrained: independent random sign per eigenvalue.
        pos, neg, zero = None, None, None
    if pos is None:
        mags = rng.uniform(lo, hi, size=spec.n)
        signs = rng.integers(0, 2, size=spec.n) * 2 - 1
        values = mags * signs
    else:
        values = np.concatenate(
            [
                rng.uniform(lo, hi, size=pos),
                -rng.uniform(lo, hi, size=neg),
                np.zeros(zero),
            ]
        )
    if spec.condition_cap is not None:
        positive = values > 0
        if np.any(positive):
            floor = float(np.max(values[positive])) / spec.condition_cap
            values[positive] = np.maximum(values[positive], floor)
    return values


def gen_hermitian(spec: GeneratorSpec) -> HermitianMatrix:
    """Random Hermitian matrix with prescribed spectrum shape, deterministic in seed."""
    rng = np.random.default_rng(spec.seed)
    values = _target_values(rng, spec, nonnegative=False)
    q = _haar_unitary(rng, spec.n)
    m = (q * values) @ q.conj().T
    return validate_hermitian(m)


def gen_psd(spec: GeneratorSpec) -> PSDMatrix:
    """Random PSD matrix with nonnegative prescribed spectrum, deterministic in seed."""
    if spec.inertia_target is not None and spec.inertia_target[1] != 0:
        raise InvalidSpec("PSD target cannot contain negative eigenvalues")
    rng = np.random.default_rng(spec.seed)
    values = _target_values(rng, spec, nonnegative=True)
    q = _haar_unitary(rng, spec.n)
    m = (q * values) @ q.conj().T
    return validate_psd(m)


def enumerate_index_sequences(n: int, k: int) -> Iterator[IndexSequence]:
    """All strictly increasing 1-based selections of k out of n, lexicographic."""
    if not (1 <= k <= n):
        raise InvalidRange(f"need 1 <= k <= n, got k={k}, n={n}")
    for combo in combinations(range(1, n + 1), k):
        yield IndexSequence(indices=combo, n=n)


def all_index_sequences(n: int) -> Iterator[IndexSequence]:
    for k in range(1, n + 1):
        yield from enumerate_index_sequences(n, k)


@dataclass(frozen=True)
class Tolerances:
    """Knobs shared by every check: zero classification and slack scaling."""

    tol_class: float = TOL_CLASS
    verify_base: float = TOL_VERIFY_BASE


@dataclass(frozen=True)
class CheckResult:
    name: str
    actual: float
    lower: float | None = None
    upper: float | None = None
    lower_slack: float | None = None
    upper_slack: float | None = None
    passed: bool = True
    detail: str = ""

    def worst(self) -> float:
        slacks = [s for s in (self.lower_slack, self.upper_slack) if s is not None]
        return min(slacks) if slacks else 0.0


@dataclass(frozen=True)
class VerificationRecord:
    instance_id: int
    seed: int
    n: int
    indices: tuple[int, ...]
    selected_nonneg: int
    inertia: tuple[int, int, int]
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_slack(self) -> float:
        return min((c.worst() for c in self.checks), default=0.0)

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "seed": self.seed,
            "n": self.n,
            "indices": list(self.indices),
            "selected_nonneg": self.selected_nonneg,
            "inertia": list(self.inertia),
            "worst_slack": self.worst_slack,
            "checks": [
                {
                    "name": c.name,
                    "lower": c.lower,
                    "actual": c.actual,
                    "upper": c.upper,
                    "lower_slack": c.lower_slack,
                    "upper_slack": c.upper_slack,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


@dataclass
class InstanceSpectra:
    """Eigendata computed once per (A, B) instance and shared across selections."""

    spec_a: Spectrum
    spec_b: Spectrum
    spec_b_raw: Spectrum
    spec_ab: Spectrum
    spec_sum: Spectrum
    trace_product: float
    norm_scale: float


def instance_spectra(a: HermitianMatrix, b: PSDMatrix) -> InstanceSpectra:
    spec_a = hermitian_eig(a).spectrum
    spec_ab = product_spectrum(a, b)
    spec_sum = hermitian_eig(validate_hermitian(a.matrix + b.matrix)).spectrum
    product = a.matrix @ b.matrix
    return InstanceSpectra(
        spec_a=spec_a,
        spec_b=b.spectrum,
        spec_b_raw=b.eig.spectrum,
        spec_ab=spec_ab,
        spec_sum=spec_sum,
        trace_product=float(np.trace(product).real),
        norm_scale=1.0 + frobenius_norm(a.matrix) * frobenius_norm(b.matrix),
    )


def _bracket_check(name, lower, actual, upper, tol) -> CheckResult:
    lo_slack = actual - lower
    up_slack = upper - actual
    return CheckResult(
        name=name,
        actual=actual,
        lower=lower,
        upper=upper,
        lower_slack=lo_slack,
        upper_slack=up_slack,
        passed=lo_slack >= -tol and up_slack >= -tol,
    )


def _upper_check(name, actual, upper, tol, detail="") -> CheckResult:
    slack = upper - actual
    return CheckResult(
        name=name,
        actual=actual,
        upper=upper,
        upper_slack=slack,
        passed=slack >= -tol,
        detail=detail,
    )


def run_checks(
    sp: InstanceSpectra,
    idx: IndexSequence,
    tol: Tolerances = Tolerances(),
    instance_id: int = 0,
    seed: int = 0,
) -> VerificationRecord:
    """Evaluate every applicable inequality for one instance and selection.

    Computational errors never propagate: they become failed checks with a
    diagnostic message.
    """
    checks: list[CheckResult] = []
    spec_a, spec_b, spec_ab = sp.spec_a, sp.spec_b, sp.spec_ab
    n, k = idx.n, idx.k
    kap = count_selected_nonnegative(spec_a, idx, tol.tol_class)
    inertia = inertia_of(spec_a, tol.tol_class)
    tau = tol.verify_base * (
        1.0
        + max(abs(spec_a[0]), abs(spec_a[-1]))
        * max(abs(spec_b[0]), abs(spec_b[-1]))
        * k
    )

    try:
        lower, upper, _ = main_bounds(spec_a, spec_b, idx, tol.tol_class)
        actual = selected_sum(spec_ab, idx)
        checks.append(_bracket_check("main-bounds", lower, actual, upper, tau))

        split_up = splitting_upper_bound(spec_a, spec_b, idx, tol.tol_class)
        t1, t2, _ = compare_split_vs_main(spec_a, spec_b, idx, tol.tol_class, tau)
        checks.append(
            _upper_check(
                "dominance", upper, split_up, tau, detail=f"T1={t1!r} T2={t2!r}"
            )
        )

        if inertia.negative == 0:
            red_lo, red_up = psd_product_bounds(spec_a, spec_b, idx, tol.tol_class)
            diff = max(abs(red_lo - lower), abs(red_up - upper))
            checks.append(
                _upper_check("reduction-psd", diff, 0.0, 0.0, detail="exact identity")
            )
        if inertia.positive == 0:
            cut = tol.tol_class * classification_scale(spec_a)
            near_zero = [spec_a[i - 1] for i in idx.indices if spec_a[i - 1] >= -cut]
            if all(v == 0.0 for v in near_zero):
                red_lo, red_up = stable_bounds(spec_a, spec_b, idx, tol.tol_class)
                diff = max(abs(red_lo - lower), abs(red_up - upper))
                checks.append(
                    _upper_check(
                        "reduction-stable", diff, 0.0, 0.0, detail="exact identity"
                    )
                )

        if k == n:
            tr_lo, tr_up = trace_bounds(spec_a, spec_b)
            checks.append(
                _bracket_check("trace-bracket", tr_lo, sp.trace_product, tr_up, tau)
            )
            agreement = abs(sp.trace_product - spec_ab.sum())
            checks.append(
                _upper_check(
                    "trace-consistency", agreement, 1e-9 * sp.norm_scale, 0.0
                )
            )

        try:
            _, _, gap, bound = gap_bound(spec_a, spec_b, spec_ab, tol.tol_class)
            checks.append(_upper_check("gap", gap, bound, tau))
        except NoSignChange:
            pass

        try:
            rep = ostrowski_ratios(spec_a, spec_ab, spec_b, tol.tol_class)
            if rep.ratios:
                worst_low = min(r - rep.low for _, r in rep.ratios)
                worst_high = min(rep.high - r for _, r in rep.ratios)
                offender = min(rep.ratios, key=lambda tr: min(tr[1] - rep.low, rep.high - tr[1]))
                checks.append(
                    CheckResult(
                        name="ostrowski",
                        actual=offender[1],
                        lower=rep.low,
                        upper=rep.high,
                        lower_slack=worst_low,
                        upper_slack=worst_high,
                        passed=worst_low >= -tol.verify_base
                        and worst_high >= -tol.verify_base,
                    )
                )
        except NotPositiveDefinite:
            pass

        w_lo, w_up = wielandt_sum_bounds(spec_a, sp.spec_b_raw, idx)
        w_actual = selected_sum(sp.spec_sum, idx)
        tau_sum = tol.verify_base * (
            1.0
            + (max(abs(spec_a[0]), abs(spec_a[-1])) + max(abs(spec_b[0]), abs(spec_b[-1])))
            * k
        )
        checks.append(_bracket_check("wielandt", w_lo, w_actual, w_up, tau_sum))
    except EigbError as exc:
        checks.append(
            CheckResult(
                name="computation",
                actual=0.0,
                passed=False,
                detail=f"{type(exc).__name__}: {exc}",
            )
        )

    return VerificationRecord(
        instance_id=instance_id,
        seed=seed,
        n=n,
        indices=idx.indices,
        selected_nonneg=kap,
        inertia=inertia.as_tuple(),
        checks=tuple(checks),
    )


def _error_record(
    exc: EigbError, n: int, idx: IndexSequence, instance_id: int, seed: int
) -> VerificationRecord:
    """Failed record for an instance whose spectra could not be computed."""
    return VerificationRecord(
        instance_id=instance_id,
        seed=seed,
        n=n,
        indices=idx.indices,
        selected_nonneg=0,
        inertia=(0, 0, 0),
        checks=(
            CheckResult(
                name="computation",
                actual=0.0,
                passed=False,
                detail=f"{type(exc).__name__}: {exc}",
            ),
        ),
    )


def check_instance(
    a: HermitianMatrix,
    b: PSDMatrix,
    idx: IndexSequence,
    tol: Tolerances = Tolerances(),
    instance_id: int = 0,
    seed: int = 0,
) -> VerificationRecord:
    """Compute the instance spectra and run every applicable check."""
    try:
        sp = instance_spectra(a, b)
    except EigbError as exc:
        return _error_record(exc, a.n, idx, instance_id, seed)
    return run_checks(sp, idx, tol, instance_id, seed)


@dataclass
class CheckStats:
    name: str
    count: int = 0
    failed: int = 0
    min_slack: float = float("inf")
    sum_slack: float = 0.0

    @property
    def mean_slack(self) -> float:
        return self.sum_slack / self.count if self.count else 0.0


@dataclass(frozen=True)
class CampaignConfig:
    """Distribution of campaign instances plus verification tolerances."""

    n_min: int = 2
    n_max: int = 8
    eigenvalue_range: tuple[float, float] = (0.1, 10.0)
    inertia: tuple[int, int, int] | None = None
    exhaustive_max_n: int = 6
    sampled_sequences: int = 12
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if not (1 <= self.n_min <= self.n_max):
            raise InvalidSpec(f"bad dimension range [{self.n_min}, {self.n_max}]")
        if self.inertia is not None:
            p, m, z = self.inertia
            if min(p, m, z) < 0 or p + m + z < 1:
                raise InvalidSpec(f"bad inertia {self.inertia}")


@dataclass
class CampaignReport:
    total: int
    passed: int
    failed: int
    checks: list[CheckStats]
    failures: list[VerificationRecord]
    wall_time: float

    def to_json_dict(self) -> dict:
        # Fixed schema; wall_time deliberately excluded so identical seeds
        # serialize byte-identically.
        return {
            "version": "EIGB1",
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "checks": [
                {
                    "name": s.name,
                    "min_slack": s.min_slack,
                    "mean_slack": s.mean_slack,
                }
                for s in self.checks
            ],
            "failures": [r.to_dict() for r in self.failures],
        }


def _family_inertia(rng: np.random.Generator, family: int, n: int) -> tuple[int, int, int]:
    if family == 1:
        return (0, n, 0)
    if family == 0 or n == 1:
        return (n, 0, 0)
    pos = int(rng.integers(1, n))
    return (pos, n - pos, 0)


def _family_sequences(
    rng: np.random.Generator, family: int, n: int, nu: int, count: int
) -> list[IndexSequence]:
    """Sampled selections for large n: inside, beyond, and straddling the
    nonnegative block, padded with random subsets."""
    count = min(count, 2**n - 1)
    chosen: set[tuple[int, ...]] = set()
    if family >= 2:
        if nu >= 1:
            k = int(rng.integers(1, nu + 1))
            chosen.add(tuple(sorted(rng.choice(range(1, nu + 1), size=k, replace=False).tolist())))
        if nu < n:
            k = int(rng.integers(1, n - nu + 1))
            chosen.add(tuple(sorted(rng.choice(range(nu + 1, n + 1), size=k, replace=False).tolist())))
        if 1 <= nu < n:
            lo = int(rng.integers(1, nu + 1))
            hi = int(rng.integers(nu + 1, n + 1))
            chosen.add((lo, hi))
    while len(chosen) < count:
        k = int(rng.integers(1, n + 1))
        chosen.add(tuple(sorted(rng.choice(range(1, n + 1), size=k, replace=False).tolist())))
    return [IndexSequence(indices=c, n=n) for c in sorted(chosen)]


def run_campaign(
    count: int, config: CampaignConfig = CampaignConfig(), master_seed: int = 0
) -> CampaignReport:
    """Generate `count` instances, check every selected inequality, aggregate.

    Failures are collected rather than raised: slack statistics across the
    whole campaign are part of the result.  Identical inputs produce an
    identical report.
    """
    if count < 1:
        raise InvalidCount(f"instance count must be >= 1, got {count}")
    start = time.monotonic()
    stats: dict[str, CheckStats] = {}
    failures: list[VerificationRecord] = []
    total = 0
    passed = 0
    tol = config.tolerances

    for i in range(count):
        seed_i = derive_seed(master_seed, i)
        rng = np.random.default_rng(seed_i)
        if config.inertia is not None:
            inertia = config.inertia
            n = sum(inertia)
        else:
            n = int(rng.integers(config.n_min, config.n_max + 1))
            inertia = _family_inertia(rng, i % 5, n)
        a = gen_hermitian(
            GeneratorSpec(
                n=n,
                seed=derive_seed(seed_i, 1),
                eigenvalue_range=config.eigenvalue_range,
                inertia_target=inertia,
            )
        )
        # Every third instance gets a singular B for boundary coverage.
        b_inertia = (n - 1, 0, 1) if (i % 3 == 2 and n >= 2) else (n, 0, 0)
        b = gen_psd(
            GeneratorSpec(
                n=n,
                seed=derive_seed(seed_i, 2),
                eigenvalue_range=config.eigenvalue_range,
                inertia_target=b_inertia,
            )
        )
        try:
            sp = instance_spectra(a, b)
        except EigbError as exc:
            record = _error_record(
                exc, n, IndexSequence(indices=tuple(range(1, n + 1)), n=n), i, seed_i
            )
            total += 1
            failures.append(record)
            st = stats.setdefault("computation", CheckStats(name="computation"))
            st.count += 1
            st.failed += 1
            st.min_slack = min(st.min_slack, 0.0)
            continue
        nu = inertia_of(sp.spec_a, tol.tol_class).nonnegative
        if n <= config.exhaustive_max_n:
            sequences = list(all_index_sequences(n))
        else:
            sequences = _family_sequences(rng, i % 5, n, nu, config.sampled_sequences)
        for idx in sequences:
            record = run_checks(sp, idx, tol, instance_id=i, seed=seed_i)
            total += 1
            if record.passed:
                passed += 1
            else:
                failures.append(record)
            for c in record.checks:
                st = stats.setdefault(c.name, CheckStats(name=c.name))
                st.count += 1
                if not c.passed:
                    st.failed += 1
                worst = c.worst()
                st.min_slack = min(st.min_slack, worst)
                st.sum_slack += worst

    return CampaignReport(
        total=total,
        passed=passed,
        failed=total - passed,
        checks=[stats[name] for name in sorted(stats)],
        failures=failures,
        wall_time=time.monotonic() - start,
    )
