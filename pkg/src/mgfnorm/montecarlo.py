"""Monte Carlo calibration: null tables, critical values, p-values, power.

Every replication owns an RNG stream derived from (seed, task hash,
replication index), so results are bit-identical regardless of block
size, thread count, or which other statistics are evaluated alongside.
The task hash separates null sampling from power sampling (independent
streams, no favorable correlation), while statistics evaluated on the
same task share the same draws, exactly like a simulation study that
runs a whole battery over one set of samples.

Statistics are described by ``StatSpec`` with a canonical string form::

    T:gamma=5      T:gamma=inf     zghoul:gamma=3   hj:beta=2
    hz             hz:gamma=0.9    energy           hjm:gamma=5
    mardia_skew    mardia_kurt

Each spec maps a sample to one scalar whose large values indicate
non-normality (the kurtosis test uses the absolute standardized value,
folding its two tails into one). T uses the scaled statistic, with the
usual x100 convention at gamma = inf.
"""

import hashlib
import json
import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

from . import tables
from ._dispatch import get_kernels
from .competitors import (
    HJM_DEFAULT_N_CAP,
    energy_statistic,
    hj_statistic,
    hjm_statistic,
    hz_default_gamma,
    hz_statistic,
    mardia_kurt_test,
    mardia_skew_test,
    zghoul_statistic,
)
from .errors import (
    BetaTooSmall,
    DimensionError,
    GammaTooSmall,
    InvalidSpec,
    MGFNotFinite,
    SampleTooLarge,
    SeriesNonConvergence,
    SingularCovariance,
)
from .residuals import SINGULARITY_RTOL
from .sampling import RNG_ALGORITHM, AlternativeSpec, SeededStream, parse_alternative, sample
from .statistic import scale_factor, t_statistic

DESK_REPS_CRITVAL = 100_000
DESK_REPS_POWER = 10_000
# the O(n^4) statistic gets 10x fewer replications, as is customary
HJM_REPS_DIVISOR = 10

GAMMA_GRID = (2.5, 3.0, 4.0, 5.0, 7.0, 10.0, float("inf"))

_FAMILIES = ("T", "zghoul", "hj", "hz", "energy", "hjm",
             "mardia_skew", "mardia_kurt")

# elements per gram block; bounds peak memory around a few hundred MB
_BLOCK_TARGET = 4_000_000


@dataclass(frozen=True)
class StatSpec:
    """One test statistic with its tuning parameter(s), if any.

    gamma=None means "to be filled from the CLI gamma list" for T, zghoul
    and hjm, and "use the data-driven default bandwidth" for hz.
    """

    family: str
    gamma: float = None
    beta: float = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidSpec("unknown statistic %r" % (self.family,))
        g = self.gamma
        if self.family in ("hj", "energy", "mardia_skew", "mardia_kurt") and g is not None:
            raise InvalidSpec("%s takes no gamma parameter" % self.family)
        if self.family != "hj" and self.beta is not None:
            raise InvalidSpec("only hj takes a beta parameter")
        if g is not None:
            if math.isnan(g) or g <= 0.0:
                raise GammaTooSmall("gamma must be positive, got %r" % g)
            if self.family == "zghoul" and g <= 2.0:
                raise GammaTooSmall("zghoul needs gamma > 2, got %r" % g)
            if self.family == "hjm" and (math.isinf(g) or g <= 1.0):
                raise GammaTooSmall("hjm needs finite gamma > 1, got %r" % g)
            if self.family == "hz" and math.isinf(g):
                raise InvalidSpec("hz bandwidth must be finite")
            if self.family == "zghoul" and math.isinf(g):
                raise InvalidSpec("zghoul has no gamma = inf limit here")
        if self.family == "hj":
            b = self.beta
            if b is None:
                raise InvalidSpec("hj requires beta")
            if math.isinf(b) or b <= 1.0:
                raise BetaTooSmall("hj needs finite beta > 1, got %r" % b)

    @property
    def needs_gamma(self):
        return self.family in ("T", "zghoul", "hjm") and self.gamma is None

    def with_gamma(self, gamma):
        return StatSpec(self.family, gamma=float(gamma), beta=self.beta)

    def canonical(self):
        if self.family == "hj":
            return "hj:beta=%g" % self.beta
        if self.gamma is None:
            return self.family
        return "%s:gamma=%g" % (self.family, self.gamma)

    def tuning(self):
        if self.family == "hj":
            return {"beta": self.beta}
        if self.gamma is not None:
            return {"gamma": self.gamma}
        return {}

    def scaled_values(self, gram, sqn, d):
        """Batched scaled statistic over (B,n,n) gram / (B,n) squared norms."""
        kern = get_kernels()
        n = gram.shape[-1]
        fam = self.family
        if fam == "T":
            g = self.gamma
            if math.isinf(g):
                b1, b1t = kern.skewness_sums(gram, sqn)
                return 100.0 * (2.0 * b1 + b1t)
            return scale_factor(g, d) * kern.t_stat(gram, sqn, g, d)
        if fam == "zghoul":
            if d != 1:
                raise DimensionError("zghoul is univariate, got d = %d" % d)
            return kern.hj_stat(gram, sqn, self.gamma, d)
        if fam == "hj":
            return kern.hj_stat(gram, sqn, self.beta, d)
        if fam == "hz":
            g = self.gamma if self.gamma is not None else hz_default_gamma(n, d)
            return kern.hz_stat(gram, sqn, g, d)
        if fam == "energy":
            vals = kern.energy_stat(gram, sqn, d)
            if np.isnan(vals).any():
                raise SeriesNonConvergence(
                    "expected-distance series failed to converge"
                )
            return vals
        if fam == "hjm":
            if n > HJM_DEFAULT_N_CAP:
                raise SampleTooLarge(
                    "hjm is O(n^4); refusing n = %d > %d" % (n, HJM_DEFAULT_N_CAP)
                )
            return kern.hjm_stat(gram, sqn, self.gamma, d)
        if fam == "mardia_skew":
            b1, _ = kern.skewness_sums(gram, sqn)
            return n * b1 / 6.0
        b2 = np.mean(sqn * sqn, axis=-1)
        z = math.sqrt(n) * (b2 - d * (d + 2.0)) / math.sqrt(8.0 * d * (d + 2.0))
        return np.abs(z)


def parse_stat(text, allow_small_gamma=False):
    """Parse the canonical statistic string form into a StatSpec."""
    text = text.strip()
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    if name == "t":
        name = "T"
    if name not in _FAMILIES:
        raise InvalidSpec("unknown statistic %r" % (text,))
    gamma = beta = None
    if rest:
        for token in rest.split(","):
            key, eq, val = token.strip().partition("=")
            if not eq:
                raise InvalidSpec("malformed token %r in %r" % (token, text))
            val = val.strip().lower()
            num = float("inf") if val in ("inf", "infinity") else float(val)
            if key.strip() == "gamma":
                gamma = num
            elif key.strip() == "beta":
                beta = num
            else:
                raise InvalidSpec("unknown parameter %r in %r" % (key, text))
    spec = StatSpec(name, gamma=gamma, beta=beta)
    if (
        spec.family == "T"
        and spec.gamma is not None
        and spec.gamma <= 2.0
        and not allow_small_gamma
    ):
        raise GammaTooSmall(
            "gamma = %g is outside the supported range (> 2); "
            "pass allow_small_gamma to experiment below it" % spec.gamma
        )
    return spec


def as_stat_spec(stat, allow_small_gamma=False):
    if isinstance(stat, StatSpec):
        return stat
    return parse_stat(stat, allow_small_gamma)


def evaluate_statistic(stat, res, allow_small_gamma=False):
    """(raw value, scaled MC scalar) of one statistic on one residual set.

    The scaled scalar is the quantity calibrated by the null tables, so
    it is the one to hand to ``mc_p_value``. For the competitor tests
    raw and scaled coincide; for T they differ by the gamma-dependent
    scale (x100 at gamma = inf); the moment tests report (skewness,
    chi-square scale) and (kurtosis, absolute standardized value).
    """
    spec = as_stat_spec(stat, allow_small_gamma)
    if spec.needs_gamma:
        raise InvalidSpec("statistic %r needs a concrete gamma" % spec.canonical())
    fam = spec.family
    if fam == "T":
        r = t_statistic(res, spec.gamma, allow_small_gamma=allow_small_gamma)
        return r.raw, r.scaled
    if fam == "zghoul":
        v = zghoul_statistic(res, spec.gamma)
    elif fam == "hj":
        v = hj_statistic(res, spec.beta)
    elif fam == "hz":
        v = hz_statistic(res, spec.gamma)
    elif fam == "energy":
        v = energy_statistic(res)
    elif fam == "hjm":
        v = hjm_statistic(res, spec.gamma)
    elif fam == "mardia_skew":
        b1, _ = mardia_skew_test(res)
        return b1, res.n * b1 / 6.0
    else:
        b2, _ = mardia_kurt_test(res)
        d = res.d
        z = math.sqrt(res.n) * (b2 - d * (d + 2.0)) / math.sqrt(8.0 * d * (d + 2.0))
        return b2, abs(z)
    return v, v


def expand_battery(specs, gamma_list):
    """Fill gamma-less specs from the gamma list, in order, deduplicated.

    T expands over the whole list; zghoul and hjm only over the values in
    their parameter domains (finite, > 2 resp. > 1): the infinity marker
    is a T-only limit.
    """
    out = []
    for spec in specs:
        spec = as_stat_spec(spec)
        if not spec.needs_gamma:
            if spec not in out:
                out.append(spec)
            continue
        for g in gamma_list:
            g = float(g)
            if spec.family == "zghoul" and (math.isinf(g) or g <= 2.0):
                continue
            if spec.family == "hjm" and (math.isinf(g) or g <= 1.0):
                continue
            cand = spec.with_gamma(g)
            if cand not in out:
                out.append(cand)
    return out


@dataclass(frozen=True)
class MCResult:
    kind: str  # CriticalValue | PValue | Power
    statistic: str
    n: int
    d: int
    alpha: float  # None for PValue
    reps: int
    seed: int
    value: float
    std_error: float

    def __post_init__(self):
        if self.kind not in ("CriticalValue", "PValue", "Power"):
            raise InvalidSpec("unknown result kind %r" % (self.kind,))
        if self.reps < 100:
            raise InvalidSpec("need reps >= 100, got %d" % self.reps)
        if self.alpha is not None and not 0.0 < self.alpha < 1.0:
            raise InvalidSpec("alpha must lie in (0, 1)")
        if self.kind in ("PValue", "Power") and not 0.0 <= self.value <= 1.0:
            raise InvalidSpec("%s must lie in [0, 1]" % self.kind)
        if not self.std_error >= 0.0:
            raise InvalidSpec("std_error must be nonnegative")


def _task_key(tag):
    h = hashlib.sha256(tag.encode("utf-8")).digest()
    return (
        int.from_bytes(h[0:4], "little"),
        int.from_bytes(h[4:8], "little"),
    )


def replication_stream(seed, tag, index):
    """The RNG stream owned by one replication of one MC task."""
    return SeededStream(int(seed), int(index), key=_task_key(tag))


def _batch_gram(x):
    # x (B,n,d) -> scale-invariant residual cross products per replication
    b, n, d = x.shape
    xc = x - x.mean(axis=1, keepdims=True)
    s = np.einsum("bni,bnj->bij", xc, xc) / n
    evals, evecs = np.linalg.eigh(s)
    bad = (evals[:, -1] <= 0.0) | (evals[:, 0] <= SINGULARITY_RTOL * evals[:, -1])
    if bad.any():
        raise SingularCovariance(
            "%d replication(s) produced a singular sample covariance "
            "(first at block offset %d)" % (int(bad.sum()), int(np.argmax(bad)))
        )
    root = evecs / np.sqrt(evals)[:, None, :]
    inv_sqrt = root @ np.transpose(evecs, (0, 2, 1))
    y = xc @ inv_sqrt
    gram = y @ np.transpose(y, (0, 2, 1))
    sqn = np.einsum("bnd,bnd->bn", y, y)
    return np.ascontiguousarray(gram), np.ascontiguousarray(sqn)


def _collect(stats, n, d, reps, seed, tag, draw):
    """Scaled statistic values over reps independent samples.

    ``draw(rng) -> (n, d) array``. All statistics see the same samples.
    A singular covariance aborts with diagnostics: under the documented
    preconditions (n >= d+1, continuous laws) it indicates a bug, not
    bad luck, so silent resampling would hide it.
    """
    if reps < 1:
        raise InvalidSpec("reps must be positive")
    block = max(1, min(512, _BLOCK_TARGET // (n * n)))
    out = {spec: np.empty(reps) for spec in stats}
    for start in range(0, reps, block):
        b = min(block, reps - start)
        x = np.empty((b, n, d))
        for i in range(b):
            rng = replication_stream(seed, tag, start + i).generator()
            x[i] = draw(rng)
        try:
            gram, sqn = _batch_gram(x)
        except SingularCovariance as exc:
            raise SingularCovariance(
                "task %r, block starting at replication %d: %s"
                % (tag, start, exc)
            ) from exc
        for spec in stats:
            out[spec][start : start + b] = spec.scaled_values(gram, sqn, d)
    return out


def _null_tag(n, d):
    # statistic-independent so a whole battery shares one set of null draws
    return "null:n=%d,d=%d" % (n, d)


def quantile_index(reps, alpha):
    """1-based order-statistic index of the empirical (1-alpha) quantile."""
    return min(max(int(math.ceil((1.0 - alpha) * reps)), 1), reps)


def _order_stat_se(sorted_vals, alpha):
    # spread between the order statistics one binomial sd to either side
    reps = len(sorted_vals)
    m = quantile_index(reps, alpha)
    half = math.sqrt(reps * alpha * (1.0 - alpha))
    lo = max(1, int(math.floor(m - half)))
    hi = min(reps, int(math.ceil(m + half)))
    return 0.5 * (sorted_vals[hi - 1] - sorted_vals[lo - 1])


@dataclass(frozen=True)
class NullTable:
    """Sorted null-distribution sample of one scaled statistic, with provenance."""

    statistic: str
    n: int
    d: int
    reps: int
    seed: int
    values: tuple
    tuning: dict = field(default_factory=dict)
    schema_version: int = 1
    algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if len(self.values) != self.reps:
            raise InvalidSpec("null table length must equal reps")
        vals = np.asarray(self.values)
        if vals.size > 1 and np.any(np.diff(vals) < 0.0):
            raise InvalidSpec("null table values must be sorted ascending")

    def quantile(self, alpha):
        return self.values[quantile_index(self.reps, alpha) - 1]

    def quantile_std_error(self, alpha):
        return _order_stat_se(self.values, alpha)

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "statistic": self.statistic,
            "tuning": dict(self.tuning),
            "n": self.n,
            "d": self.d,
            "reps": self.reps,
            "seed": self.seed,
            "algorithm": self.algorithm,
            "values": list(self.values),
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            doc = json.load(fh)
        if doc.get("schema_version") != 1:
            raise InvalidSpec(
                "unsupported null-table schema %r" % doc.get("schema_version")
            )
        return cls(
            statistic=doc["statistic"],
            n=doc["n"],
            d=doc["d"],
            reps=doc["reps"],
            seed=doc["seed"],
            values=tuple(doc["values"]),
            tuning=doc.get("tuning", {}),
            algorithm=doc.get("algorithm", RNG_ALGORITHM),
        )


def _cache_path(cache_dir, spec, n, d, reps, seed):
    slug = re.sub(r"[^A-Za-z0-9.]+", "_", spec.canonical())
    name = "null-%s-n%d-d%d-r%d-s%d.json" % (slug, n, d, reps, seed)
    return os.path.join(cache_dir, name)


def compute_null_table(stat, n, d, reps=DESK_REPS_CRITVAL, seed=0, cache_dir=None):
    """Simulate (or load from cache) the sorted null sample for one statistic."""
    spec = as_stat_spec(stat)
    if spec.needs_gamma:
        raise InvalidSpec("statistic %r needs a concrete gamma" % spec.canonical())
    path = None
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        path = _cache_path(cache_dir, spec, n, d, reps, seed)
        if os.path.exists(path):
            return NullTable.load(path)
    vals = _null_values([spec], n, d, reps, seed)[spec]
    table = NullTable(
        statistic=spec.family,
        n=n,
        d=d,
        reps=reps,
        seed=seed,
        values=tuple(np.sort(vals).tolist()),
        tuning=spec.tuning(),
    )
    if path is not None:
        table.save(path)
    return table


def _null_values(specs, n, d, reps, seed):
    return _collect(
        specs, n, d, reps, seed, _null_tag(n, d), lambda rng: rng.standard_normal((n, d))
    )


def estimate_critical_value(
    stat, n, d, alpha=0.05, reps=DESK_REPS_CRITVAL, seed=0, cache_dir=None
):
    """Empirical (1-alpha) null quantile of the scaled statistic.

    Quantile convention: the order statistic at 1-based index
    ceil((1-alpha) reps) of the sorted null values (slightly
    conservative). The standard error comes from the binomial
    order-statistic approximation.
    """
    spec = as_stat_spec(stat)
    table = compute_null_table(spec, n, d, reps=reps, seed=seed, cache_dir=cache_dir)
    return MCResult(
        kind="CriticalValue",
        statistic=spec.canonical(),
        n=n,
        d=d,
        alpha=alpha,
        reps=reps,
        seed=seed,
        value=table.quantile(alpha),
        std_error=table.quantile_std_error(alpha),
    )


def mc_p_value(stat, observed, n, d, reps=DESK_REPS_POWER, seed=0, cache_dir=None):
    """Monte Carlo p-value (1 + #{null >= observed}) / (reps + 1).

    The +1 terms keep the p-value positive and make the test valid (the
    observed sample counts as one replication under the null).
    """
    observed = float(observed)
    if math.isnan(observed) or math.isinf(observed):
        raise InvalidSpec("observed statistic must be finite")
    spec = as_stat_spec(stat)
    table = compute_null_table(spec, n, d, reps=reps, seed=seed, cache_dir=cache_dir)
    vals = np.asarray(table.values)
    count = int(np.count_nonzero(vals >= observed))
    p = (1.0 + count) / (reps + 1.0)
    return MCResult(
        kind="PValue",
        statistic=spec.canonical(),
        n=n,
        d=d,
        alpha=None,
        reps=reps,
        seed=seed,
        value=p,
        std_error=math.sqrt(p * (1.0 - p) / reps),
    )


def _power_tag(alt, n):
    return "power:alt=%s,n=%d" % (alt.canonical(), n)


def estimate_power(
    stat,
    alt,
    n,
    d=None,
    alpha=0.05,
    reps=DESK_REPS_POWER,
    seed=0,
    critical_value=None,
    cache_dir=None,
):
    """Rejection rate of one statistic against one alternative.

    When no critical value is passed, it is estimated first from an
    independent null stream (10x the power replications, capped at the
    desk default) with the same base seed.
    """
    spec = as_stat_spec(stat)
    if isinstance(alt, str):
        alt = parse_alternative(alt)
    if d is None:
        d = alt.d
    elif d != alt.d:
        raise InvalidSpec(
            "alternative %r has d = %d, not %d" % (alt.canonical(), alt.d, d)
        )
    if critical_value is None:
        cv_reps = min(max(10 * reps, 1000), DESK_REPS_CRITVAL)
        critical_value = estimate_critical_value(
            spec, n, d, alpha=alpha, reps=cv_reps, seed=seed, cache_dir=cache_dir
        ).value
    vals = _collect(
        [spec], n, d, reps, seed, _power_tag(alt, n), lambda rng: sample(alt, n, rng)
    )[spec]
    p = np.count_nonzero(vals > critical_value) / float(reps)
    return MCResult(
        kind="Power",
        statistic=spec.canonical(),
        n=n,
        d=d,
        alpha=alpha,
        reps=reps,
        seed=seed,
        value=p,
        std_error=math.sqrt(p * (1.0 - p) / reps),
    )


def consistency_curve(stat, alt, gamma=None, n_grid=(50, 100, 200, 400), reps=200, seed=0):
    """Mean unscaled T/n along a grid of sample sizes.

    Under any fixed alternative whose moment generating function is
    finite, T/n converges to the positive population integral that the
    statistic estimates, so the curve should rise to a plateau; under
    the null it decays toward zero. Heavy-tailed families without an
    MGF are rejected because the population integral is infinite there
    and the curve means nothing.
    """
    spec = as_stat_spec(stat) if stat is not None else StatSpec("T", gamma=gamma)
    if spec.family != "T":
        raise InvalidSpec("consistency curves are defined for the T statistic")
    if gamma is not None:
        spec = StatSpec("T", gamma=float(gamma))
    if spec.gamma is None or math.isinf(spec.gamma):
        raise InvalidSpec("consistency curves need a finite gamma")
    if isinstance(alt, str):
        alt = parse_alternative(alt)
    if not alt.has_mgf():
        raise MGFNotFinite(
            "alternative %r has no finite moment generating function"
            % alt.canonical()
        )
    kern = get_kernels()
    d = alt.d
    curve = []
    for n in n_grid:
        n = int(n)
        tag = "consistency:alt=%s,gamma=%g,n=%d" % (alt.canonical(), spec.gamma, n)
        block = max(1, min(512, _BLOCK_TARGET // (n * n)))
        total = 0.0
        for start in range(0, reps, block):
            b = min(block, reps - start)
            x = np.empty((b, n, d))
            for i in range(b):
                rng = replication_stream(seed, tag, start + i).generator()
                x[i] = sample(alt, n, rng)
            gram, sqn = _batch_gram(x)
            total += float(np.sum(kern.t_stat(gram, sqn, spec.gamma, d)))
        curve.append((n, total / (reps * n)))
    return curve


def parse_subset(text):
    """Parse a subset filter like "n=50,d=1,stat=T10,row=NMIX1"."""
    if text is None:
        return {}
    out = {}
    for token in str(text).split(","):
        token = token.strip()
        if not token:
            continue
        key, eq, val = token.partition("=")
        key = key.strip().lower()
        if not eq or key not in ("n", "d", "stat", "row"):
            raise InvalidSpec("bad subset token %r" % token)
        out[key] = int(val) if key in ("n", "d") else val.strip()
    return out


def _match_label(wanted, label):
    return wanted.lower() == label.lower()


def reproduce_table(table_id, reps=None, seed=0, subset=None, cache_dir=None):
    """Recompute one published grid and report deviations cell by cell.

    Returns a dict report (rows of cells with reference value, recomputed
    value, and deviation). ``subset`` filters rows/columns, e.g.
    "n=50,d=1" for the critical-value grid or "stat=T10,row=NMIX1" for a
    power grid.
    """
    table_id = str(table_id).upper()
    if table_id not in tables.TABLE_IDS:
        raise InvalidSpec("unknown table id %r" % (table_id,))
    want = parse_subset(subset) if not isinstance(subset, dict) else dict(subset)
    if table_id == "T2":
        return _reproduce_critvals(want, reps, seed, cache_dir)
    return _reproduce_power(table_id, want, reps, seed, cache_dir)


def _reproduce_critvals(want, reps, seed, cache_dir):
    reps = DESK_REPS_CRITVAL if reps is None else int(reps)
    ref = tables.TABLE2
    alpha = ref["alpha"]
    gammas = ref["gammas"]
    labels = ["T%g" % g if not math.isinf(g) else "Tinf" for g in gammas]
    keep = [
        i
        for i, lab in enumerate(labels)
        if "stat" not in want or _match_label(want["stat"], lab)
    ]
    rows = []
    for n, d, ref_vals in ref["rows"]:
        if want.get("n", n) != n or want.get("d", d) != d:
            continue
        specs = [StatSpec("T", gamma=gammas[i]) for i in keep]
        vals = _null_values(specs, n, d, reps, seed)
        m = quantile_index(reps, alpha)
        cells = []
        for i, spec in zip(keep, specs):
            v = float(np.sort(vals[spec])[m - 1])
            cells.append(
                {
                    "column": labels[i],
                    "statistic": spec.canonical(),
                    "reference": ref_vals[i],
                    "value": v,
                    "rel_deviation": v / ref_vals[i] - 1.0,
                }
            )
        rows.append({"row": "n=%d,d=%d" % (n, d), "n": n, "d": d, "cells": cells})
    return {
        "table": "T2",
        "kind": "critical_values",
        "alpha": alpha,
        "reps": reps,
        "seed": seed,
        "rows": rows,
    }


def _reproduce_power(table_id, want, reps, seed, cache_dir):
    reps = DESK_REPS_POWER if reps is None else int(reps)
    ref = tables.POWER_TABLES[table_id]
    n, d, alpha = ref["n"], ref["d"], ref["alpha"]
    if want.get("n", n) != n or want.get("d", d) != d:
        return {
            "table": table_id,
            "kind": "power",
            "alpha": alpha,
            "n": n,
            "d": d,
            "reps": reps,
            "seed": seed,
            "rows": [],
        }
    columns = [
        (i, lab, parse_stat(s))
        for i, (lab, s) in enumerate(ref["columns"])
        if "stat" not in want or _match_label(want["stat"], lab)
    ]
    # critical values once per column; hjm runs at a tenth of the budget
    hjm_reps = max(reps // HJM_REPS_DIVISOR, 100)
    critvals = {}
    for _, lab, spec in columns:
        r = reps if spec.family != "hjm" else hjm_reps
        cv_reps = min(max(10 * r, 1000), DESK_REPS_CRITVAL)
        critvals[spec] = estimate_critical_value(
            spec, n, d, alpha=alpha, reps=cv_reps, seed=seed, cache_dir=cache_dir
        ).value
    rows = []
    for label, alt_text, pcts in ref["rows"]:
        if "row" in want and not _match_label(want["row"], label):
            continue
        alt = parse_alternative(alt_text)
        shared = [spec for _, _, spec in columns if spec.family != "hjm"]
        hjm_specs = [spec for _, _, spec in columns if spec.family == "hjm"]
        vals = {}
        if shared:
            vals.update(
                _collect(
                    shared, n, d, reps, seed, _power_tag(alt, n),
                    lambda rng: sample(alt, n, rng),
                )
            )
        if hjm_specs:
            vals.update(
                _collect(
                    hjm_specs, n, d, hjm_reps, seed, _power_tag(alt, n),
                    lambda rng: sample(alt, n, rng),
                )
            )
        cells = []
        for i, lab, spec in columns:
            r = reps if spec.family != "hjm" else hjm_reps
            power = 100.0 * np.count_nonzero(vals[spec] > critvals[spec]) / float(r)
            cells.append(
                {
                    "column": lab,
                    "statistic": spec.canonical(),
                    "reference": pcts[i],
                    "value": power,
                    "deviation": power - pcts[i],
                }
            )
        rows.append({"row": label, "alternative": alt.canonical(), "cells": cells})
    return {
        "table": table_id,
        "kind": "power",
        "alpha": alpha,
        "n": n,
        "d": d,
        "reps": reps,
        "seed": seed,
        "rows": rows,
    }
