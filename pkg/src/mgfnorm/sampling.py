"""Seeded samplers for the null and the benchmark alternative distributions.

Distributions are described by ``AlternativeSpec`` objects with a canonical
string form used by the CLI and result files, e.g.::

    normal:d=2                  standard d-variate normal
    nmix1:d=3                   normal mixture #1 (see below)
    nmix2:d=1                   normal mixture #2
    mvt:nu=5,d=2                multivariate t_nu(0, I_d)
    chisq:k=15,d=3,iid          i.i.d. chi-square(15) marginals
    gamma:a=4,b=2,d=5,iid       i.i.d. Gamma(shape=4, rate=2) marginals
    t:nu=3,d=2,onemarg          d-1 standard normal marginals + one t(3)
    lognormal:mu=0,sigma=0.5,d=1,iid
    pearson7:m=10,d=2,iid       symmetric heavy-tailed family (see below)
    sn:lam=3,d=1,iid            skew normal, skewness parameter 3
    slogn:mu=0,sigma=0.5,d=3    spherical law with lognormal radius
    nmrho:rho=0.2,d=5           normal-marginal, non-normal joint mixture
    weibull:k=10,d=1,iid / logistic:d=2,iid

The named mixtures are dimension-dependent, matching the usual benchmark
suites: for d = 1, nmix1 = 0.5 N(0,1) + 0.5 N(0,4) and
nmix2 = 0.75 N(0,1) + 0.25 N(0,4); for d > 1,
nmix1 = 0.9 N_d(0, I) + 0.1 N_d(3, I) (skewed, heavy tails) and
nmix2 = 0.9 N_d(0, B_d) + 0.1 N_d(0, I) with B_d having unit diagonal and
0.9 off-diagonal (symmetric, heavy tails). nmrho mixes
0.5 N_d(0, R) + 0.5 N_d(0, R') where R / R' have +rho / -rho off-diagonal:
every marginal is exactly N(0,1) but the joint law is not normal.

``pearson7:m=...`` draws the symmetric Pearson-type-VII family. Two
parameter conventions exist in the wild; ``conv=df`` (default) treats m as
a Student-t degrees-of-freedom (draw = t_m, the convention of common R
samplers and the one that reproduces published power studies), while
``conv=shape`` treats m as the density exponent (draw = t_{2m-1}/sqrt(2m-1)).

Reproducibility: all sampling goes through ``SeededStream``; identical
(spec, n, seed, stream_index) give bit-identical output on any machine,
thread count, or replication schedule. Streams with distinct indices are
statistically independent.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec

RNG_ALGORITHM = "pcg64"

# family name -> (required params, numeric validation)
_MARGINALS = ("chisq", "lognormal", "logistic", "gamma", "weibull",
              "pearson7", "sn", "t")
_JOINT = ("normal", "nmix1", "nmix2", "mvt", "slogn", "nmrho")

_PARAMS = {
    "normal": (),
    "nmix1": (),
    "nmix2": (),
    "mvt": ("nu",),
    "slogn": ("mu", "sigma"),
    "nmrho": ("rho",),
    "chisq": ("k",),
    "lognormal": ("mu", "sigma"),
    "logistic": (),
    "gamma": ("a", "b"),
    "weibull": ("k",),
    "pearson7": ("m",),
    "sn": ("lam",),
    "t": ("nu",),
}

# families whose moment generating function is finite at least on a
# neighborhood of the origin (needed by consistency diagnostics); the
# excluded ones have E e^{tX} = infinity for every t != 0 (t, mvt,
# pearson7) or every t > 0 (lognormal, and hence the lognormal-radius
# spherical law)
_HAS_MGF = ("normal", "nmix1", "nmix2", "nmrho", "chisq", "logistic",
            "gamma", "weibull", "sn")


@dataclass(frozen=True)
class SeededStream:
    """Named, splittable RNG stream: (seed, stream_index) -> sequence."""

    seed: int
    stream_index: int = 0
    key: tuple = field(default_factory=tuple)
    algorithm: str = RNG_ALGORITHM

    def generator(self):
        if self.algorithm != RNG_ALGORITHM:
            raise InvalidSpec("unknown RNG algorithm %r" % (self.algorithm,))
        ss = np.random.SeedSequence(
            entropy=self.seed, spawn_key=tuple(self.key) + (self.stream_index,)
        )
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class AlternativeSpec:
    """One sampling distribution: family, parameters, dimension, mode.

    ``mode`` is only meaningful for marginal families: "iid" gives d
    independent copies, "onemarg" combines d-1 standard normal marginals
    with one copy of the family. Use :func:`parse_alternative` to build
    from the canonical string form.
    """

    family: str
    params: tuple  # ((name, value), ...) in the family's declared order
    d: int
    mode: str = "iid"

    def __post_init__(self):
        _validate_spec(self)

    def param(self, name):
        return dict(self.params)[name]

    def canonical(self):
        """Canonical string form (stable across runs, used in file formats)."""
        parts = ["%s=%g" % (k, v) for k, v in self.params]
        parts.append("d=%d" % self.d)
        if self.family in _MARGINALS:
            parts.append(self.mode)
        return "%s:%s" % (self.family, ",".join(parts))

    def has_mgf(self):
        return self.family in _HAS_MGF


def _validate_spec(spec):
    if spec.family not in _PARAMS:
        raise InvalidSpec("unknown family %r" % (spec.family,))
    names = tuple(k for k, _ in spec.params)
    if names != _PARAMS[spec.family]:
        raise InvalidSpec(
            "family %s needs parameters %r, got %r"
            % (spec.family, _PARAMS[spec.family], names)
        )
    if spec.d < 1:
        raise InvalidSpec("dimension must be >= 1")
    if spec.family in _JOINT and spec.mode != "iid":
        raise InvalidSpec("mode flags only apply to marginal families")
    if spec.mode not in ("iid", "onemarg"):
        raise InvalidSpec("mode must be iid or onemarg")
    p = dict(spec.params)
    pos = {"nu": "nu", "sigma": "sigma", "k": "k", "a": "a", "b": "b"}
    for key, label in pos.items():
        if key in p and p[key] <= 0.0:
            raise InvalidSpec("%s must be positive" % label)
    if spec.family == "pearson7" and p["m"] <= 0.5:
        raise InvalidSpec("pearson7 shape must exceed 1/2")
    if spec.family == "nmrho":
        if not 0.0 < p["rho"] < 1.0:
            raise InvalidSpec("rho must lie in (0, 1)")
        if spec.d > 1 and p["rho"] >= 1.0 / (spec.d - 1):
            raise InvalidSpec(
                "rho must stay below 1/(d-1) for a positive-definite mixture"
            )


# extra non-numeric options some families accept (token "key=word")
_WORD_PARAMS = {"pearson7": {"conv": ("df", "shape")}}


def parse_alternative(text):
    """Parse the canonical string form into an AlternativeSpec."""
    text = text.strip()
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    if family not in _PARAMS:
        raise InvalidSpec("unknown family %r" % (family,))
    d = 1
    mode = "iid"
    values = {}
    words = {}
    if rest:
        for token in rest.split(","):
            token = token.strip().lower()
            if not token:
                continue
            if token in ("iid", "onemarg"):
                mode = token
                continue
            key, eq, val = token.partition("=")
            if not eq:
                raise InvalidSpec("malformed token %r in %r" % (token, text))
            if key == "d":
                d = int(val)
            elif family in _WORD_PARAMS and key in _WORD_PARAMS[family]:
                if val not in _WORD_PARAMS[family][key]:
                    raise InvalidSpec("bad value %r for %s" % (val, key))
                words[key] = val
            else:
                try:
                    values[key] = float(val)
                except ValueError:
                    raise InvalidSpec("non-numeric value in token %r" % token)
    try:
        params = tuple((k, values.pop(k)) for k in _PARAMS[family])
    except KeyError as exc:
        raise InvalidSpec("family %s is missing parameter %s" % (family, exc))
    if values:
        raise InvalidSpec("unknown parameters %r for %s" % (sorted(values), family))
    spec = AlternativeSpec(family, params, d, mode)
    if words:
        object.__setattr__(spec, "_word_params", words)
    return spec


def _word_param(spec, key, default):
    return getattr(spec, "_word_params", {}).get(key, default)


def _marginal_draw(spec, size, rng):
    p = dict(spec.params)
    fam = spec.family
    if fam == "chisq":
        return rng.chisquare(p["k"], size)
    if fam == "lognormal":
        return rng.lognormal(p["mu"], p["sigma"], size)
    if fam == "logistic":
        return rng.logistic(0.0, 1.0, size)
    if fam == "gamma":
        # shape a, RATE b (mean a/b)
        return rng.gamma(p["a"], 1.0 / p["b"], size)
    if fam == "weibull":
        return rng.weibull(p["k"], size)
    if fam == "t":
        return rng.standard_t(p["nu"], size)
    if fam == "sn":
        lam = p["lam"]
        delta = lam / math.sqrt(1.0 + lam * lam)
        z = rng.standard_normal((size, 2))
        return delta * np.abs(z[:, 0]) + math.sqrt(1.0 - delta * delta) * z[:, 1]
    raise InvalidSpec("not a marginal family: %s" % fam)


def sample(spec, n, stream):
    """Draw n i.i.d. observations from ``spec`` (shape (n, d)).

    Deterministic given the stream; requires n >= d + 1 so downstream
    residual computations are well posed.
    """
    if isinstance(spec, str):
        spec = parse_alternative(spec)
    d = spec.d
    if n < d + 1:
        raise InvalidSpec("need n >= d+1 = %d, got n = %d" % (d + 1, n))
    rng = stream.generator() if isinstance(stream, SeededStream) else stream

    fam = spec.family
    if fam == "normal":
        return rng.standard_normal((n, d))
    if fam == "nmix1" or fam == "nmix2":
        z = rng.standard_normal((n, d))
        u = rng.random(n)
        if d == 1:
            p = 0.5 if fam == "nmix1" else 0.75
            return np.where(u[:, None] < p, z, 2.0 * z)
        if fam == "nmix1":
            # 0.9 N(0, I) + 0.1 N(3, I)
            return z + 3.0 * (u[:, None] >= 0.9)
        bmat = np.full((d, d), 0.9)
        np.fill_diagonal(bmat, 1.0)
        zb = z @ np.linalg.cholesky(bmat).T
        return np.where(u[:, None] < 0.9, zb, z)
    if fam == "mvt":
        nu = spec.param("nu")
        z = rng.standard_normal((n, d))
        w = rng.chisquare(nu, n)
        return z / np.sqrt(w / nu)[:, None]
    if fam == "slogn":
        u = rng.standard_normal((n, d))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        r = rng.lognormal(spec.param("mu"), spec.param("sigma"), n)
        return r[:, None] * u
    if fam == "nmrho":
        rho = spec.param("rho")
        z = rng.standard_normal((n, d))
        u = rng.random(n)
        rp = np.full((d, d), rho)
        np.fill_diagonal(rp, 1.0)
        rm = np.full((d, d), -rho)
        np.fill_diagonal(rm, 1.0)
        zp = z @ np.linalg.cholesky(rp).T
        zm = z @ np.linalg.cholesky(rm).T
        return np.where(u[:, None] < 0.5, zp, zm)

    # marginal families
    if fam == "pearson7":
        m = spec.param("m")
        count = n * d if spec.mode == "iid" else n
        if _word_param(spec, "conv", "df") == "df":
            draws = rng.standard_t(m, count)
        else:
            nu = 2.0 * m - 1.0
            draws = rng.standard_t(nu, count) / math.sqrt(nu)
    else:
        count = n * d if spec.mode == "iid" else n
        draws = _marginal_draw(spec, count, rng)
    if spec.mode == "iid":
        return np.asarray(draws).reshape(n, d)
    # one non-normal marginal in the last coordinate
    x = np.empty((n, d))
    if d > 1:
        x[:, : d - 1] = rng.standard_normal((n, d - 1))
    x[:, d - 1] = draws
    return x


def sample_skew_normal(lam, n, stream):
    """Skew-normal draws via delta |Z0| + sqrt(1-delta^2) Z1, delta = lam/sqrt(1+lam^2)."""
    spec = AlternativeSpec("sn", (("lam", float(lam)),), 1)
    return sample(spec, n, stream)[:, 0]


def sample_spherical_lognormal(d, mu, sigma, n, stream):
    """Rows R*U with R ~ LogNormal(mu, sigma), U uniform on the unit sphere."""
    spec = AlternativeSpec(
        "slogn", (("mu", float(mu)), ("sigma", float(sigma))), d
    )
    return sample(spec, n, stream)


def sample_pearson_vii(m, n, stream, conv="df"):
    """Pearson-VII draws; ``conv`` picks the parameter convention (see module docs)."""
    spec = parse_alternative("pearson7:m=%g,d=1,conv=%s,iid" % (m, conv))
    return sample(spec, n, stream)[:, 0]
