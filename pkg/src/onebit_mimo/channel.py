"""Channel generation: LOS (spherical/planar wavefront) and IID Rayleigh."""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ChannelMatrix:
    """Nr x Nt complex channel with its normalization convention.

    instantaneous: tr(HH*) = Nt*Nr for every realization (unit-modulus LOS).
    ensemble: E[tr(HH*)] = Nt*Nr (IID Rayleigh).
    """
    entries: np.ndarray
    normalization: str = "instantaneous"

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", h)
        h.setflags(write=False)

    @property
    def nr(self) -> int:
        return self.entries.shape[0]

    @property
    def nt(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class LosGeometry:
    """ULA-to-ULA line-of-sight geometry, angles in radians."""
    nt: int
    nr: int
    wavelength: float
    spacing_tx: float
    spacing_rx: float
    range_d: float = np.inf
    elev_tx: float = 0.0
    elev_rx: float = 0.0
    azimuth: float = 0.0

    def __post_init__(self):
        if self.nt < 1 or self.nr < 1:
            raise ValueError("antenna counts must be >= 1")
        if not (self.wavelength > 0 and self.spacing_tx > 0 and self.spacing_rx > 0
                and self.range_d > 0):
            raise ValueError("wavelength, spacings and range must be positive")


@dataclass(frozen=True)
class SpectralData:
    """Singular spectrum of H with the top right singular vector."""
    singular_values: np.ndarray
    v0: np.ndarray

    @property
    def lambda0(self) -> float:
        return float(self.singular_values[0] ** 2)


def eta_parameter(geom: LosGeometry) -> float:
    """Dimensionless descriptor (dr cos(theta_r))(dt cos(theta_t)) Nmax / (lambda D)."""
    n_max = max(geom.nt, geom.nr)
    if not np.isfinite(geom.range_d):
        return 0.0
    return (geom.spacing_rx * np.cos(geom.elev_rx)
            * geom.spacing_tx * np.cos(geom.elev_tx)
            * n_max) / (geom.wavelength * geom.range_d)


def los_spherical(geom: LosGeometry) -> ChannelMatrix:
    """Spherical-wavefront ULA LOS channel D_rx @ Hvand @ D_tx (unit-modulus entries)."""
    lam, d = geom.wavelength, geom.range_d
    n = np.arange(geom.nr)
    m = np.arange(geom.nt)
    sr = np.sin(geom.elev_rx) * np.cos(geom.azimuth)
    d_rx = np.exp(-1j * np.pi * (2 * n / lam * geom.spacing_rx * sr
                                 + n ** 2 / (lam * d) * geom.spacing_rx ** 2 * (1 - sr ** 2)))
    d_tx = np.exp(-1j * np.pi * (2 * m / lam * geom.spacing_tx * np.sin(geom.elev_tx)
                                 + m ** 2 / (lam * d) * geom.spacing_tx ** 2))
    eta = eta_parameter(geom)
    n_max = max(geom.nt, geom.nr)
    vand = np.exp(2j * np.pi * eta * np.outer(n, m) / n_max)
    return ChannelMatrix(d_rx[:, None] * vand * d_tx[None, :])


def los_planar(geom: LosGeometry) -> ChannelMatrix:
    """Planar-wavefront (infinite-range) rank-1 ULA LOS channel."""
    lam = geom.wavelength
    n = np.arange(geom.nr)
    m = np.arange(geom.nt)
    phase = (n[:, None] * geom.spacing_rx * np.sin(geom.elev_rx) * np.cos(geom.azimuth)
             + m[None, :] * geom.spacing_tx * np.sin(geom.elev_tx))
    return ChannelMatrix(np.exp(-2j * np.pi / lam * phase))


def complex_normal(shape, rng: np.random.Generator) -> np.ndarray:
    """CN(0,1) samples via Box-Muller on counter-based uniforms (reproducible)."""
    u1 = rng.random(shape)
    u2 = rng.random(shape)
    r = np.sqrt(-np.log1p(-u1))  # |z| for unit-variance complex Gaussian
    return r * np.exp(2j * np.pi * u2)


def rayleigh_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def iid_rayleigh(nt: int, nr: int, seed: int) -> ChannelMatrix:
    """IID CN(0,1) entries; deterministic across platforms for a given seed."""
    if nt < 1 or nr < 1:
        raise ValueError("antenna counts must be >= 1")
    rng = rayleigh_rng(seed)
    return ChannelMatrix(complex_normal((nr, nt), rng), normalization="ensemble")


def spectral(h: ChannelMatrix) -> SpectralData:
    """Full singular spectrum and the top right singular vector of H.

    v0's phase is fixed by rotating its largest-magnitude entry to the
    positive real axis, so downstream quartet searches are deterministic.
    With a degenerate top singular value the returned v0 is whichever
    vector the decomposition yields first (non-unique).
    """
    _, s, vh = np.linalg.svd(h.entries)
    v0 = vh[0].conj()
    k = int(np.argmax(np.abs(v0)))
    v0 = v0 * np.exp(-1j * np.angle(v0[k]))
    return SpectralData(singular_values=s, v0=v0)


@dataclass(frozen=True)
class ChannelSpec:
    """Declarative channel description (the JSON wire format of the CLI)."""
    model: str  # los_spherical | los_planar | iid_rayleigh
    nt: int
    nr: int
    geometry: LosGeometry | None = None
    seed: int = 0

    def __post_init__(self):
        if self.model not in ("los_spherical", "los_planar", "iid_rayleigh"):
            raise ValueError(f"unknown channel model {self.model!r}")
        if self.model != "iid_rayleigh" and self.geometry is None:
            raise ValueError(f"{self.model} requires geometry")

    @property
    def is_ergodic(self) -> bool:
        return self.model == "iid_rayleigh"

    def sample(self, draw: int = 0) -> ChannelMatrix:
        """Channel for the given draw index; LOS models are deterministic."""
        if self.model == "iid_rayleigh":
            ss = np.random.SeedSequence((self.seed, draw))
            rng = np.random.Generator(np.random.Philox(ss))
            return ChannelMatrix(complex_normal((self.nr, self.nt), rng),
                                 normalization="ensemble")
        if self.model == "los_spherical":
            return los_spherical(self.geometry)
        return los_planar(self.geometry)


def channel_spec_from_json(obj: dict) -> ChannelSpec:
    """Parse the JSON channel object; angles arrive in degrees."""
    model = obj["model"]
    nt, nr = int(obj["nt"]), int(obj["nr"])
    geom = None
    if model in ("los_spherical", "los_planar"):
        geom = LosGeometry(
            nt=nt, nr=nr,
            wavelength=float(obj["wavelength"]),
            spacing_tx=float(obj["spacing_tx"]),
            spacing_rx=float(obj["spacing_rx"]),
            range_d=float(obj.get("range_d", np.inf)),
            elev_tx=np.deg2rad(float(obj.get("elev_tx_deg", 0.0))),
            elev_rx=np.deg2rad(float(obj.get("elev_rx_deg", 0.0))),
            azimuth=np.deg2rad(float(obj.get("azimuth_deg", 0.0))),
        )
    return ChannelSpec(model=model, nt=nt, nr=nr, geometry=geom,
                       seed=int(obj.get("seed", 0)))
