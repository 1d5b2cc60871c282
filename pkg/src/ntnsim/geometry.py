"""Spherical-Earth geometry for a stationary GEO relay.

Positions live in an Earth-centered Earth-fixed (ECEF) frame in meters.
The GEO satellite is fixed in that frame, so its ephemeris velocity is
zero; the Doppler routine still handles arbitrary velocities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import EARTH_RADIUS_M, GEO_ALTITUDE_M, SPEED_OF_LIGHT

__all__ = [
    "GroundPosition",
    "EcefVector",
    "Ephemeris",
    "LookAngles",
    "geodetic_to_ecef",
    "geo_satellite_ephemeris",
    "slant_range",
    "look_angles",
    "propagation_delay",
    "doppler_shift",
    "great_circle_distance",
]


@dataclass(frozen=True)
class GroundPosition:
    latitude_deg: float
    longitude_deg: float
    altitude_m: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError(f"latitude_deg out of range: {self.latitude_deg}")
        if not -180.0 <= self.longitude_deg < 180.0:
            raise ValueError(f"longitude_deg out of range: {self.longitude_deg}")
        if self.altitude_m < -500.0:
            raise ValueError(f"altitude_m below -500 m: {self.altitude_m}")


@dataclass(frozen=True)
class EcefVector:
    x_m: float
    y_m: float
    z_m: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x_m, self.y_m, self.z_m)):
            raise ValueError("ECEF components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x_m, self.y_m, self.z_m], dtype=float)

    @classmethod
    def from_array(cls, a) -> "EcefVector":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def norm(self) -> float:
        return math.sqrt(self.x_m**2 + self.y_m**2 + self.z_m**2)


@dataclass(frozen=True)
class Ephemeris:
    position: EcefVector
    velocity: EcefVector  # m/s
    epoch_s: float = 0.0


@dataclass(frozen=True)
class LookAngles:
    elevation_deg: float
    azimuth_deg: float


def _enu_basis(lat_rad: float, lon_rad: float) -> np.ndarray:
    """Rows are the East, North and Up unit vectors at the given point."""
    sl, cl = math.sin(lat_rad), math.cos(lat_rad)
    so, co = math.sin(lon_rad), math.cos(lon_rad)
    return np.array([
        [-so, co, 0.0],
        [-sl * co, -sl * so, cl],
        [cl * co, cl * so, sl],
    ])


def geodetic_to_ecef(pos: GroundPosition, earth_radius_m: float = EARTH_RADIUS_M) -> EcefVector:
    r = earth_radius_m + pos.altitude_m
    lat = math.radians(pos.latitude_deg)
    lon = math.radians(pos.longitude_deg)
    return EcefVector(
        r * math.cos(lat) * math.cos(lon),
        r * math.cos(lat) * math.sin(lon),
        r * math.sin(lat),
    )


def geo_satellite_ephemeris(sat_longitude_deg: float, epoch_s: float = 0.0,
                            earth_radius_m: float = EARTH_RADIUS_M) -> Ephemeris:
    """Stationary GEO ephemeris at the given orbital slot."""
    if not -180.0 <= sat_longitude_deg < 180.0:
        raise ValueError(f"satellite longitude out of range: {sat_longitude_deg}")
    r = earth_radius_m + GEO_ALTITUDE_M
    lon = math.radians(sat_longitude_deg)
    pos = EcefVector(r * math.cos(lon), r * math.sin(lon), 0.0)
    return Ephemeris(pos, EcefVector(0.0, 0.0, 0.0), epoch_s)


def slant_range(observer: EcefVector, satellite: EcefVector) -> float:
    return math.dist(
        (observer.x_m, observer.y_m, observer.z_m),
        (satellite.x_m, satellite.y_m, satellite.z_m),
    )


def look_angles(observer: GroundPosition, satellite: EcefVector,
                earth_radius_m: float = EARTH_RADIUS_M) -> LookAngles:
    """Elevation and azimuth (clockwise from North) of `satellite` seen from `observer`.

    When the satellite sits exactly overhead the azimuth is undefined; it is
    reported as 0 with elevation pinned to 90.
    """
    obs = geodetic_to_ecef(observer, earth_radius_m).as_array()
    los = satellite.as_array() - obs
    rng = float(np.linalg.norm(los))
    if rng == 0.0:
        return LookAngles(90.0, 0.0)
    e, n, u = _enu_basis(math.radians(observer.latitude_deg),
                         math.radians(observer.longitude_deg)) @ los
    horiz = math.hypot(e, n)
    if horiz <= 1e-9 * rng:
        return LookAngles(90.0, 0.0)
    elev = math.degrees(math.atan2(u, horiz))
    az = math.degrees(math.atan2(e, n)) % 360.0
    if az >= 360.0:
        az = 0.0
    return LookAngles(elev, az)


def propagation_delay(range_m: float) -> float:
    if range_m < 0:
        raise ValueError("range must be non-negative")
    return range_m / SPEED_OF_LIGHT


def doppler_shift(eph: Ephemeris, observer: EcefVector, carrier_hz: float) -> float:
    """Doppler offset seen by a stationary observer; positive while the satellite approaches."""
    if carrier_hz <= 0:
        raise ValueError("carrier must be positive")
    los = eph.position.as_array() - observer.as_array()
    rng = float(np.linalg.norm(los))
    if rng == 0.0:
        return 0.0
    range_rate = float(eph.velocity.as_array() @ los) / rng
    return -range_rate * carrier_hz / SPEED_OF_LIGHT


def great_circle_distance(a: GroundPosition, b: GroundPosition,
                          earth_radius_m: float = EARTH_RADIUS_M) -> float:
    la1, la2 = math.radians(a.latitude_deg), math.radians(b.latitude_deg)
    dlon = math.radians(b.longitude_deg - a.longitude_deg)
    h = (math.sin((la2 - la1) / 2) ** 2
         + math.cos(la1) * math.cos(la2) * math.sin(dlon / 2) ** 2)
    return 2 * earth_radius_m * math.asin(min(1.0, math.sqrt(h)))
