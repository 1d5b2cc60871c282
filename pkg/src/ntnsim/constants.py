"""Physical and NR numerology constants shared across the package.

All geometry uses a spherical Earth. Angles are degrees at the public
surface; conversions to radians happen inside :mod:`ntnsim.geometry`.
"""

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
EARTH_RADIUS_M = 6_371_000.0  # mean radius, spherical model
GEO_ALTITUDE_M = 35_786_000.0
GEO_RADIUS_M = EARTH_RADIUS_M + GEO_ALTITUDE_M

BOLTZMANN_DBW = -228.6  # 10*log10(k), dBW/K/Hz

# NR fundamental time unit: 1 / (delta_f_max * N_f)
DELTA_F_MAX_HZ = 480_000
N_F = 4096
TC_S = 1.0 / (DELTA_F_MAX_HZ * N_F)

SLOTS_PER_SECOND_15KHZ = 1000
RE_PER_PRB_SLOT = 12 * 14  # subcarriers x OFDM symbols

N256_UL_HZ = (1_980_000_000, 2_010_000_000)
N256_DL_HZ = (2_170_000_000, 2_200_000_000)
KU_BAND_HZ = (10_700_000_000, 14_500_000_000)
