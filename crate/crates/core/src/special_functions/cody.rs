//! Real error functions from Cody's rational Chebyshev approximations.

const THRESHOLD: f64 = 0.46875;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_56;

const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_156,
    377.485_237_685_302_021,
    3_209.377_589_138_469_47,
    0.185_777_706_184_603_153,
];
const B: [f64; 4] = [
    23.601_290_952_344_120_9,
    244.024_637_934_444_173,
    1_282.616_526_077_372_28,
    2_844.236_833_439_170_62,
];
const C: [f64; 9] = [
    0.564_188_496_988_670_089,
    8.883_149_794_388_375_94,
    66.119_190_637_141_629_5,
    298.635_138_197_400_131,
    881.952_221_241_769_09,
    1_712.047_612_634_070_58,
    2_051.078_377_826_071_47,
    1_230.339_354_797_997_25,
    2.153_115_354_744_038_46e-8,
];
const D: [f64; 8] = [
    15.744_926_110_709_834_7,
    117.693_950_891_312_499,
    537.181_101_862_009_858,
    1_621.389_574_566_690_19,
    3_290.799_235_733_459_63,
    4_362.619_090_143_247_16,
    3_439.367_674_143_721_64,
    1_230.339_354_803_749_42,
];
const P: [f64; 6] = [
    0.305_326_634_961_232_344,
    0.360_344_899_949_804_439,
    0.125_781_726_111_229_246,
    0.016_083_785_148_742_276_6,
    6.587_491_615_298_378_03e-4,
    0.016_315_387_137_302_097_8,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822_42,
    1.872_952_849_923_460_47,
    0.527_905_102_951_428_412,
    0.060_518_341_312_441_319_1,
    0.002_335_204_976_268_691_85,
];

#[inline]
fn ab(z: f64) -> f64 {
    ((((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3])
        / ((((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3])
}

#[inline]
fn cd(y: f64) -> f64 {
    let num = (((((((C[8] * y + C[0]) * y + C[1]) * y + C[2]) * y + C[3]) * y + C[4]) * y
        + C[5])
        * y
        + C[6])
        * y
        + C[7];
    let den = (((((((y + D[0]) * y + D[1]) * y + D[2]) * y + D[3]) * y + D[4]) * y + D[5]) * y
        + D[6])
        * y
        + D[7];
    num / den
}

#[inline]
fn pq(z: f64) -> f64 {
    z * (((((P[5] * z + P[0]) * z + P[1]) * z + P[2]) * z + P[3]) * z + P[4])
        / (((((z + Q[0]) * z + Q[1]) * z + Q[2]) * z + Q[3]) * z + Q[4])
}

/// `exp(-y^2)` split at a multiple of 1/16 so the rounding of `y^2` does not
/// get amplified for large `y`.
#[inline]
fn smoothened_exp_m_sq(y: f64) -> f64 {
    let ys = (16.0 * y).trunc() / 16.0;
    let del = (y - ys) * (y + ys);
    (-ys * ys).exp() * (-del).exp()
}

#[inline]
fn smoothened_exp_sq(y: f64) -> f64 {
    let ys = (16.0 * y).trunc() / 16.0;
    let del = (y - ys) * (y + ys);
    (ys * ys).exp() * del.exp()
}

/// Scaled complementary error function `exp(x^2) erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        if x < -26.7 {
            return f64::INFINITY;
        }
        return 2.0 * smoothened_exp_sq(x) - erfcx(-x);
    }
    if x <= THRESHOLD {
        return (x * x).exp() * (1.0 - x * ab(x * x));
    }
    if x <= 4.0 {
        return cd(x);
    }
    if x > 1e8 {
        return FRAC_1_SQRT_PI / x;
    }
    let z = 1.0 / (x * x);
    (FRAC_1_SQRT_PI - pq(z)) / x
}

/// Real error function.
pub fn erf(x: f64) -> f64 {
    let y = x.abs();
    if y <= THRESHOLD {
        return x * ab(x * x);
    }
    let r = if y >= 6.0 {
        1.0
    } else {
        1.0 - smoothened_exp_m_sq(y) * erfcx(y)
    };
    r.copysign(x)
}

/// Real complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < -THRESHOLD {
        return 2.0 - erfc(-x);
    }
    if x <= THRESHOLD {
        return 1.0 - x * ab(x * x);
    }
    if x > 26.7 {
        return 0.0;
    }
    smoothened_exp_m_sq(x) * erfcx(x)
}
