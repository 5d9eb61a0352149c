//! Scalar normal-distribution primitives.
//!
//! The error-function pair below is a Rust port of the FreeBSD msun
//! routines (the same code underlies the Go standard library). The
//! rational approximations are accurate to well under 1e-15, leaving
//! ample headroom for the 1e-12 budget of [`normal_cdf`].
//
// ====================================================
// Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.
//
// Developed at SunPro, a Sun Microsystems, Inc. business.
// Permission to use, copy, modify, and distribute this
// software is freely granted, provided that this notice
// is preserved.
// ====================================================

use crate::error::Error;
use crate::Result;

const ERX: f64 = 0.845_062_911_510_467_5; // 0x3FEB0AC160000000
// |x| < 0.84375
const EFX: f64 = 0.128_379_167_095_512_6; // 0x3FC06EBA8214DB69
const EFX8: f64 = 1.027_033_336_764_100_7; // 0x3FF06EBA8214DB69
const PP0: f64 = 0.128_379_167_095_512_56; // 0x3FC06EBA8214DB68
const PP1: f64 = -0.325_042_107_247_001_5; // 0xBFD4CD7D691CB913
const PP2: f64 = -0.028_481_749_575_598_51; // 0xBF9D2A51DBD7194F
const PP3: f64 = -0.005_770_270_296_489_442; // 0xBF77A291236668E4
const PP4: f64 = -2.376_301_665_665_016_3e-5; // 0xBEF8EAD6120016AC
const QQ1: f64 = 0.397_917_223_959_155_35; // 0x3FD97779CDDADC09
const QQ2: f64 = 0.065_022_249_988_767_3; // 0x3FB0A54C5536CEBA
const QQ3: f64 = 0.005_081_306_281_875_766; // 0x3F74D022C4D36B0F
const QQ4: f64 = 1.324_947_380_043_216_4e-4; // 0x3F215DC9221C1A10
const QQ5: f64 = -3.960_228_278_775_368e-6; // 0xBED09C4342A26120
// 0.84375 <= |x| < 1.25
const PA0: f64 = -0.002_362_118_560_752_659_4; // 0xBF6359B8BEF77538
const PA1: f64 = 0.414_856_118_683_748_33; // 0x3FDA8D00AD92B34D
const PA2: f64 = -0.372_207_876_035_701_3; // 0xBFD7D240FBB8C3F1
const PA3: f64 = 0.318_346_619_901_161_75; // 0x3FD45FCA805120E4
const PA4: f64 = -0.110_894_694_282_396_68; // 0xBFBC63983D3E28EC
const PA5: f64 = 0.035_478_304_325_618_236; // 0x3FA22A36599795EB
const PA6: f64 = -0.002_166_375_594_868_791; // 0xBF61BF380A96073F
const QA1: f64 = 0.106_420_880_400_844_23; // 0x3FBB3E6618EEE323
const QA2: f64 = 0.540_397_917_702_171; // 0x3FE14AF092EB6F33
const QA3: f64 = 0.071_828_654_414_196_27; // 0x3FB2635CD99FE9A7
const QA4: f64 = 0.126_171_219_808_761_64; // 0x3FC02660E763351F
const QA5: f64 = 0.013_637_083_912_029_05; // 0x3F8BEDC26B51DD1C
const QA6: f64 = 0.011_984_499_846_799_107; // 0x3F888B545735151D
// 1.25 <= |x| < 1/0.35
const RA0: f64 = -0.009_864_944_034_847_148; // 0xBF843412600D6435
const RA1: f64 = -0.693_858_572_707_181_8; // 0xBFE63416E4BA7360
const RA2: f64 = -10.558_626_225_323_291; // 0xC0251E0441B0E726
const RA3: f64 = -62.375_332_450_326_006; // 0xC04F300AE4CBA38D
const RA4: f64 = -162.396_669_462_573_47; // 0xC0644CB184282266
const RA5: f64 = -184.605_092_906_711_04; // 0xC067135CEBCCABB2
const RA6: f64 = -81.287_435_506_306_6; // 0xC054526557E4D2F2
const RA7: f64 = -9.814_329_344_169_145; // 0xC023A0EFC69AC25C
const SA1: f64 = 19.651_271_667_439_257; // 0x4033A6B9BD707687
const SA2: f64 = 137.657_754_143_519_04; // 0x4061350C526AE721
const SA3: f64 = 434.565_877_475_229_23; // 0x407B290DD58A1A71
const SA4: f64 = 645.387_271_733_267_9; // 0x40842B1921EC2868
const SA5: f64 = 429.008_140_027_567_83; // 0x407AD02157700314
const SA6: f64 = 108.635_005_541_779_44; // 0x405B28A3EE48AE2C
const SA7: f64 = 6.570_249_770_319_282; // 0x401A47EF8E484A93
const SA8: f64 = -0.060_424_415_214_858_1; // 0xBFAEEFF2EE749A62
// |x| >= 1/0.35
const RB0: f64 = -0.009_864_942_924_700_1; // 0xBF84341239E86F4A
const RB1: f64 = -0.799_283_237_680_523; // 0xBFE993BA70C285DE
const RB2: f64 = -17.757_954_917_754_752; // 0xC031C209555F995A
const RB3: f64 = -160.636_384_855_821_92; // 0xC064145D43C5ED98
const RB4: f64 = -637.566_443_368_389_6; // 0xC083EC881375F228
const RB5: f64 = -1_025.095_131_611_077_2; // 0xC09004616A2E5992
const RB6: f64 = -483.519_191_608_651_4; // 0xC07E384E9BDC383F
const SB1: f64 = 30.338_060_743_482_46; // 0x403E568B261D5190
const SB2: f64 = 325.792_512_996_573_9; // 0x40745CAE221B9F0A
const SB3: f64 = 1_536.729_586_084_437; // 0x409802EB189D5118
const SB4: f64 = 3_199.858_219_508_595_5; // 0x40A8FFB7688C246A
const SB5: f64 = 2_553.050_406_433_164_4; // 0x40A3F219CEDF3BE6
const SB6: f64 = 474.528_541_206_955_37; // 0x407DA874E79FE763
const SB7: f64 = -22.440_952_446_585_82; // 0xC03670E242712D62

const TINY: f64 = 1e-300;

/// Clear the low word so that `z * z` is exact in the tail expansion.
#[inline]
fn trunc_low(x: f64) -> f64 {
    f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000)
}

/// Error function erf(x), |error| < 1 ulp over the full range.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return x.signum();
    }
    let sign = x < 0.0;
    let ax = x.abs();

    if ax < 0.84375 {
        if ax < 3.725_290_298_461_914e-9 {
            // |x| < 2^-28: avoid spurious underflow in x*x
            if ax < f64::MIN_POSITIVE * 16.0 {
                return 0.125 * (8.0 * x + EFX8 * x);
            }
            return x + EFX * x;
        }
        let z = x * x;
        let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
        let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
        let y = r / s;
        return x + x * y;
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if sign { -ERX - p / q } else { ERX + p / q };
    }
    if ax >= 6.0 {
        return if sign { TINY - 1.0 } else { 1.0 - TINY };
    }
    let s = 1.0 / (ax * ax);
    let (big_r, big_s) = if ax < 2.857_142_857_142_857 {
        (
            RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
            1.0 + s
                * (SA1
                    + s * (SA2
                        + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
        )
    } else {
        (
            RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
            1.0 + s
                * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
        )
    };
    let z = trunc_low(ax);
    let r = (-z * z - 0.5625).exp() * ((z - ax) * (z + ax) + big_r / big_s).exp();
    if sign {
        r / ax - 1.0
    } else {
        1.0 - r / ax
    }
}

/// Complementary error function erfc(x) = 1 - erf(x), accurate in both tails.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return if x > 0.0 { 0.0 } else { 2.0 };
    }
    let sign = x < 0.0;
    let ax = x.abs();

    if ax < 0.84375 {
        if ax < 1.387_778_780_781_445_7e-17 {
            // |x| < 2^-56
            return 1.0 - x;
        }
        let z = x * x;
        let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
        let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
        let y = r / s;
        if ax < 0.25 {
            return 1.0 - (x + x * y);
        }
        let r = x * y + (x - 0.5);
        return 0.5 - r;
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if sign {
            1.0 + ERX + p / q
        } else {
            1.0 - ERX - p / q
        };
    }
    if ax < 28.0 {
        let s = 1.0 / (ax * ax);
        let (big_r, big_s) = if ax < 2.857_142_857_142_857 {
            (
                RA0 + s
                    * (RA1
                        + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
                1.0 + s
                    * (SA1
                        + s * (SA2
                            + s * (SA3
                                + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
            )
        } else {
            if sign && ax >= 6.0 {
                return 2.0 - TINY;
            }
            (
                RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
                1.0 + s
                    * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
            )
        };
        let z = trunc_low(ax);
        let r = (-z * z - 0.5625).exp() * ((z - ax) * (z + ax) + big_r / big_s).exp();
        return if sign { 2.0 - r / ax } else { r / ax };
    }
    if sign {
        2.0 - TINY
    } else {
        TINY * TINY
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal distribution function Φ(z), absolute error below 1e-12.
pub fn normal_cdf(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::NonFinite {
            what: "normal_cdf argument",
            value: z,
        });
    }
    Ok(0.5 * erfc(-z * FRAC_1_SQRT_2))
}

/// Standard normal density φ(z) = exp(-z²/2)/√(2π).
pub fn normal_pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Unchecked Φ for internal hot paths; callers validate finiteness upstream.
#[inline]
pub(crate) fn phi(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}
