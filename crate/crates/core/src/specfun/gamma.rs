//! Gamma function on the real line and the auxiliary quantities used by the
//! Temme series.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of `1/Gamma(1+x)` about `x = 0`.
const RGAMMA1P: [f64; 27] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
];

/// `sin(pi x)` with exact argument reduction, so that it vanishes exactly at
/// the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    let (r, sign) = if r > 0.5 {
        (1.0 - r, 1.0)
    } else if r < -0.5 {
        (-1.0 - r, 1.0)
    } else {
        (r, 1.0)
    };
    sign * (PI * r).sin()
}

/// `cos(pi x)` with exact argument reduction.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos(x: f64) -> f64 {
    // valid for x >= 0.5
    let xm = x - 1.0;
    let mut a = LANCZOS[0];
    let t = xm + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xm + i as f64);
    }
    let w = t.powf((xm + 0.5) / 2.0);
    (2.0 * PI).sqrt() * w * (w * (-t).exp()) * a
}

/// Gamma function of a real argument.
///
/// Fails at the poles `x = 0, -1, -2, ...` and when the result leaves the
/// double-precision range.
pub fn gamma(x: f64) -> Result<f64> {
    const OP: &str = "gamma";
    if !x.is_finite() {
        return Err(Error::NonFinite { op: OP, what: "x" });
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole { op: OP, x });
    }
    if x > 171.624 {
        return Err(Error::Overflow { op: OP });
    }
    // Integers are exact products; keeps Gamma(n) bit-exact for tests and
    // for the trace normalisations.
    if x == x.round() && x <= 30.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return Ok(p);
    }
    if x >= 0.5 {
        Ok(lanczos(x))
    } else {
        let s = sin_pi(x);
        let v = PI / (s * lanczos(1.0 - x));
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow { op: OP })
        }
    }
}

/// Temme's auxiliary quantities for `|mu| <= 1/2`:
/// `(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))` with
/// `gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    let mut odd = 0.0;
    let mut even = 0.0;
    for (k, c) in RGAMMA1P.iter().enumerate().rev() {
        if k % 2 == 0 {
            even = even * mu * mu + c;
        } else {
            odd = odd * mu * mu + c;
        }
    }
    // 1/Gamma(1+mu) = even(mu^2) + mu * odd(mu^2)
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}
