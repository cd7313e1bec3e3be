//! Gamma and Riemann zeta on the real line.

use crate::error::{Error, Result};
use crate::scalar::Real;

// Lanczos approximation, g = 7, nine terms (~1e-15 relative in double precision).
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

/// Γ(x) for real `x` that is not a non-positive integer.
pub fn gamma_fn<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && x == x.floor() {
        return Err(Error::Pole {
            func: "gamma",
            at: x.as_f64(),
        });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_unchecked(T::one() - x));
    }
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    (T::TAU()).sqrt() * t.powf(z + half) * (-t).exp() * acc
}

// B_{2j} for j = 1..=8
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];
const EM_CUTOFF: usize = 16;

/// Riemann ζ(s) for real `s ≠ 1`.
///
/// For `s < 1/2` the functional equation
/// ζ(s) = 2ˢ πˢ⁻¹ sin(πs/2) Γ(1−s) ζ(1−s) maps the argument into the
/// half-line `s > 1/2`, where ζ is summed directly with an Euler–Maclaurin
/// tail.
pub fn zeta_fn<T: Real>(s: T) -> Result<T> {
    if s == T::one() {
        return Err(Error::Pole {
            func: "zeta",
            at: 1.0,
        });
    }
    if s == T::zero() {
        return Ok(-T::lit(0.5));
    }
    if s < T::lit(0.5) {
        let pi = T::PI();
        let two = T::lit(2.0);
        // sin(πs/2) vanishes at the negative even integers (trivial zeros).
        let reflected = zeta_euler_maclaurin(T::one() - s, -s);
        return Ok(two.powf(s)
            * pi.powf(s - T::one())
            * (pi * s / two).sin()
            * gamma_unchecked(T::one() - s)
            * reflected);
    }
    Ok(zeta_euler_maclaurin(s, s - T::one()))
}

// `s_minus_one` is passed separately so callers can supply it without rounding.
fn zeta_euler_maclaurin<T: Real>(s: T, s_minus_one: T) -> T {
    let k = T::from_usize_lossy(EM_CUTOFF);
    let mut sum = T::zero();
    // small terms first
    for i in (1..EM_CUTOFF).rev() {
        sum += T::from_usize_lossy(i).powf(-s);
    }
    sum += k.powf(-s_minus_one) / s_minus_one;
    sum += T::lit(0.5) * k.powf(-s);

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · K^{−s−2j+1}
    let mut rising = s; // s(s+1)…(s+2j−2)
    let mut factorial = T::lit(2.0); // (2j)!
    let mut kpow = k.powf(-s - T::one());
    let k2 = k * k;
    for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let jj = j + 1;
        sum += T::lit(b) / factorial * rising * kpow;
        let m = T::from_usize_lossy(2 * jj);
        rising = rising * (s + m - T::one()) * (s + m);
        factorial = factorial * (m + T::one()) * (m + T::lit(2.0));
        kpow = kpow / k2;
    }
    sum
}
