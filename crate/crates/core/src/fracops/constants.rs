//! Sharp error constants of the L1 and fractional-integral discretizations,
//! and the normalized diagnostics that check them numerically.

use crate::error::{Error, Result};
use crate::fracops::l1::l1_weight;
use crate::fracops::special::{gamma_fn, zeta_fn};
use crate::scalar::Real;

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "fractional order must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Leading L1 error constant `−ζ(α−1)/Γ(2−α)`.
pub fn l1_error_limit<T: Real>(alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    Ok(-zeta_fn(alpha - T::one())? / gamma_fn(T::lit(2.0) - alpha)?)
}

/// Two-term asymptotic L1 error constant
/// `C_n = −ζ(α−1)/Γ(2−α) − 1/(12·Γ(1−α)·nᵅ)`.
pub fn l1_error_constant<T: Real>(alpha: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let nf = T::from_usize_lossy(n);
    Ok(l1_error_limit(alpha)?
        - (T::lit(12.0) * gamma_fn(T::one() - alpha)? * nf.powf(alpha)).recip())
}

/// Earlier literature bound on the L1 constant,
/// `((1−α)/12 + 2^{2−α}/(2−α) − (1 + 2^{−α})) / Γ(2−α)`.
pub fn l1_literature_bound<T: Real>(alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    let two = T::lit(2.0);
    let one = T::one();
    let bracket = (one - alpha) / T::lit(12.0) + two.powf(two - alpha) / (two - alpha)
        - (one + two.powf(-alpha));
    Ok(bracket / gamma_fn(two - alpha)?)
}

/// Analytic Caputo derivative of `t^μ`: `Γ(1+μ)/Γ(1−α+μ)·t^{μ−α}` (zero for `μ = 0`).
pub fn caputo_power<T: Real>(mu: T, alpha: T, t: T) -> Result<T> {
    check_alpha(alpha)?;
    if mu < T::zero() || t < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "caputo_power needs μ ≥ 0 and t ≥ 0, got μ = {mu}, t = {t}"
        )));
    }
    if mu == T::zero() {
        return Ok(T::zero());
    }
    Ok(gamma_fn(T::one() + mu)? / gamma_fn(T::one() - alpha + mu)? * t.powf(mu - alpha))
}

/// Normalized L1 remainder for `y = t²/2` on `[0, 1]` with `h = 1/n`:
///
/// `ρ_n = 12·Γ(1−α)·nᵅ·|n^{2−α}(∂ᵅy(1) − δᵅy(t_n)) + ζ(α−1)/Γ(2−α)|`,
///
/// which tends to 1 when the two-term constant is sharp.
pub fn rho_n<T: Real>(alpha: T, n: usize) -> Result<T> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::InvalidParameter("rho_n needs n ≥ 2".into()));
    }
    let two = T::lit(2.0);
    let nf = T::from_usize_lossy(n);
    let h = nf.recip();
    let beta = T::one() - alpha;
    // exact increments y(t_{i+1}) − y(t_i) = h²(2i+1)/2
    let half_h2 = h * h / two;
    let sum: T = (0..n)
        .map(|i| l1_weight(beta, n - i) * half_h2 * T::from_usize_lossy(2 * i + 1))
        .sum();
    let gamma_2ma = gamma_fn(two - alpha)?;
    let discrete = h.powf(-alpha) / gamma_2ma * sum;
    let exact = gamma_fn(T::lit(3.0) - alpha)?.recip();
    let scaled = (exact - discrete) * nf.powf(two - alpha);
    let limit_term = zeta_fn(alpha - T::one())? / gamma_2ma;
    Ok(T::lit(12.0) * gamma_fn(T::one() - alpha)? * nf.powf(alpha) * (scaled + limit_term).abs())
}

/// Normalized fractional-integral remainder for `y = t` on `[0, 1]` with `h = 1/n`:
///
/// `ρ̃_n = −|n(Iᵅy(1) − Jᵅy(t_n)) + 1/(2Γ(1+α))| · Γ(1+α) / (ζ(−α)/nᵅ + α/(12n))`,
///
/// which tends to 1 when the three-term expansion of the constant holds.
pub fn rho_tilde_n<T: Real>(alpha: T, n: usize) -> Result<T> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::InvalidParameter("rho_tilde_n needs n ≥ 2".into()));
    }
    let nf = T::from_usize_lossy(n);
    let h = nf.recip();
    let gamma_1pa = gamma_fn(T::one() + alpha)?;
    let sum: T = (1..=n)
        .map(|i| l1_weight(alpha, n - i + 1) * T::from_usize_lossy(i) * h)
        .sum();
    let discrete = h.powf(alpha) / gamma_1pa * sum;
    let exact = gamma_fn(T::lit(2.0) + alpha)?.recip();
    let scaled = (exact - discrete) * nf + (T::lit(2.0) * gamma_1pa).recip();
    let expansion = zeta_fn(-alpha)? / nf.powf(alpha) + alpha / (T::lit(12.0) * nf);
    Ok(-scaled.abs() * gamma_1pa / expansion)
}
