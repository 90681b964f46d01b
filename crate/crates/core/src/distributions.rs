//! Shifted gamma-gamma (SGG) kernel and its special cases.
//!
//! `SGG(mu, gamma, alpha, beta)` is the law of `X` where
//! `X - mu | Y ~ Ga(gamma, Y)` and `Y ~ Ga(alpha, beta)`, both gamma laws in
//! shape/rate form. With `mu = 0` it is the gamma-gamma (GG) law and with
//! `gamma = 1` it is a generalised Pareto law with `sigma = beta / alpha` and
//! `xi = 1 / alpha`.
//!
//! Every density is evaluated in log space through `ln_gamma`; the gamma
//! function itself is never formed.

use rand::Rng;
use rand_distr::{Beta, Distribution, Gamma};
use statrs::function::gamma::ln_gamma;

use crate::error::{check_nonnegative, check_positive, Error, Result};

/// Kernel parameter `(mu, gamma, alpha, beta)`: location, shape, tail, scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SggParams {
    pub mu: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SggParams {
    pub fn new(mu: f64, gamma: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = Self {
            mu,
            gamma,
            alpha,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_nonnegative("mu", self.mu)?;
        check_positive("gamma", self.gamma)?;
        check_positive("alpha", self.alpha)?;
        check_positive("beta", self.beta)
    }

    /// `E(X) = mu + beta * gamma / (alpha - 1)`, finite only for `alpha > 1`.
    pub fn mean(&self) -> Option<f64> {
        (self.alpha > 1.0).then(|| self.mu + self.beta * self.gamma / (self.alpha - 1.0))
    }

    /// Finite only for `alpha > 2`.
    pub fn variance(&self) -> Option<f64> {
        (self.alpha > 2.0).then(|| {
            let am1 = self.alpha - 1.0;
            self.beta * self.beta * self.gamma * (self.gamma + am1)
                / (am1 * am1 * (self.alpha - 2.0))
        })
    }

    /// The equivalent GPD when `gamma == 1`.
    pub fn as_gpd(&self) -> Option<GpdParams> {
        (self.gamma == 1.0).then(|| GpdParams {
            mu: self.mu,
            sigma: self.beta / self.alpha,
            xi: 1.0 / self.alpha,
        })
    }
}

/// Generalised Pareto parameters, restricted to `xi >= 0` (unbounded support).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpdParams {
    pub mu: f64,
    pub sigma: f64,
    pub xi: f64,
}

impl GpdParams {
    pub fn new(mu: f64, sigma: f64, xi: f64) -> Result<Self> {
        let p = Self { mu, sigma, xi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::Domain {
                name: "mu",
                value: self.mu,
            });
        }
        check_positive("sigma", self.sigma)?;
        check_nonnegative("xi", self.xi)
    }
}

fn sgg_log_norm(p: &SggParams) -> f64 {
    p.alpha * p.beta.ln() + ln_gamma(p.alpha + p.gamma) - ln_gamma(p.alpha) - ln_gamma(p.gamma)
}

/// Log-density of the excess `z = x - mu` under `p` (the location is ignored).
///
/// Evaluating through the excess keeps full precision right next to the
/// location, where `x - mu` would otherwise round to zero.
pub fn sgg_logpdf_excess(z: f64, p: &SggParams) -> Result<f64> {
    p.validate()?;
    Ok(sgg_logpdf_excess_unchecked(z, p))
}

fn sgg_logpdf_excess_unchecked(z: f64, p: &SggParams) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z < 0.0 {
        return f64::NEG_INFINITY;
    }
    let log_norm = sgg_log_norm(p);
    if z == 0.0 {
        return if p.gamma > 1.0 {
            f64::NEG_INFINITY
        } else if p.gamma == 1.0 {
            log_norm - (p.alpha + 1.0) * p.beta.ln()
        } else {
            f64::INFINITY
        };
    }
    log_norm + (p.gamma - 1.0) * z.ln() - (p.alpha + p.gamma) * (p.beta + z).ln()
}

/// `log f(x | mu, gamma, alpha, beta)`.
///
/// At `x == mu` the density is zero for `gamma > 1`, equals `alpha / beta`
/// for `gamma == 1` and diverges for `gamma < 1`; those values are returned
/// as is. Likelihood code uses [`sgg_loglik`], which clamps the excess.
pub fn sgg_logpdf(x: f64, p: &SggParams) -> Result<f64> {
    p.validate()?;
    if x < p.mu {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(sgg_logpdf_excess_unchecked(x - p.mu, p))
}

pub fn sgg_pdf(x: f64, p: &SggParams) -> Result<f64> {
    sgg_logpdf(x, p).map(f64::exp)
}

/// Smallest excess used inside likelihood evaluations: `1e-12 * max(1, beta)`.
pub fn excess_floor(beta: f64) -> f64 {
    1e-12 * beta.max(1.0)
}

/// Marginal SGG log-likelihood of one observation with the excess clamped to
/// [`excess_floor`], so that `x == mu` stays finite when `gamma < 1`.
/// Parameters are assumed valid.
pub fn sgg_loglik(x: f64, p: &SggParams) -> f64 {
    MarginalKernel::new(*p).loglik(x)
}

/// [`sgg_loglik`] with the normalising constant computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalKernel {
    pub params: SggParams,
    log_norm: f64,
    floor: f64,
}

impl MarginalKernel {
    pub fn new(params: SggParams) -> Self {
        Self {
            params,
            log_norm: sgg_log_norm(&params),
            floor: excess_floor(params.beta),
        }
    }

    #[inline]
    pub fn loglik(&self, x: f64) -> f64 {
        let p = &self.params;
        if x < p.mu {
            return f64::NEG_INFINITY;
        }
        if x.is_nan() {
            return f64::NAN;
        }
        let z = (x - p.mu).max(self.floor);
        self.log_norm + (p.gamma - 1.0) * z.ln() - (p.alpha + p.gamma) * (p.beta + z).ln()
    }
}

/// `log Ga(x | shape, rate)`; `-inf` outside the support.
pub fn gamma_logpdf(x: f64, shape: f64, rate: f64) -> f64 {
    if x < 0.0 {
        return f64::NEG_INFINITY;
    }
    if x == 0.0 {
        return if shape < 1.0 {
            f64::INFINITY
        } else if shape == 1.0 {
            rate.ln()
        } else {
            f64::NEG_INFINITY
        };
    }
    shape * rate.ln() - ln_gamma(shape) + (shape - 1.0) * x.ln() - rate * x
}

/// Augmented log-likelihood `log Ga(x - mu | gamma, y) + log Ga(y | alpha, beta)`.
///
/// Zero likelihood (`-inf`) whenever `x < mu`; the excess is clamped like
/// [`sgg_loglik`].
pub fn augmented_loglik(x: f64, y: f64, p: &SggParams) -> f64 {
    KernelCache::new(*p).augmented_loglik(x, y, y.ln())
}

/// Kernel parameters with the `ln_gamma` and `ln` terms the augmented
/// likelihood needs precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCache {
    pub params: SggParams,
    ln_gamma_gamma: f64,
    ln_gamma_alpha: f64,
    ln_beta: f64,
    floor: f64,
}

impl KernelCache {
    pub fn new(params: SggParams) -> Self {
        Self {
            params,
            ln_gamma_gamma: ln_gamma(params.gamma),
            ln_gamma_alpha: ln_gamma(params.alpha),
            ln_beta: params.beta.ln(),
            floor: excess_floor(params.beta),
        }
    }

    /// `ln_y` must equal `y.ln()`; callers evaluating many kernels at the same
    /// latent pass it once.
    #[inline]
    pub fn augmented_loglik(&self, x: f64, y: f64, ln_y: f64) -> f64 {
        let p = &self.params;
        if x < p.mu {
            return f64::NEG_INFINITY;
        }
        let z = (x - p.mu).max(self.floor);
        (p.gamma + p.alpha - 1.0) * ln_y - self.ln_gamma_gamma + (p.gamma - 1.0) * z.ln() - y * z
            + p.alpha * self.ln_beta
            - self.ln_gamma_alpha
            - p.beta * y
    }
}

/// `log f(x | mu, sigma, xi)` for the generalised Pareto law; `xi == 0` is
/// the shifted exponential.
pub fn gpd_logpdf(x: f64, p: &GpdParams) -> Result<f64> {
    p.validate()?;
    if x < p.mu {
        return Ok(f64::NEG_INFINITY);
    }
    let t = (x - p.mu) / p.sigma;
    if p.xi == 0.0 {
        return Ok(-p.sigma.ln() - t);
    }
    Ok(-p.sigma.ln() - (1.0 + 1.0 / p.xi) * (p.xi * t).ln_1p())
}

pub fn gpd_pdf(x: f64, p: &GpdParams) -> Result<f64> {
    gpd_logpdf(x, p).map(f64::exp)
}

/// Gamma-gamma log-density; identical to [`sgg_logpdf`] with `mu = 0`.
pub fn gg_logpdf(x: f64, gamma: f64, alpha: f64, beta: f64) -> Result<f64> {
    sgg_logpdf(
        x,
        &SggParams {
            mu: 0.0,
            gamma,
            alpha,
            beta,
        },
    )
}

/// Gamma draw in shape/rate form. Shapes below one go through the
/// `Ga(shape + 1) * U^(1/shape)` boost inside `rand_distr`.
pub fn gamma_sample<R: Rng + ?Sized>(shape: f64, rate: f64, rng: &mut R) -> Result<f64> {
    check_positive("shape", shape)?;
    check_positive("rate", rate)?;
    Ok(gamma_sample_unchecked(shape, rate, rng))
}

pub(crate) fn gamma_sample_unchecked<R: Rng + ?Sized>(shape: f64, rate: f64, rng: &mut R) -> f64 {
    Gamma::new(shape, 1.0 / rate)
        .expect("validated gamma parameters")
        .sample(rng)
}

pub fn beta_sample<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    Ok(Beta::new(a, b)
        .expect("validated beta parameters")
        .sample(rng))
}

/// Draw `Y ~ Ga(alpha, beta)` then `X - mu ~ Ga(gamma, Y)`.
pub fn sgg_sample<R: Rng + ?Sized>(p: &SggParams, rng: &mut R) -> Result<f64> {
    p.validate()?;
    let y = gamma_sample_unchecked(p.alpha, p.beta, rng).max(f64::MIN_POSITIVE);
    Ok(p.mu + gamma_sample_unchecked(p.gamma, y, rng))
}

/// Latent rate given an observation: `Y | x, theta ~ Ga(gamma + alpha, x - mu + beta)`.
pub fn latent_conditional_sample<R: Rng + ?Sized>(
    x: f64,
    p: &SggParams,
    rng: &mut R,
) -> Result<f64> {
    p.validate()?;
    if !(x >= p.mu) {
        return Err(Error::Precondition(format!(
            "observation {x} lies below location {}",
            p.mu
        )));
    }
    Ok(latent_sample_unchecked(x, p, rng))
}

pub(crate) fn latent_sample_unchecked<R: Rng + ?Sized>(x: f64, p: &SggParams, rng: &mut R) -> f64 {
    gamma_sample_unchecked(p.gamma + p.alpha, x - p.mu + p.beta, rng).max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use proptest::prelude::*;

    fn p(mu: f64, gamma: f64, alpha: f64, beta: f64) -> SggParams {
        SggParams::new(mu, gamma, alpha, beta).unwrap()
    }

    #[test]
    fn sgg_unit_params_reduce_to_rational_density() {
        let v = sgg_logpdf(1.0, &p(0.0, 1.0, 1.0, 1.0)).unwrap();
        assert!((v - 0.25f64.ln()).abs() < 1e-14, "{v}");
        assert_eq!(
            sgg_logpdf(-0.5, &p(0.0, 1.0, 1.0, 1.0)).unwrap(),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn sgg_at_location() {
        assert_eq!(
            sgg_logpdf(2.0, &p(2.0, 2.0, 1.0, 1.0)).unwrap(),
            f64::NEG_INFINITY
        );
        assert_eq!(
            sgg_logpdf(2.0, &p(2.0, 0.5, 1.0, 1.0)).unwrap(),
            f64::INFINITY
        );
        // gamma == 1: the limit alpha / beta
        let v = sgg_logpdf(2.0, &p(2.0, 1.0, 3.0, 1.5)).unwrap();
        assert!((v - 2.0f64.ln()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn sgg_matches_gpd_at_unit_shape() {
        let sgg = sgg_logpdf(2.7, &p(1.0, 1.0, 2.0, 3.0)).unwrap();
        let gpd = gpd_logpdf(2.7, &GpdParams::new(1.0, 1.5, 0.5).unwrap()).unwrap();
        assert!((sgg - gpd).abs() < 1e-13, "{sgg} vs {gpd}");
    }

    #[test]
    fn gpd_values() {
        let g = GpdParams::new(1.0, 2.0, 0.5).unwrap();
        assert!((gpd_logpdf(1.0, &g).unwrap() + 2.0f64.ln()).abs() < 1e-15);
        let expected = 0.5f64.ln() - 3.0 * 1.5f64.ln();
        assert!((gpd_logpdf(3.0, &g).unwrap() - expected).abs() < 1e-14);
        let e = GpdParams::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(gpd_logpdf(1.0, &e).unwrap(), -1.0);
        assert_eq!(gpd_logpdf(-1.0, &e).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn gg_value() {
        assert!((gg_logpdf(1.0, 1.0, 1.0, 1.0).unwrap() - 0.25f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(SggParams::new(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SggParams::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(SggParams::new(0.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(SggParams::new(0.0, 1.0, 1.0, f64::INFINITY).is_err());
        assert!(GpdParams::new(0.0, 1.0, -0.1).is_err());
        assert!(GpdParams::new(0.0, 0.0, 0.1).is_err());
        let bad = SggParams {
            mu: 0.0,
            gamma: -1.0,
            alpha: 1.0,
            beta: 1.0,
        };
        assert!(sgg_logpdf(1.0, &bad).is_err());
        assert!(gamma_sample(0.0, 1.0, &mut RngStream::new(1)).is_err());
        assert!(beta_sample(1.0, -2.0, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn latent_requires_support() {
        let mut rng = RngStream::new(3);
        assert!(latent_conditional_sample(4.0, &p(5.0, 1.0, 0.5, 3.0), &mut rng).is_err());
        assert!(latent_conditional_sample(5.0, &p(5.0, 1.0, 0.5, 3.0), &mut rng).unwrap() > 0.0);
    }

    #[test]
    fn moments() {
        let q = p(0.0, 3.0, 3.0, 2.0);
        assert_eq!(q.mean(), Some(3.0));
        assert_eq!(q.variance(), Some(15.0));
        assert_eq!(p(0.0, 1.0, 0.5, 3.0).mean(), None);
        assert_eq!(p(0.0, 1.0, 1.5, 3.0).variance(), None);
    }

    #[test]
    fn loglik_clamps_excess() {
        let q = p(1.0, 0.5, 1.0, 1.0);
        let v = sgg_loglik(1.0, &q);
        assert!(v.is_finite() && v > 0.0);
        assert_eq!(sgg_loglik(0.5, &q), f64::NEG_INFINITY);
        let a = augmented_loglik(1.0, 2.0, &q);
        assert!(a.is_finite());
    }

    #[test]
    fn augmented_matches_gamma_product() {
        let q = p(0.3, 2.5, 1.7, 0.8);
        let (x, y) = (2.0, 1.3);
        let direct = gamma_logpdf(x - q.mu, q.gamma, y) + gamma_logpdf(y, q.alpha, q.beta);
        assert!((augmented_loglik(x, y, &q) - direct).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn gg_is_sgg_at_zero_location(x in 0.0f64..50.0, g in 0.05f64..10.0, a in 0.05f64..10.0, b in 0.05f64..10.0) {
            let lhs = gg_logpdf(x, g, a, b).unwrap();
            let rhs = sgg_logpdf(x, &p(0.0, g, a, b)).unwrap();
            prop_assert_eq!(lhs.to_bits(), rhs.to_bits());
        }

        #[test]
        fn below_location_has_no_mass(mu in 0.0f64..10.0, d in 1e-9f64..10.0, g in 0.05f64..10.0) {
            let q = p(mu, g, 1.0, 1.0);
            prop_assert_eq!(sgg_logpdf(mu - d, &q).unwrap(), f64::NEG_INFINITY);
            prop_assert_eq!(sgg_loglik(mu - d, &q), f64::NEG_INFINITY);
        }

        #[test]
        fn augmented_integrates_latent_out(x in 0.01f64..20.0, g in 0.2f64..5.0, a in 0.2f64..5.0, b in 0.2f64..5.0) {
            // f(x, y) = f(x) * f(y | x)
            let q = p(0.0, g, a, b);
            let y = (g + a) / (x + b);
            let joint = augmented_loglik(x, y, &q);
            let split = sgg_logpdf(x, &q).unwrap() + gamma_logpdf(y, g + a, x + b);
            prop_assert!((joint - split).abs() < 1e-9 * (1.0 + joint.abs()));
        }
    }
}
