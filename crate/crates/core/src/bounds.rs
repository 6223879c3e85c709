//! Closed-form mixing-time upper bounds for the four samplers.
//!
//! Factorials and powers are evaluated in log space, so a bound is always
//! available as a natural logarithm even when its value overflows `f64`.

use libm::{ceil, exp, lgamma, log};

use crate::{Error, Result};

/// Arguments shared by all bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    /// Subgraph size.
    pub k: usize,
    /// Maximum degree of the host graph.
    pub delta: usize,
    /// Diameter of the host graph, or any upper bound of it.
    pub diam: usize,
    /// Number of nodes of the host graph.
    pub n: usize,
    pub epsilon: f64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidBoundInputs("k must be at least 2"));
        }
        if self.delta < 1 {
            return Err(Error::InvalidBoundInputs("max degree must be at least 1"));
        }
        if self.diam < 1 {
            return Err(Error::InvalidBoundInputs("diameter must be at least 1"));
        }
        if self.n <= self.k {
            return Err(Error::InvalidBoundInputs("node count must exceed k"));
        }
        // epsilon = 1 is accepted: the ln(1/eps) term simply vanishes
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidBoundInputs("epsilon must lie in (0, 1]"));
        }
        Ok(())
    }

    fn ln_inv_eps(&self) -> f64 {
        -log(self.epsilon)
    }
}

/// A bound evaluated in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    /// Natural log of the bound.
    pub ln_value: f64,
}

impl Bound {
    fn from_ln(ln_value: f64) -> Self {
        Bound { ln_value }
    }

    /// Real value; `+inf` when it does not fit in `f64`.
    pub fn value(&self) -> f64 {
        exp(self.ln_value)
    }

    /// Whether the value is too large for an `f64` or the ceiling for a `u64`.
    pub fn overflows(&self) -> bool {
        self.ln_value >= 64.0 * core::f64::consts::LN_2
    }

    /// `⌈value⌉` when it fits in a `u64`.
    pub fn ceil(&self) -> Option<u64> {
        if self.overflows() {
            None
        } else {
            Some(ceil(self.value()) as u64)
        }
    }
}

fn ln_factorial(x: usize) -> f64 {
    lgamma(x as f64 + 1.0)
}

/// Mixing time of the Metropolis–Hastings walk on the k-state graph:
/// `½ k! Δ^k (D+k−1) |V| (k ln|V| + ln ε⁻¹)`.
pub fn bound_mcmc(b: &BoundInputs) -> Result<Bound> {
    b.validate()?;
    let k = b.k as f64;
    let n = b.n as f64;
    let tail = k * log(n) + b.ln_inv_eps();
    Ok(Bound::from_ln(
        -core::f64::consts::LN_2
            + ln_factorial(b.k)
            + k * log(b.delta as f64)
            + log((b.diam + b.k - 1) as f64)
            + log(n)
            + log(tail),
    ))
}

/// Mixing time of the degree-proportional chain over uniform proposals:
/// `2kΔ (ln k + ln Δ + k ln|V| + ln ε⁻¹)`.
pub fn bound_degree_prop(b: &BoundInputs) -> Result<Bound> {
    b.validate()?;
    let k = b.k as f64;
    let delta = b.delta as f64;
    let tail = log(k) + log(delta) + k * log(b.n as f64) + b.ln_inv_eps();
    Ok(Bound::from_ln(log(2.0 * k * delta) + log(tail)))
}

/// Mixing time of the rejection-free degree-proportional chain:
/// `2kΔ (k ln|V| + 3 ln k + ln Δ + ln ε⁻¹)`.
pub fn bound_rss_plus(b: &BoundInputs) -> Result<Bound> {
    b.validate()?;
    let k = b.k as f64;
    let delta = b.delta as f64;
    let tail = k * log(b.n as f64) + 3.0 * log(k) + log(delta) + b.ln_inv_eps();
    Ok(Bound::from_ln(log(2.0 * k * delta) + log(tail)))
}

/// Mixing time of the lazy simple random walk on the (k−1)-state graph:
/// `½ (k−1)! (k−1) Δ^k (D+k−2) |V| ((k−1) ln|V| + ln(k−1) + ln Δ + ln ε⁻¹)`.
pub fn bound_psrw(b: &BoundInputs) -> Result<Bound> {
    b.validate()?;
    if b.k < 3 {
        return Err(Error::InvalidBoundInputs("the pairwise walk needs k >= 3"));
    }
    let km1 = (b.k - 1) as f64;
    let n = b.n as f64;
    let delta = b.delta as f64;
    let tail = km1 * log(n) + log(km1) + log(delta) + b.ln_inv_eps();
    Ok(Bound::from_ln(
        -core::f64::consts::LN_2
            + ln_factorial(b.k - 1)
            + log(km1)
            + b.k as f64 * log(delta)
            + log((b.diam + b.k - 2) as f64)
            + log(n)
            + log(tail),
    ))
}
