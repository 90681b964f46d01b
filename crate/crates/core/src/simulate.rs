//! Finite SGG mixtures for synthetic data.

use rand::Rng;

use crate::distributions::{sgg_pdf, sgg_sample, SggParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub params: SggParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    components: Vec<MixtureComponent>,
}

impl MixtureSpec {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config("mixture has no components".into()));
        }
        for c in &components {
            if !(c.weight > 0.0 && c.weight <= 1.0) {
                return Err(Error::Domain {
                    name: "weight",
                    value: c.weight,
                });
            }
            c.params.validate()?;
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        Ok(Self { components })
    }

    /// `0.7 SGG(0, 3, 3, 2) + 0.3 SGG(5, 1, 0.5, 3)`: a light-tailed bulk
    /// and a heavy tail starting at 5.
    pub fn two_component_benchmark() -> Self {
        Self::new(vec![
            MixtureComponent {
                weight: 0.7,
                params: SggParams::new(0.0, 3.0, 3.0, 2.0).expect("valid"),
            },
            MixtureComponent {
                weight: 0.3,
                params: SggParams::new(5.0, 1.0, 0.5, 3.0).expect("valid"),
            },
        ])
        .expect("weights sum to one")
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }
}

/// Draw `n` observations and the index of the component behind each. The
/// labels are for scoring fits only.
pub fn sample_mixture<R: Rng + ?Sized>(
    spec: &MixtureSpec,
    n: usize,
    rng: &mut R,
) -> (Vec<f64>, Vec<usize>) {
    let mut data = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    let last = spec.components.len() - 1;
    for _ in 0..n {
        let mut u: f64 = rng.random();
        let mut k = last;
        for (j, c) in spec.components.iter().enumerate() {
            if u < c.weight {
                k = j;
                break;
            }
            u -= c.weight;
        }
        data.push(sgg_sample(&spec.components[k].params, rng).expect("validated component"));
        labels.push(k);
    }
    (data, labels)
}

pub fn mixture_pdf(spec: &MixtureSpec, x: f64) -> f64 {
    spec.components
        .iter()
        .map(|c| c.weight * sgg_pdf(x, &c.params).expect("validated component"))
        .sum()
}
