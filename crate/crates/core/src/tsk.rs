//! Zeroth-order Takagi-Sugeno-Kang fuzzy model with Gaussian antecedents.
//!
//! Rule `i` fires with activation `a_i(x) = prod_j exp(-(x_j - m_ij)^2 / s_ij^2)`;
//! the normalized firing strengths `v_i = a_i / sum_l a_l` weight the constant
//! consequents `c_i`, so the model output is `y_hat = sum_i v_i c_i`.
//!
//! Parameters are fitted by per-sample gradient descent on
//! `J = (y - y_hat)^2 / 2`. The gradients are the exact partial derivatives
//! of `J`; any constant factor that other formulations carry is absorbed
//! into the learning rates.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Sum of activations below which the firing strengths are undefined.
pub const ACTIVATION_FLOOR: f64 = 1e-300;

/// Lower bound applied to every width after a learning step.
pub const MIN_WIDTH: f64 = 1e-6;

/// Gaussian membership `exp(-(x - center)^2 / width^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMf {
    center: f64,
    width: f64,
}

impl GaussianMf {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::InvalidParameter("membership center must be finite"));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidParameter(
                "membership width must be finite and positive",
            ));
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// The exponent `(x - center)^2 / width^2`.
    fn scaled_sq_distance(&self, x: f64) -> f64 {
        let z = (x - self.center) / self.width;
        z * z
    }

    pub fn membership(&self, x: f64) -> f64 {
        libm::exp(-self.scaled_sq_distance(x))
    }
}

/// Step sizes for consequents, centers and widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningRates {
    pub consequents: f64,
    pub centers: f64,
    pub widths: f64,
}

impl LearningRates {
    /// Rates must be finite and non-negative. A zero rate freezes that
    /// parameter group.
    pub fn new(consequents: f64, centers: f64, widths: f64) -> Result<Self> {
        for r in [consequents, centers, widths] {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::InvalidParameter(
                    "learning rates must be finite and non-negative",
                ));
            }
        }
        Ok(Self {
            consequents,
            centers,
            widths,
        })
    }

    pub fn uniform(rate: f64) -> Result<Self> {
        Self::new(rate, rate, rate)
    }
}

/// One input/target pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSample {
    pub x: Vector,
    pub y: f64,
}

impl TrainingSample {
    pub fn new(x: Vector, y: f64) -> Result<Self> {
        if !y.is_finite() {
            return Err(Error::InvalidParameter("target must be finite"));
        }
        Ok(Self { x, y })
    }
}

/// Partial derivatives of `J` with respect to every model parameter.
/// The center and width grids are rule-major, `M x S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub consequents: Vec<f64>,
    pub centers: Vec<f64>,
    pub widths: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TskModel {
    inputs: usize,
    antecedents: Vec<GaussianMf>,
    consequents: Vec<f64>,
}

impl TskModel {
    /// `antecedents` is the rule-major `M x S` grid, `M = consequents.len()`.
    pub fn new(inputs: usize, antecedents: Vec<GaussianMf>, consequents: Vec<f64>) -> Result<Self> {
        if inputs == 0 || consequents.is_empty() {
            return Err(Error::Empty);
        }
        if antecedents.len() != inputs * consequents.len() {
            return Err(Error::DimensionMismatch {
                op: "antecedent grid",
                expected: inputs * consequents.len(),
                found: antecedents.len(),
            });
        }
        if let Some(index) = consequents.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            inputs,
            antecedents,
            consequents,
        })
    }

    /// Builds a model from `M` rows of centers and widths (each of length `S`)
    /// and `M` consequents.
    pub fn from_grids<R: AsRef<[f64]>>(centers: &[R], widths: &[R], consequents: Vec<f64>) -> Result<Self> {
        let rules = consequents.len();
        if centers.len() != rules || widths.len() != rules {
            return Err(Error::DimensionMismatch {
                op: "rule count",
                expected: rules,
                found: if centers.len() != rules {
                    centers.len()
                } else {
                    widths.len()
                },
            });
        }
        let inputs = centers.first().map_or(0, |r| r.as_ref().len());
        let mut antecedents = Vec::with_capacity(rules * inputs);
        for (cr, wr) in centers.iter().zip(widths) {
            let (cr, wr) = (cr.as_ref(), wr.as_ref());
            for row in [cr, wr] {
                if row.len() != inputs {
                    return Err(Error::DimensionMismatch {
                        op: "antecedent row",
                        expected: inputs,
                        found: row.len(),
                    });
                }
            }
            for (&c, &w) in cr.iter().zip(wr) {
                antecedents.push(GaussianMf::new(c, w)?);
            }
        }
        Self::new(inputs, antecedents, consequents)
    }

    /// Initial model for training: for every input, rule centers are spread
    /// evenly over the observed range, widths are `range / rules` and the
    /// consequents start at zero.
    pub fn spread_over(samples: &[TrainingSample], rules: usize) -> Result<Self> {
        let first = samples.first().ok_or(Error::Empty)?;
        if rules == 0 {
            return Err(Error::Empty);
        }
        let inputs = first.x.len();
        let mut lo = first.x.as_slice().to_vec();
        let mut hi = lo.clone();
        for s in samples {
            if s.x.len() != inputs {
                return Err(Error::DimensionMismatch {
                    op: "sample input",
                    expected: inputs,
                    found: s.x.len(),
                });
            }
            for (j, &v) in s.x.iter().enumerate() {
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
        let mut antecedents = Vec::with_capacity(rules * inputs);
        for i in 0..rules {
            for j in 0..inputs {
                let range = hi[j] - lo[j];
                let center = if rules == 1 {
                    lo[j] + 0.5 * range
                } else {
                    lo[j] + range * i as f64 / (rules - 1) as f64
                };
                let width = if range > 0.0 { range / rules as f64 } else { 1.0 };
                antecedents.push(GaussianMf::new(center, width)?);
            }
        }
        Self::new(inputs, antecedents, alloc::vec![0.0; rules])
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn rule_count(&self) -> usize {
        self.consequents.len()
    }

    pub fn antecedent(&self, rule: usize, input: usize) -> GaussianMf {
        self.antecedents[rule * self.inputs + input]
    }

    pub fn antecedents(&self) -> &[GaussianMf] {
        &self.antecedents
    }

    fn rule(&self, i: usize) -> &[GaussianMf] {
        &self.antecedents[i * self.inputs..(i + 1) * self.inputs]
    }

    /// The consequent vector (`theta` in the extended regression form).
    pub fn consequents(&self) -> &[f64] {
        &self.consequents
    }

    fn check_input(&self, x: &Vector) -> Result<()> {
        if x.len() != self.inputs {
            return Err(Error::DimensionMismatch {
                op: "model input",
                expected: self.inputs,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Unnormalized rule activations, each in `[0, 1]`.
    pub fn rule_activations(&self, x: &Vector) -> Result<Vector> {
        self.check_input(x)?;
        let acts = (0..self.rule_count())
            .map(|i| {
                let exponent: f64 = self
                    .rule(i)
                    .iter()
                    .zip(x.iter())
                    .map(|(mf, &xj)| mf.scaled_sq_distance(xj))
                    .sum();
                libm::exp(-exponent)
            })
            .collect();
        Ok(Vector::from_raw(acts))
    }

    /// Normalized firing strengths (`Phi` row); they sum to one.
    pub fn firing_strengths(&self, x: &Vector) -> Result<Vector> {
        let acts = self.rule_activations(x)?;
        let total: f64 = acts.iter().sum();
        if !(total >= ACTIVATION_FLOOR) {
            return Err(Error::DegenerateActivation { sample: None });
        }
        Ok(acts.scaled(1.0 / total))
    }

    pub fn output(&self, x: &Vector) -> Result<f64> {
        let v = self.firing_strengths(x)?;
        Ok(weighted_sum(v.as_slice(), &self.consequents))
    }

    /// `e = y - y_hat`
    pub fn prediction_error(&self, sample: &TrainingSample) -> Result<f64> {
        Ok(sample.y - self.output(&sample.x)?)
    }

    /// Squared-error loss `J = e^2 / 2` on one sample.
    pub fn loss(&self, sample: &TrainingSample) -> Result<f64> {
        let e = self.prediction_error(sample)?;
        Ok(0.5 * e * e)
    }

    /// Mean of `e^2` over `samples`.
    pub fn mse(&self, samples: &[TrainingSample]) -> Result<f64> {
        if samples.is_empty() {
            return Err(Error::Empty);
        }
        let mut acc = 0.0;
        for (k, s) in samples.iter().enumerate() {
            let e = self.prediction_error(s).map_err(|e| tag_sample(e, k))?;
            acc += e * e;
        }
        Ok(acc / samples.len() as f64)
    }

    /// Exact partials of `J`:
    ///
    /// * `dJ/dc_i  = -e v_i`
    /// * `dJ/dm_ij = -e v_i (c_i - y_hat) 2 (x_j - m_ij) / s_ij^2`
    /// * `dJ/ds_ij = -e v_i (c_i - y_hat) 2 (x_j - m_ij)^2 / s_ij^3`
    pub fn gradients(&self, sample: &TrainingSample) -> Result<Gradients> {
        let v = self.firing_strengths(&sample.x)?;
        let y_hat = weighted_sum(v.as_slice(), &self.consequents);
        let e = sample.y - y_hat;
        let (m, s) = (self.rule_count(), self.inputs);
        let mut g = Gradients {
            consequents: Vec::with_capacity(m),
            centers: Vec::with_capacity(m * s),
            widths: Vec::with_capacity(m * s),
        };
        for i in 0..m {
            let vi = v[i];
            g.consequents.push(-e * vi);
            let common = -e * vi * (self.consequents[i] - y_hat);
            for (mf, &xj) in self.rule(i).iter().zip(sample.x.iter()) {
                let diff = xj - mf.center;
                let w2 = mf.width * mf.width;
                g.centers.push(common * 2.0 * diff / w2);
                g.widths.push(common * 2.0 * diff * diff / (w2 * mf.width));
            }
        }
        Ok(g)
    }

    /// One error-correction step on `sample`. Gradients are taken at the
    /// current parameters; the updated widths are clamped to [`MIN_WIDTH`].
    pub fn sgd_step(&self, sample: &TrainingSample, rates: &LearningRates) -> Result<TskModel> {
        let g = self.gradients(sample)?;
        let consequents = self
            .consequents
            .iter()
            .zip(&g.consequents)
            .map(|(c, gc)| c - rates.consequents * gc)
            .collect();
        let antecedents = self
            .antecedents
            .iter()
            .zip(g.centers.iter().zip(&g.widths))
            .map(|(mf, (gm, gs))| GaussianMf {
                center: mf.center - rates.centers * gm,
                width: (mf.width - rates.widths * gs).max(MIN_WIDTH),
            })
            .collect();
        let next = TskModel {
            inputs: self.inputs,
            antecedents,
            consequents,
        };
        if next.is_all_finite() {
            Ok(next)
        } else {
            Err(Error::InvalidParameter("learning step produced non-finite parameters"))
        }
    }

    /// Presents the samples in order for `epochs` passes. Returns the final
    /// model and the mean squared error after each epoch.
    pub fn train(
        &self,
        samples: &[TrainingSample],
        rates: &LearningRates,
        epochs: usize,
    ) -> Result<(TskModel, Vec<f64>)> {
        let mut model = self.clone();
        let mut trace = Vec::with_capacity(epochs);
        for _ in 0..epochs {
            for (k, s) in samples.iter().enumerate() {
                model = model.sgd_step(s, rates).map_err(|e| tag_sample(e, k))?;
            }
            trace.push(model.mse(samples)?);
        }
        Ok((model, trace))
    }

    fn is_all_finite(&self) -> bool {
        self.consequents.iter().all(|c| c.is_finite())
            && self
                .antecedents
                .iter()
                .all(|mf| mf.center.is_finite() && mf.width.is_finite())
    }
}

fn weighted_sum(v: &[f64], c: &[f64]) -> f64 {
    v.iter().zip(c).map(|(a, b)| a * b).sum()
}

fn tag_sample(e: Error, index: usize) -> Error {
    match e {
        Error::DegenerateActivation { .. } => Error::DegenerateActivation {
            sample: Some(index),
        },
        other => other,
    }
}
