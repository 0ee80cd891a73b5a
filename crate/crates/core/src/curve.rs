use crate::{Error, Result};

/// A sampled scalar relaxation function with optional standard errors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelaxationCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Option<Vec<f64>>,
}

impl RelaxationCurve {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::build(times, values, None)
    }

    pub fn with_stderr(times: Vec<f64>, values: Vec<f64>, stderr: Vec<f64>) -> Result<Self> {
        Self::build(times, values, Some(stderr))
    }

    fn build(times: Vec<f64>, values: Vec<f64>, stderr: Option<Vec<f64>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if let Some(e) = &stderr {
            if e.len() != times.len() {
                return Err(Error::InvalidParameter(format!(
                    "{} times but {} standard errors",
                    times.len(),
                    e.len()
                )));
            }
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "times must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            times,
            values,
            stderr,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Linear interpolation; `None` outside the sampled range.
    pub fn interpolate(&self, t: f64) -> Option<f64> {
        let (first, last) = (*self.times.first()?, *self.times.last()?);
        if t < first || t > last {
            return None;
        }
        let idx = self.times.partition_point(|&x| x < t);
        if idx == 0 {
            return Some(self.values[0]);
        }
        let (t0, t1) = (self.times[idx - 1], self.times[idx]);
        let (v0, v1) = (self.values[idx - 1], self.values[idx]);
        Some(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    /// Iterator over `(t, value, stderr)` triples.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, Option<f64>)> + '_ {
        self.times
            .iter()
            .enumerate()
            .map(move |(i, &t)| (t, self.values[i], self.stderr.as_ref().map(|e| e[i])))
    }
}
