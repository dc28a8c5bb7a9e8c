use crate::error::{Error, Result};

/// Inverse temperatures, hottest (smallest beta) first, with swap counters
/// for each adjacent pair.
#[derive(Clone, Debug, PartialEq)]
pub struct TemperatureLadder {
    betas: Vec<f64>,
    attempts: Vec<u64>,
    accepts: Vec<u64>,
}

impl TemperatureLadder {
    pub fn new(betas: Vec<f64>) -> Result<Self> {
        if betas.len() < 2 {
            return Err(Error::invalid("a ladder needs at least two temperatures"));
        }
        if betas.iter().any(|b| !b.is_finite() || *b < 0.0) || betas[1..].iter().any(|b| *b <= 0.0)
        {
            return Err(Error::invalid(
                "inverse temperatures must be finite and positive (zero only for the hottest)",
            ));
        }
        if betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "inverse temperatures must strictly increase",
            ));
        }
        let pairs = betas.len() - 1;
        Ok(TemperatureLadder {
            betas,
            attempts: vec![0; pairs],
            accepts: vec![0; pairs],
        })
    }

    /// `m` temperatures spaced linearly in beta between `lo` and `hi`.
    pub fn linear(lo: f64, hi: f64, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("a ladder needs at least two temperatures"));
        }
        Self::new(
            (0..m)
                .map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64)
                .collect(),
        )
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn beta(&self, slot: usize) -> f64 {
        self.betas[slot]
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    pub(crate) fn record(&mut self, pair: usize, accepted: bool) {
        self.attempts[pair] += 1;
        if accepted {
            self.accepts[pair] += 1;
        }
    }

    pub fn attempts(&self) -> &[u64] {
        &self.attempts
    }

    pub fn accepts(&self) -> &[u64] {
        &self.accepts
    }

    /// Measured swap acceptance per adjacent pair (0 where never attempted).
    pub fn swap_rates(&self) -> Vec<f64> {
        self.attempts
            .iter()
            .zip(&self.accepts)
            .map(|(&a, &k)| if a == 0 { 0.0 } else { k as f64 / a as f64 })
            .collect()
    }

    pub fn reset_counters(&mut self) {
        self.attempts.iter_mut().for_each(|a| *a = 0);
        self.accepts.iter_mut().for_each(|a| *a = 0);
    }
}
